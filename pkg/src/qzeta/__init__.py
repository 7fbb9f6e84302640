"""q-analogues of the zeta and eta functions built from the zeros of q-trigonometric functions.

Modules:
    qcore        precision context, errors, q-brackets, q-Pochhammer, q-gamma
    qfunctions   E_q, e_q, eps_q, Sin_q, Cos_q and relatives, Jackson q-Bessel J^(2)
    zeros        certified positive zeros of Sin_q, Cos_q and J_nu^(2)
    qnumbers     exact q-Bernoulli / q-Euler / q-Genocchi numbers over Q(q)
    spectral     zeta-type series, Rayleigh sums, H_q, I_q, F_q, R_q, Hurwitz q-zeta
    verify       identity harness
    cli          command line front end
"""
from .qcore import (
    ConfigError,
    CoverageError,
    DomainError,
    LocalizationError,
    PoleError,
    PrecisionContext,
    QuadratureError,
    QZetaError,
    q_binomial,
    q_bracket,
    q_factorial,
    q_gamma,
    q_pochhammer,
)
from .spectral import SeriesValue, SpectralContext
from .zeros import ZeroTable, locate_zeros

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "CoverageError",
    "DomainError",
    "LocalizationError",
    "PoleError",
    "PrecisionContext",
    "QuadratureError",
    "QZetaError",
    "SeriesValue",
    "SpectralContext",
    "ZeroTable",
    "locate_zeros",
    "q_binomial",
    "q_bracket",
    "q_factorial",
    "q_gamma",
    "q_pochhammer",
]
