from fractions import Fraction

import pytest

from qzeta.qcore import PrecisionContext
from qzeta.spectral import SpectralContext


@pytest.fixture(scope="session")
def ctx_half():
    return PrecisionContext(Fraction(1, 2), 30)


@pytest.fixture(scope="session")
def sc_half(ctx_half):
    return SpectralContext(ctx_half, K=10)


@pytest.fixture(scope="session")
def sc_grid():
    return {q: SpectralContext(PrecisionContext(q, 30), K=10)
            for q in (Fraction(3, 10), Fraction(1, 2), Fraction(7, 10))}


@pytest.fixture
def criterion(request):
    """Record one acceptance line; printed in the terminal summary."""
    lines = request.config.__dict__.setdefault("_acceptance_lines", {})

    def record(number: int, ok: bool, detail: str):
        lines[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.__dict__.get("_acceptance_lines")
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(lines):
        terminalreporter.write_line(lines[n])
