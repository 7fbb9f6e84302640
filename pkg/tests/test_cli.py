import json
from fractions import Fraction

import pytest

from qzeta.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_zeta(capsys):
    code, out, _ = run(capsys, "eval", "zeta_q", "--s", "2", "--q", "1/2", "--digits", "30")
    assert code == 0
    rec = json.loads(out)
    # accurate to the reported truncation bound, which follows the default tol 1e-20
    err = abs(Fraction(rec["value"]["re"]) - Fraction(1, 7))
    assert err <= Fraction(rec["tail_bound"]) and rec["K_used"] >= 10


def test_eval_complex_and_hurwitz(capsys):
    code, out, _ = run(capsys, "eval", "zeta_q", "--s", "3+1j", "--digits", "20")
    assert code == 0 and json.loads(out)["value"]["im"] != "0.0"
    code, out, _ = run(capsys, "eval", "H_q", "--s", "0", "--a", "1/4", "--digits", "20")
    assert code == 0 and json.loads(out)["value"]["re"].startswith("0.25")


def test_zeros_csv(capsys):
    code, out, err = run(capsys, "zeros", "--kind", "sin", "--K", "5", "--digits", "20")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "kind,q,k,zero,residual,digits" and len(lines) == 6
    assert "interlacing" in err


def test_numbers_json(capsys):
    code, out, _ = run(capsys, "numbers", "--N", "4", "--values", "--q", "1/2", "--digits", "20")
    assert code == 0
    doc = json.loads(out)
    assert doc["entries"][2]["value"].startswith("0.10714285714")


def test_verify_subset_writes_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", "--q", "1/2", "--digits", "30", "--sections", "symbolic,even",
                     "--n-max", "2", "--out", str(path))
    assert code == 0
    assert json.loads(path.read_text())["summary"]["gating_failures"] == 0


@pytest.mark.parametrize("argv, code", [
    (["zeros", "--q", "1.5"], 2),
    (["eval", "zeta_q", "--digits", "5"], 2),
    (["eval", "H_q", "--s", "2"], 2),
    (["eval", "nope"], 2),
    (["eval", "zeta_q", "--s", "0.5", "--digits", "20"], 3),
    (["eval", "zeta_q", "--s", "1", "--digits", "20"], 3),
    (["eval", "zeta_q", "--s", "abc"], 2),
])
def test_exit_codes(capsys, argv, code):
    assert main(argv) == code
