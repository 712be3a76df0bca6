import csv
import io
import json
import math
import subprocess
import sys

import pytest

from alfderiv.cli import ParseError, main, map_curve_rows, parse_complex
from alfderiv.legendre import legendre_q


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


@pytest.mark.parametrize(
    "text, expected",
    [("2", 2 + 0j), ("3i", 3j), ("1+2i", 1 + 2j), ("1-2i", 1 - 2j), ("-0.3+1.5i", -0.3 + 1.5j),
     ("i", 1j), ("-i", -1j), ("1e-3-2.5e1j", 0.001 - 25j), (".5", 0.5)],
)
def test_parse_complex(text, expected):
    assert parse_complex(text) == expected


def test_parse_signed_zero():
    assert math.copysign(1, parse_complex("0.5+0i").imag) == 1
    assert math.copysign(1, parse_complex("0.5-0i").imag) == -1


@pytest.mark.parametrize("text", ["", "1 + 2i", "1+2", "abc", "1+2k", "++1"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        parse_complex(text)


def test_eval_q_golden():
    code, out = run("eval", "--func", "Q", "--deg", "0", "--ord", "0", "--z", "2")
    assert code == 0
    rec = json.loads(out)
    assert rec["re"] == pytest.approx(0.5493061443340549, rel=1e-15)
    assert rec["im"] == 0
    assert 0 < rec["abs_err"] < 1e-12


def test_eval_fmap_positive_real_part():
    code, out = run("eval", "--func", "fmap", "--z", "1+2i")
    assert code == 0
    assert json.loads(out)["re"] > 0


def test_eval_csv_columns():
    code, out = run("eval", "--func", "besselK", "--ord", "0", "--t", "1", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["re", "im", "abs_err"]
    assert float(rows[0]["re"]) == pytest.approx(0.42102443824070833, rel=1e-14)


def test_eval_on_cut_is_domain_error(capsys):
    code, out = run("eval", "--func", "Q", "--deg", "0", "--ord", "0", "--z", "0.5")
    assert code == 2
    assert out == ""
    assert "cut" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ("eval", "--func", "Q", "--deg", "0", "--ord", "0", "--z", "2+"),
        ("eval", "--func", "Q", "--deg", "0", "--z", "2"),
        ("eval", "--func", "nope", "--z", "2"),
        ("frobnicate",),
        ("deriv", "--func", "P", "--wrt", "order", "--index", "-1", "--deg-param", "1", "--z", "2"),
        ("deriv", "--func", "P", "--wrt", "order", "--index", "1", "--z", "2"),
        ("verify", "--samples", "ten"),
    ],
)
def test_parse_errors_exit_one(argv):
    assert run(*argv)[0] == 1


def test_deriv_check_passes():
    code, out = run("deriv", "--func", "P", "--wrt", "order", "--index", "0", "--deg-param", "1", "--z", "2", "--check")
    assert code == 0
    rec = json.loads(out)
    assert rec["method"] == "closed-form"
    assert rec["rel_gap"] < 1e-7
    assert rec["re"] == pytest.approx(0.27251450978849234, rel=1e-12)


def test_deriv_q_degree_zero():
    code, out = run("deriv", "--func", "Q", "--wrt", "degree", "--index", "0", "--ord-param", "0", "--z", "2")
    assert code == 0
    rec = json.loads(out)
    expected = -math.pi / math.sqrt(2) * 3**-0.25 * legendre_q(-0.5, 0, 2 / math.sqrt(3)).real
    assert rec["re"] == pytest.approx(expected, rel=1e-12)
    assert rec["re"] == pytest.approx(-4.447669613404706, rel=1e-12)


def test_deriv_q_order_pole_handling():
    # nu = 0, m = 1: Gamma(nu + m + 1/2) is finite, so the value comes back
    code, out = run("deriv", "--func", "Q", "--wrt", "order", "--index", "1", "--deg-param", "0", "--z", "2")
    assert code == 0
    rec = json.loads(out)
    assert complex(rec["re"], rec["im"]) == pytest.approx(complex(-0.16187622064943435, -2.801650768978238), rel=1e-10)
    # genuine pole: Gamma(nu + m + 1/2) at nu = 1/2, m = 1, minus sign
    code, _ = run("deriv", "--func", "Q", "--wrt", "order", "--index", "1", "--sign", "-", "--deg-param", "0.5", "--z", "2")
    assert code == 2


def test_deriv_negative_argument_needs_equals():
    code, out = run("deriv", "--func", "Q", "--wrt", "degree", "--index", "0", "--ord-param", "0", "--z=-0.3+1.5i")
    assert code == 0
    rec = json.loads(out)
    assert complex(rec["re"], rec["im"]) == pytest.approx(complex(-5.075877164360428, 1.4416125721184485), rel=1e-10)


def test_deriv_check_failure_exit_three(monkeypatch):
    from alfderiv import derivatives
    from alfderiv.derivatives import DerivativeResult

    real = derivatives.fd_param_derivative

    def skewed(*args, **kwargs):
        r = real(*args, **kwargs)
        return DerivativeResult(r.value * 1.01, r.method, r.error_estimate, r.region_checked)

    monkeypatch.setattr(derivatives, "fd_param_derivative", skewed)
    code, out = run("deriv", "--func", "P", "--wrt", "order", "--index", "1", "--deg-param", "1.5", "--z", "2", "--check")
    assert code == 3
    assert json.loads(out)["rel_gap"] > 1e-3


def test_verify_map_golden():
    code, out = run("verify", "--suite", "map", "--samples", "10000", "--seed", "42")
    assert code == 0
    rec = json.loads(out)
    assert rec["cases_run"] == rec["cases_passed"] == 30000
    assert "elapsed" not in rec


def test_verify_zero_samples():
    code, out = run("verify", "--suite", "whipple", "--samples", "0")
    assert code == 0
    assert json.loads(out)["cases_run"] == 0


def test_verify_derivatives_passes():
    code, out = run("verify", "--suite", "derivatives", "--samples", "60", "--seed", "7", "--tol", "1e-5")
    assert code == 0
    assert json.loads(out)["failures"] == 0


def test_verify_failure_exit_three():
    code, out = run("verify", "--suite", "whipple", "--samples", "5", "--tol", "1e-30")
    assert code == 3


def test_verify_timing_flag(capsys):
    code, out = run("verify", "--suite", "map", "--samples", "10", "--timing")
    assert code == 0
    assert json.loads(out)["elapsed"] >= 0


def test_determinism_byte_identical():
    argv = ("verify", "--suite", "all", "--samples", "8", "--seed", "3")
    assert run(*argv) == run(*argv)
    argv = ("map-curve", "--steps", "25")
    assert run(*argv) == run(*argv)


def test_map_curve_rows_and_tags():
    code, out = run("map-curve", "--tmin", "1", "--tmax", "10", "--steps", "2")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 2 + 3
    tagged = {r["tag"]: r for r in rows if r["tag"]}
    assert set(tagged) == {"A", "B", "C"}
    assert float(tagged["C"]["x"]) == pytest.approx(1.0, abs=1e-12)
    assert float(tagged["B"]["x"]) == pytest.approx(0.9185586535436918, abs=1e-15)


def test_map_curve_b_is_minimal_on_dense_grid():
    rows = map_curve_rows(1e-3, 1e3, 5000)
    b = next(r for r in rows if r[4] == "B")
    assert all(b[1] <= r[1] + 1e-15 for r in rows)


def test_map_curve_file_and_io_error(tmp_path):
    target = tmp_path / "curve.csv"
    code, out = run("map-curve", "--steps", "3", "--out", str(target))
    assert code == 0 and out == ""
    assert len(target.read_text().splitlines()) == 1 + 3 + 3
    code, _ = run("map-curve", "--steps", "3", "--out", str(tmp_path / "missing" / "curve.csv"))
    assert code == 4


def test_map_curve_bad_range():
    assert run("map-curve", "--tmin", "5", "--tmax", "1")[0] == 2


def test_env_tolerance(monkeypatch):
    monkeypatch.setenv("ALF_TOL", "garbage")
    code, _ = run("verify", "--suite", "integrals", "--samples", "1")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "alfderiv", "eval", "--func", "wmap", "--z", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["re"] == pytest.approx(math.log((math.e + 1) / (math.e - 1)), rel=1e-15)
