import math

import pytest

from alfderiv.verify import DEFAULT_TOL, SUITES, VerifyReport, run_suite


def test_report_bookkeeping():
    rep = VerifyReport("x")
    rep.record(1e-12, 1e-9)
    rep.record(1e-6, 1e-9)
    rep.skip()
    assert (rep.cases_run, rep.cases_passed, rep.failures, rep.skipped_poles) == (3, 1, 1, 1)
    assert rep.worst_relative_error == 1e-6
    assert not rep.ok
    rep.record(math.inf, 1e-9)
    assert rep.worst_relative_error == math.inf
    assert "elapsed" not in rep.to_dict()
    assert "elapsed" in rep.to_dict(timing=True)


@pytest.mark.parametrize("suite", [s for s in SUITES if s != "all"])
def test_each_suite_passes_at_default_tol(suite):
    rep = run_suite(suite, samples=20, seed=1)
    assert rep.ok, rep
    assert rep.worst_relative_error <= DEFAULT_TOL[suite]


def test_all_aggregates_parts():
    rep = run_suite("all", samples=6, seed=2)
    assert [p.suite for p in rep.parts] == ["whipple", "integrals", "derivatives", "map"]
    assert rep.cases_run == sum(p.cases_run for p in rep.parts)
    assert rep.worst_relative_error == max(p.worst_relative_error for p in rep.parts)


def test_seed_reproducible():
    a = run_suite("whipple", samples=15, seed=9).to_dict()
    b = run_suite("whipple", samples=15, seed=9).to_dict()
    assert a == b


def test_bad_arguments():
    with pytest.raises(ValueError):
        run_suite("nope")
    with pytest.raises(ValueError):
        run_suite("map", samples=-1)


def test_seed_is_logged(caplog):
    with caplog.at_level("INFO", logger="alfderiv"):
        run_suite("map", samples=3, seed=17)
    assert "seed=17" in caplog.text
