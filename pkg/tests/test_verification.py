import pytest

from errors import PreconditionError
from verification import SUITES, run_suite, suite_names


@pytest.mark.parametrize("suite", list(SUITES))
def test_suite_passes_on_small_runs(suite):
    report = run_suite(suite, seed=7, trials=10)
    failed = [(c.statement, c.max_residual) for c in report.checks if not c.passed]
    assert failed == []
    assert report.passed
    assert all(c.instances > 0 for c in report.checks)


def test_all_runs_every_check():
    report = run_suite("all", seed=1, trials=5)
    expected = sum(len(s.checks) for s in SUITES.values())
    assert len(report.checks) == expected


def test_report_is_deterministic():
    first = run_suite("a4", seed=3, trials=8).as_dict()
    second = run_suite("a4", seed=3, trials=8).as_dict()
    first.pop("wall_time")
    second.pop("wall_time")
    assert first == second


def test_report_frame():
    frame = run_suite("spec-top", seed=0, trials=5).as_frame()
    assert list(frame.columns) == ["statement", "instances", "max_residual", "tolerance", "passed"]
    assert "top-zero-divisor-spectrum" in set(frame["statement"])
    assert frame["passed"].all()


def test_unknown_suite():
    assert "all" in suite_names()
    with pytest.raises(PreconditionError):
        run_suite("everything")
    with pytest.raises(PreconditionError):
        run_suite("a4", trials=0)


def test_core_identities_hold_on_full_runs():
    report = run_suite("core-identities", seed=7, trials=100)
    failed = [(c.statement, c.max_residual) for c in report.checks if not c.passed]
    assert failed == []


def test_pair_double_product_residual_is_round_off():
    report = run_suite("core-identities", seed=3, trials=40)
    check = next(c for c in report.checks if c.statement == "pair-double-product")
    assert check.instances == 40
    assert check.max_residual < 1e-10
