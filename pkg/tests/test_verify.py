"""The verification harness: suites, results, and reduced-bound runs.

The full-bound runs live in test_acceptance.py; here every suite is
exercised at small bounds so failures localize quickly.  Tests marked
``extended`` push selected sweeps past the default bounds and only run
with ``pytest -m extended``.
"""

import pytest

from ncfree.verify import (
    CheckResult,
    check_fluctuations,
    check_mobius_recurrence,
    run_suite,
    suite_ks,
    suite_main_theorem,
    suite_names,
)


def assert_all_pass(results):
    assert results, "empty result list"
    bad = [res.line() for res in results if not res.passed]
    assert not bad, bad


class TestCheckResult:
    def test_pass_line(self):
        res = CheckResult("demo", True, 3, 0.5)
        assert res.line() == "PASS  demo  (3 cases, 0.50s)"

    def test_fail_line_carries_detail(self):
        res = CheckResult("demo", False, 3, 0.5, "first counterexample")
        assert res.line() == "FAIL  demo  (3 cases, 0.50s)  [first counterexample]"

    def test_json_form(self):
        res = CheckResult("demo", True, 3, 0.5)
        assert res.to_json_obj() == {
            "name": "demo",
            "passed": True,
            "cases": 3,
            "seconds": 0.5,
            "detail": "",
        }


class TestSuiteRegistry:
    def test_names(self):
        names = suite_names()
        assert "all" in names
        assert {"main-theorem", "ks", "lemmas", "order"} <= set(names)

    def test_unknown_suite(self):
        with pytest.raises(KeyError):
            run_suite("nonsense")


class TestReducedBounds:
    def test_main_theorem(self):
        assert_all_pass(run_suite("main-theorem", max_total=4))

    def test_ks(self):
        assert_all_pass(run_suite("ks", max_total=4))

    def test_semicircular(self):
        assert_all_pass(run_suite("semicircular", max_total=6))

    def test_semicircular_square(self):
        assert_all_pass(run_suite("semicircular-square", max_total=3))

    def test_haar(self):
        assert_all_pass(run_suite("haar", max_total=4))

    def test_mobius(self):
        assert_all_pass(run_suite("mobius", max_total=6))

    def test_lemmas(self):
        assert_all_pass(run_suite("lemmas", max_total=4))

    def test_order(self):
        assert_all_pass(run_suite("order", max_total=4))

    def test_parallel_matches_serial(self):
        serial = run_suite("mobius", max_total=6, jobs=1)
        parallel = run_suite("mobius", max_total=6, jobs=2)
        assert [(r.name, r.passed, r.cases) for r in serial] == [
            (r.name, r.passed, r.cases) for r in parallel
        ]


@pytest.mark.extended
class TestExtendedBounds:
    def test_main_theorem_total_9(self):
        assert_all_pass(suite_main_theorem(9, jobs=4))

    def test_ks_total_9(self):
        assert_all_pass(suite_ks(9, jobs=2))

    def test_fluctuations_total_12(self):
        assert_all_pass([check_fluctuations(12)])

    def test_mobius_total_9(self):
        assert_all_pass([check_mobius_recurrence(9)])
