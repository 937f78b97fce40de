import json

import pytest

from pfafflab.io import canonical_dumps
from pfafflab.report import (
    SuiteConfig,
    SuiteConfigError,
    SuiteContext,
    check_smoothness,
    render_text,
    run_suite,
    strip_timings,
)

FAST_CHECKS = ("pfaffian_identity", "multiplicity", "segre", "fixed_point_weights")


def test_report_schema_and_summary():
    report = run_suite(SuiteConfig(only=FAST_CHECKS))
    assert report["schema_version"] == 1
    assert {c["name"] for c in report["checks"]} == set(FAST_CHECKS)
    for check in report["checks"]:
        assert check["status"] in ("pass", "fail", "unknown")
        assert check["anchor"]
        assert check["seconds"] >= 0
    assert report["summary"]["pass"] == len(FAST_CHECKS)
    assert report["summary"]["fail"] == 0


def test_reports_identical_modulo_timings():
    r1 = run_suite(SuiteConfig(only=FAST_CHECKS))
    r2 = run_suite(SuiteConfig(only=FAST_CHECKS))
    assert canonical_dumps(strip_timings(r1)) == canonical_dumps(strip_timings(r2))


def test_render_text_lines():
    report = run_suite(SuiteConfig(only=("segre",)))
    text = render_text(report)
    assert "[PASS" in text
    assert "segre" in text
    assert text.strip().endswith("unknown in " + text.split()[-1])


def test_unknown_check_name_rejected():
    with pytest.raises(SuiteConfigError):
        run_suite(SuiteConfig(only=("not_a_check",)))


def test_bad_prime_rejected():
    with pytest.raises(SuiteConfigError):
        SuiteContext(SuiteConfig(primes=(13, 43)))


def test_budget_exhaustion_reports_unknown():
    # a one-pair cap cannot finish any Groebner basis: the verdicts are
    # undecided and the check reports unknown, not fail
    ctx = SuiteContext(SuiteConfig(pair_cap=1))
    status, artifacts = check_smoothness(ctx)
    assert status == "unknown"
    assert artifacts["working"]["29"] == "budget-exhausted"


def test_report_is_json_serializable():
    report = run_suite(SuiteConfig(only=("dihedral_freeness",)))
    json.dumps(report)
