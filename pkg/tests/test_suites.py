"""Verification suites: coverage, filtering, reporting."""

import pytest

from liedyn.errors import LiedynError
from liedyn.funcspace import Space
from liedyn.suites import (
    SUITE_NAMES,
    applicable_suites,
    render_report,
    run_all,
    run_suite,
)


def test_suite_name_catalogue():
    assert SUITE_NAMES == (
        "jacobi-crossed",
        "jacobi-root",
        "jacobi-char",
        "cocycle-law",
        "tau-hom",
        "char-vs-crossed",
        "local-relations",
        "cartan-affine",
        "limit-hom",
        "not-coboundary",
        "table-audit",
    )


def test_unknown_suite_rejected():
    with pytest.raises(LiedynError):
        run_suite("no-such-suite", Space.cyclic(2), samples=1, seed=0)


def test_applicable_suites_filter():
    finite = applicable_suites(Space.cyclic(3))
    assert "cartan-affine" in finite and "not-coboundary" in finite
    assert "limit-hom" not in finite
    padic = applicable_suites(Space.padic(2, 1))
    assert "limit-hom" in padic
    torus = applicable_suites(Space.torus(1))
    assert "cartan-affine" not in torus
    assert "not-coboundary" not in torus
    assert "limit-hom" not in torus
    assert "jacobi-crossed" in torus


@pytest.mark.parametrize("space_text", ["cyclic:3", "padic:2:2", "torus:1"])
def test_all_applicable_suites_pass_small(space_text):
    space = Space.parse(space_text)
    reports = run_all(space, samples=8, seed=2)
    assert [r.name for r in reports] == list(applicable_suites(space))
    for r in reports:
        assert r.passed, render_report(r)
        assert r.checked > 0


def test_failure_path_reports_counts():
    report = run_suite("not-coboundary", Space.cyclic(2), samples=1, seed=0, window=0)
    assert not report.passed
    assert report.failures == 1
    text = render_report(report)
    assert "FAIL" in text and "not-coboundary" in text


def test_render_report_format_and_color():
    report = run_suite("cocycle-law", Space.cyclic(3), samples=4, seed=7)
    plain = render_report(report)
    assert plain == "cocycle-law @ cyclic:3 [samples=4 seed=7]: ok (8 checks)"
    colored = render_report(report, color=True)
    assert "\x1b[32mok\x1b[0m" in colored
    assert render_report(report) == render_report(report)


def test_table_audit_reports_informational_lines():
    report = run_suite("table-audit", Space.cyclic(3), samples=10, seed=0)
    assert report.passed
    text = render_report(report)
    assert "CENTRAL_OFFSET" in text
    assert "[informational]" in text
    assert "MISMATCH" in text


def test_run_suite_respects_seed():
    a = run_suite("jacobi-root", Space.cyclic(4), samples=6, seed=1)
    b = run_suite("jacobi-root", Space.cyclic(4), samples=6, seed=1)
    assert render_report(a) == render_report(b)
    c = run_suite("jacobi-root", Space.cyclic(4), samples=6, seed=2)
    assert c.seed != a.seed
