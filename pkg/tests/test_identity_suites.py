import pytest
from mpmath import mp

from analytics.identity_suites import (
    VerificationReport,
    combine_reports,
    connection_suite,
    determinant_suite,
    five_term_suite,
    measure_suite,
    norm_suite,
    oracle_suite,
    qq_suite,
    s_orthogonality_suite,
    three_term_suite,
)
from classes.geronimus import make_jacobi_gg
from classes.jacobi import JacobiParams, jacobi_system
from classes.sobolev import SobolevParams, SobolevSystem

PARAMS = JacobiParams("0.5", "2.5")


@pytest.fixture
def g():
    return make_jacobi_gg(PARAMS)


@pytest.fixture
def ss():
    return SobolevSystem(jacobi_system(PARAMS), SobolevParams(1, 1, -1))


def assert_passed(report):
    assert report.cases
    assert report.overall_pass, [c for c in report.failures()]


def test_gg_suites(g):
    for suite in (three_term_suite, five_term_suite, connection_suite, norm_suite):
        assert_passed(suite(g, 10))


def test_measure_suite_is_seeded(g):
    first = measure_suite(g, seed=7, pairs=5, degree=8)
    second = measure_suite(g, seed=7, pairs=5, degree=8)
    assert_passed(first)
    assert [c.residual for c in first.cases] == [c.residual for c in second.cases]


def test_sobolev_suites(ss, g):
    assert_passed(qq_suite(ss, g, 8))
    assert_passed(s_orthogonality_suite(ss, 8))
    assert_passed(determinant_suite(ss, 8))


def test_oracle_suite(ss, g):
    report = oracle_suite(ss, g, 8)
    assert_passed(report)
    labels = {c.case_id.split("/")[0] for c in report.cases}
    assert labels == {"mu", "gg", "sobolev"}


def test_oracle_suite_without_gg():
    ss = SobolevSystem(jacobi_system(PARAMS), SobolevParams(1, 1, "1.5"))
    report = oracle_suite(ss, None, 5)
    assert_passed(report)
    assert not any(c.case_id.startswith("gg/") for c in report.cases)


def test_report_bookkeeping():
    rep = VerificationReport("demo")
    rep.add("ok", mp.mpf("1e-40"), mp.mpf("1e-30"))
    rep.add("bad", mp.mpf("1e-10"), mp.mpf("1e-30"))
    rep.fail("lost", "precision_exhausted", mp.mpf("1e-30"))
    assert not rep.overall_pass
    assert [c.case_id for c in rep.failures()] == ["bad", "lost"]

    merged = combine_reports("all", [rep, VerificationReport("empty")])
    assert [c.case_id for c in merged.cases] == ["demo/ok", "demo/bad", "demo/lost"]

    df = merged.to_frame()
    assert list(df.columns) == ["suite", "case_id", "residual", "tolerance", "pass"]
    assert df["pass"].tolist() == ["true", "false", "false"]


@pytest.mark.slow
def test_identity_suites_up_to_degree_forty(g, ss):
    for suite in (three_term_suite, five_term_suite, connection_suite, norm_suite):
        assert_passed(suite(g, 40))
    assert_passed(qq_suite(ss, g, 40))
    assert_passed(s_orthogonality_suite(ss, 30))
