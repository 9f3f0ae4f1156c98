"""Acceptance criteria, one test each, over the default verification grid.

Each test prints a single ``ACCEPTANCE <n> PASS|FAIL`` line.
"""
import filecmp

import pytest

from ioc_bounds.harness import SweepConfig, sweep, verify


@pytest.fixture(scope="session")
def report():
    return verify(SweepConfig())


@pytest.fixture
def announce(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number} {'PASS' if ok else 'FAIL'}: {title}{' ' + detail if detail else ''}")
        return ok

    return emit


def checked(records):
    fails = [r for r in records if not r["pass"]]
    return not fails and bool(records), f"({len(records)} checks, {len(fails)} failed)"


def max_tol(records):
    return max(r["tol"] for r in records)


def test_criterion_1_oracle_agreement(report, announce):
    quad = report.select("oracles", "quadrature") + report.select("oracles", "quadrature_table")
    bessel = report.select("oracles", "bessel_identity")
    extra = verify(SweepConfig(c_list=(-2.0,), n_list=(), l_list=tuple(range(1, 21)), suites=("oracles",)))
    red = report.select("oracles", "reduction") + extra.select("oracles", "reduction")
    cs = {r["c"] for r in red}
    ns = {r["n"] for r in report.select("oracles", "quadrature_table")}
    ok, detail = checked(quad + bessel + red)
    ok = ok and {-0.5, -2.0} <= cs and max(ns) >= 200
    ok = ok and max_tol(quad) <= 1e-11 and max_tol(bessel) <= 1e-10 and max_tol(red) <= 2e-13
    assert announce(1, "oracle agreement", ok, detail)


def test_criterion_2_heun(report, announce):
    recs = report.select("ode", "heun_residual")
    xs = {(r["c"], r["x"]) for r in recs}
    ok, detail = checked(recs)
    ok = ok and max_tol(recs) <= 1e-8
    ok = ok and (-1.0, 0.0) in xs and (-1.0, 0.5) in xs and (-0.5, 1.0) in xs
    assert announce(2, "Heun residual", ok, detail)


BOUND_CHECKS = ("basic", "ratio_logconvex", "tight", "loose", "poisson", "binom_ratio_lower", "binom_ratio_upper",
                "lower_44", "upper_44", "binom_ratio_basic", "lower_int")
LEGENDRE_CHECKS = ("ratio_lower", "ratio_upper_sharp", "ratio_upper_weak", "value_strong", "value_weak")


def test_criterion_3_inequalities(report, announce):
    recs = [r for k in BOUND_CHECKS for r in report.select("bounds", k)]
    recs += [r for k in LEGENDRE_CHECKS for r in report.select("legendre", k)]
    recs += report.select("bessel", "bessel_bound")
    missing = [k for k in BOUND_CHECKS if not report.select("bounds", k)]
    ok, detail = checked(recs)
    ok = ok and not missing and max_tol(recs) <= 1e-10
    assert announce(3, "inequality battery", ok, detail)


ORDER_CHECKS = (("bounds", "order_tight_le_loose"), ("bounds", "order_poisson_le_basic"),
                ("bounds", "order_upper44_le_basic"), ("legendre", "order_sharp_le_weak"),
                ("legendre", "order_strong_le_weak"))


def test_criterion_4_orderings(report, announce):
    groups = [report.select(s, k) for s, k in ORDER_CHECKS]
    recs = [r for g in groups for r in g]
    ok, detail = checked(recs)
    ok = ok and all(groups) and max_tol(recs) <= 1e-10
    assert announce(4, "sharpness orderings", ok, detail)


def test_criterion_5_exponent(report, announce):
    recs = report.select("bounds", "exponent_gap")
    ok, detail = checked(recs)
    # observed carries the 1e-12 margin, so a positive slack means a strict gap above it
    ok = ok and all(r["margin"] > 0 for r in recs)
    ok = ok and {r["c"] for r in recs} == {0.5, 1.0, 2.0}
    assert announce(5, "strict exponent inequality", ok, detail)


def test_criterion_6_shape(report, announce):
    recs = report.select("convexity") + report.select("logconvexity")
    recs += report.select("entropy", "tsallis_concave") + report.select("entropy", "renyi_concave")
    cm = report.select("convexity", "cm_j3") + report.select("convexity", "cm_j4")
    ok, detail = checked(recs)
    ok = ok and bool(cm) and all(r["c"] >= 0 for r in cm)
    ok = ok and {r["c"] for r in report.select("entropy", "tsallis_concave")} >= {-1.0, 0.0, 2.0}
    assert announce(6, "convexity and log-convexity", ok, detail)


def test_criterion_7_identities(report, announce):
    one = report.select("identities", "identity_one")
    two = report.select("identities", "identity_two")
    ok, detail = checked(one + two)
    ok = ok and len(one) == len(two) == sum(n + 1 for n in range(121))
    ok = ok and all(r["tol"] == 0 for r in one + two)
    assert announce(7, "exact identities", ok, detail)


def test_criterion_8_symmetry_normalization(report, announce):
    sym = report.select("oracles", "symmetry")
    norm = report.select("normalization", "sum_p")
    ok, detail = checked(sym + norm)
    ok = ok and max_tol(sym) <= 4e-13 and max_tol(norm) <= 1e-12
    assert announce(8, "symmetry and normalization", ok, detail)


def test_criterion_9_determinism(report, announce, tmp_path):
    again = verify(SweepConfig(workers=4))
    same_verify = again.to_json() == report.to_json()
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    sweep(SweepConfig(workers=1), a)
    sweep(SweepConfig(workers=3), b)
    same_sweep = filecmp.cmp(a, b, shallow=False)
    assert announce(9, "determinism across worker counts", same_verify and same_sweep)
