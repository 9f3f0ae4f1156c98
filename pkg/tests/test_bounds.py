import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ioc_bounds import (
    DomainError,
    FamilyParams,
    ParameterError,
    SingularityError,
    asymptotic_exponent,
    bessel_i0,
    binom_ioc_bounds,
    binom_ioc_integral_lower,
    binom_ratio_bounds,
    bound_basic,
    bound_bessel,
    bound_logconvex,
    bound_poisson,
    bound_report,
    entropies,
    entropy_lower_bounds,
    ioc,
    ioc_triple,
    legendre_ioc_link,
    legendre_pair,
    legendre_ratio_bounds,
    legendre_value_bounds,
    ratio_bound,
    ratio_bound_basic_binom,
)

# mpmath evaluations of the closed forms
BESSEL_BOUND_AT_1 = 1.4585285371362376444
POISSON_BOUND_1_1 = 0.40302607848638858418
S_1_0_AT_1 = 0.30850832255367103953


def P(c, n):
    return FamilyParams(c=c, n=n)


class TestBasic:
    def test_poisson_value(self):
        assert bound_basic(P(0.0, 1.0), 1.0) == pytest.approx(5**-0.5, rel=1e-15)
        assert bound_basic(P(0.0, 1.0), 1.0) >= S_1_0_AT_1

    def test_origin(self):
        assert bound_basic(P(1.0, 3.0), 0.0) == 1.0

    def test_single_trial_limit(self):
        # n + c = 0: (1 + 4mX)^(-n/2m) -> exp(-2nX)
        p = P(-1.0, 1.0)
        assert bound_basic(p, 0.25) == pytest.approx(math.exp(-2 * 0.1875), rel=1e-15)
        assert bound_basic(p, 0.25) >= ioc(p, 0.25)


class TestRatio:
    def test_origin_limit(self):
        assert ratio_bound(P(0.0, 1.0), 0.0) == -2.0

    def test_midpoint_zero(self):
        assert ratio_bound(P(-1.0, 4.0), 0.5) == 0.0

    def test_right_half_rejected(self):
        with pytest.raises(DomainError):
            ratio_bound(P(-1.0, 4.0), 0.7)

    def test_holds(self):
        p, x = P(1.0, 2.0), 0.7
        tri = ioc_triple(p, x)
        assert tri.s1 / tri.s <= ratio_bound(p, x)


class TestLogConvex:
    def test_binomial_example(self):
        p = P(-1.0, 3.0)
        tight, loose = bound_logconvex(p, 0.5)
        assert loose is None
        assert ioc(p, 0.5) <= tight <= bound_basic(p, 0.5)

    def test_tiers(self):
        p = P(1.0, 2.0)
        tight, loose = bound_logconvex(p, 1.3)
        assert ioc(p, 1.3) <= tight <= loose

    def test_poisson_rejected(self):
        with pytest.raises(ParameterError):
            bound_logconvex(P(0.0, 2.0), 0.5)

    def test_asymptotic_exponent(self):
        gamma, base = asymptotic_exponent(P(1.0, 2.0))
        assert gamma == pytest.approx(math.sqrt(5.0) - 3.0, rel=1e-15)
        assert base == pytest.approx(-2.0 / 3.0)
        assert gamma < base

    def test_asymptotic_needs_positive_c(self):
        with pytest.raises(DomainError):
            asymptotic_exponent(P(0.0, 2.0))


class TestPoissonBessel:
    def test_poisson_value(self):
        assert bound_poisson(1.0, 1.0) == pytest.approx(POISSON_BOUND_1_1, rel=1e-14)

    def test_depends_on_product(self):
        assert bound_poisson(1.0, 1.0) == pytest.approx(bound_poisson(4.0, 0.25), rel=1e-15)

    def test_bessel_value(self):
        assert bound_bessel(1.0) == pytest.approx(BESSEL_BOUND_AT_1, rel=1e-14)

    @pytest.mark.parametrize("t", [0.0, 0.1, 1.0, 7.5, 60.0, 500.0])
    def test_bessel_dominates(self, t):
        assert bessel_i0(t) <= bound_bessel(t) * (1 + 1e-14)

    def test_rescaled_bessel_bound_is_poisson_bound(self):
        # I0(2nt) e^{-2nt} is S_{n,0}(t)
        n, t = 3.0, 0.4
        assert bound_bessel(2 * n * t) * math.exp(-2 * n * t) == pytest.approx(bound_poisson(n, t), rel=1e-14)


class TestBinomial:
    def test_ratio_single_trial_equality(self):
        lo, hi = binom_ratio_bounds(1, 0.25)
        assert lo == pytest.approx(-1.6, rel=1e-15)
        assert ratio_bound_basic_binom(1, 0.25) == -1.0
        assert lo <= hi

    def test_ratio_zero_at_half(self):
        assert binom_ratio_bounds(6, 0.5) == (0.0, 0.0)

    def test_value_bounds_n3(self):
        lo, hi = binom_ioc_bounds(3, 0.5)
        assert lo == pytest.approx(math.exp(-1.5), rel=1e-15)
        assert hi == pytest.approx((1 + 26 / 16) ** (-12 / 13), rel=1e-15)
        assert lo <= 20 / 64 <= hi

    def test_integral_lower(self):
        assert binom_ioc_integral_lower(4, 0.0) == pytest.approx(2 / math.pi)
        assert binom_ioc_integral_lower(1, 0.5) == pytest.approx(1 / math.pi, rel=1e-15)
        assert binom_ioc_integral_lower(3, 0.5) == pytest.approx(1 / (2 * math.pi), rel=1e-15)

    def test_domains(self):
        with pytest.raises(DomainError):
            binom_ratio_bounds(3, 0.6)
        with pytest.raises(DomainError):
            binom_ioc_bounds(3, 1.2)
        with pytest.raises(ParameterError):
            binom_ioc_bounds(0, 0.2)


class TestLegendreBounds:
    @pytest.mark.parametrize("n", [1, 2, 5, 30])
    def test_at_one(self, n):
        lower, sharp, weak = legendre_ratio_bounds(n, 1.0)
        assert lower == pytest.approx(legendre_pair(n, 1.0).dp, rel=1e-15)
        assert lower <= sharp <= weak

    @pytest.mark.parametrize("n", [2, 5, 30])
    def test_values_at_one(self, n):
        assert legendre_value_bounds(n, 1.0) == pytest.approx((1.0, 1.0), rel=1e-15)

    def test_value_bounds_need_degree_two(self):
        with pytest.raises(ParameterError):
            legendre_value_bounds(1, 2.0)

    @pytest.mark.parametrize("n", [2, 3, 8, 25])
    @pytest.mark.parametrize("t", [1.01, 1.5, 3.0, 9.0])
    def test_hold(self, n, t):
        pair = legendre_pair(n, t)
        lower, sharp, weak = legendre_ratio_bounds(n, t)
        r = pair.dp / pair.p
        assert lower * (1 - 1e-12) <= r <= sharp * (1 + 1e-12)
        strong, weak_v = legendre_value_bounds(n, t)
        assert pair.p <= strong * (1 + 1e-12) and strong <= weak_v * (1 + 1e-12)

    @pytest.mark.parametrize("n", [1, 4, 17])
    @pytest.mark.parametrize("x", [1e-3, 0.2, 0.45])
    def test_link(self, n, x):
        assert abs(legendre_ioc_link(n, x)) <= 1e-8

    def test_link_singular(self):
        with pytest.raises(SingularityError):
            legendre_ioc_link(3, 0.0)
        with pytest.raises(SingularityError):
            legendre_ioc_link(3, 0.5)


class TestEntropyBounds:
    def test_lower_bounds(self):
        p, x = P(0.5, 3.0), 1.1
        e = entropies(p, x)
        renyi, tsallis = entropy_lower_bounds(p, x, "tight")
        assert renyi <= e.renyi2 and tsallis <= e.tsallis2

    def test_unknown_bound(self):
        with pytest.raises(ParameterError):
            entropy_lower_bounds(P(0.5, 3.0), 1.0, "nope")

    def test_loose_needs_positive_c(self):
        with pytest.raises(ParameterError):
            entropy_lower_bounds(P(-1.0, 3.0), 0.2, "loose")


class TestReport:
    def test_binomial_entries(self):
        rep = bound_report(P(-1.0, 3.0), 0.3)
        ids = {b.bound_id for b in rep.bounds}
        assert {"basic", "tight", "lower_44", "upper_44", "lower_int", "binom_ratio_lower", "binom_ratio_upper", "binom_ratio_basic"} <= ids
        assert rep.passed

    def test_poisson_entries(self):
        rep = bound_report(P(0.0, 2.0), 0.5)
        assert {b.bound_id for b in rep.bounds} == {"basic", "poisson", "ratio_logconvex"}

    def test_violation_flagged(self):
        rep = bound_report(P(1.0, 2.0), 0.5, tol=-1.0)
        assert not rep.passed


families = st.one_of(
    st.builds(lambda l, c: FamilyParams(c=c, n=-c * l), st.integers(1, 40), st.sampled_from([-1.0, -0.5, -2.0])),
    st.builds(lambda c, extra: FamilyParams(c=c, n=c + extra), st.sampled_from([0.0, 0.5, 1.0, 2.0]), st.floats(0.05, 30.0)),
)


@settings(max_examples=200, deadline=None)
@given(families, st.floats(0.0, 1.0))
def test_every_bound_holds(p, frac):
    end = p.domain_end if p.c < 0 else 8.0
    rep = bound_report(p, frac * end)
    bad = [b for b in rep.bounds if not b.ok]
    assert not bad


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 60), st.floats(0.0, 0.5))
def test_binomial_ratio_sandwich(n, x):
    p = FamilyParams.binomial(n)
    tri = ioc_triple(p, x)
    r = tri.s1 / tri.s
    lo, hi = binom_ratio_bounds(n, x)
    slack = 1e-10 * max(1.0, abs(r))
    assert lo - slack <= r <= hi + slack
    assert hi <= ratio_bound_basic_binom(n, x) + slack
