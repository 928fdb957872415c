from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cascadefree.errors import InvalidMu, NoInteriorRoot, ToleranceNotMet
from cascadefree.poisson import (
    asymptotic_expansion_check,
    convergence_rows,
    expansion_residual_ratios,
    marginal_dispersion,
    marginal_dispersion_closed,
    monotonicity_scan,
    poisson_coupling,
    poisson_root,
    symmetric_asymptotic_dispersion,
    symmetric_dispersion,
    symmetric_dispersion_direct,
)

F = Fraction
mus = st.fractions(min_value=F(1, 1000), max_value=F(999, 1000)).filter(lambda m: 0 < m < 1)


def cubic_root():
    # real root of u^3 - u - 2 = 0 by Cardano; D(2, mu) = 1 with u = 1 + mu
    s = math.sqrt(1 - 1 / 27)
    cbrt = lambda v: math.copysign(abs(v) ** (1 / 3), v)
    return cbrt(1 + s) + cbrt(1 - s) - 1


class TestMarginal:
    def test_factorisation_random(self):
        rng = random.Random(5)
        for _ in range(50):
            b = rng.randint(2, 60)
            mu = F(rng.randint(1, b - 1), b)
            for k in range(1, 101):
                assert marginal_dispersion(mu, k) == symmetric_asymptotic_dispersion(mu) * (1 - mu**k)

    def test_example(self):
        assert marginal_dispersion(F(1, 2), 1) == F(3, 4)

    def test_limit_at_one_third(self):
        assert symmetric_asymptotic_dispersion(F(1, 3)) == 1
        assert 1 - marginal_dispersion(F(1, 3), 60) < F(1, 10**28)

    @given(mus, st.integers(0, 60))
    def test_closed_form_shift(self, mu, L):
        assert marginal_dispersion_closed(mu, L) == marginal_dispersion(mu, L + 1)

    @given(mus, st.integers(0, 60))
    def test_step(self, mu, L):
        step = marginal_dispersion_closed(mu, L + 1) - marginal_dispersion_closed(mu, L)
        assert step == mu ** (L + 1) * (1 + mu) / 2

    @pytest.mark.parametrize("mu", [0, 1, F(-1, 2), F(3, 2)])
    def test_invalid(self, mu):
        with pytest.raises(InvalidMu):
            marginal_dispersion(mu, 1)
        with pytest.raises(InvalidMu):
            symmetric_dispersion(mu, 3)


class TestSymmetricDispersion:
    @given(mus)
    def test_length_one(self, mu):
        assert symmetric_dispersion(mu, 1) == (1 + mu) / 2

    @given(mus, st.integers(1, 80))
    def test_closed_equals_direct(self, mu, L):
        assert symmetric_dispersion(mu, L) == symmetric_dispersion_direct(mu, L)

    def test_small_mu_limit(self):
        for L in (1, 5, 50):
            assert abs(symmetric_dispersion(F(1, 10**9), L) - F(1, 2)) < F(1, 10**8)

    def test_cubic_oracle(self):
        mu = cubic_root()
        assert mu == pytest.approx(0.5214, abs=5e-5)
        assert float(symmetric_dispersion(F(mu), 2)) == pytest.approx(1, abs=1e-12)


class TestRoot:
    def test_length_two_matches_cubic(self):
        assert poisson_root(2).mu_star == pytest.approx(cubic_root(), abs=1e-12)

    @pytest.mark.parametrize("L, mu", [(5, 0.3792), (10, 0.3525), (20, 0.3422), (50, 0.3368), (100, 0.3350)])
    def test_table(self, L, mu):
        root = poisson_root(L)
        assert abs(root.mu_star - mu) <= 5e-5
        assert root.residual <= root.tol == 1e-12
        assert root.mu_star > 1 / 3

    def test_no_interior_root(self):
        with pytest.raises(NoInteriorRoot):
            poisson_root(1)

    def test_tolerance_not_met(self):
        with pytest.raises(ToleranceNotMet):
            poisson_root(10, tol=1e-40)

    @pytest.mark.slow
    def test_monotone_rate(self):
        roots = convergence_rows(range(2, 401))
        mus = [r.mu_star for r in roots]
        assert all(a > b > 1 / 3 for a, b in zip(mus, mus[1:]))
        rates = [r.rate for r in roots if r.L >= 5]
        assert all(a > b > 1 / 6 for a, b in zip(rates, rates[1:]))
        assert rates[-1] - 1 / 6 < 3e-3


class TestExpansion:
    def test_coefficient(self):
        assert asymptotic_expansion_check(F(1, 3), 100).coefficient == F(3, 8)

    def test_second_order_residual(self):
        ratios = expansion_residual_ratios(F(1, 3), [50, 100, 200, 400])
        assert all(r == pytest.approx(4, abs=0.05) for r in ratios)

    @pytest.mark.parametrize("mu", [F(1, 10), F(1, 2), F(4, 5)])
    def test_other_mu(self, mu):
        ratios = expansion_residual_ratios(mu, [200, 400, 800])
        assert all(r == pytest.approx(4, abs=0.1) for r in ratios)

    def test_small_mu(self):
        rep = asymptotic_expansion_check(F(1, 10**12), 20)
        assert abs(rep.exact - F(1, 2)) < F(1, 10**10)
        assert abs(rep.first_order - F(1, 2)) < F(1, 10**10)


class TestMonotonicity:
    def test_grid(self):
        rep = monotonicity_scan([F(1, 10), F(1, 3), F(1, 2), F(9, 10)], 50)
        assert rep.passed, rep.failures[:5]
        assert rep.checks > 0 and len(rep.roots) == 49

    def test_rate_column(self):
        for L, rate in [(5, 0.229), (10, 0.192), (20, 0.178), (50, 0.171), (100, 0.169)]:
            assert poisson_root(L).rate == pytest.approx(rate, abs=5e-3)


@pytest.mark.parametrize("N", [3, 6, 9, 12])
def test_coupling_at_transition(N):
    assert poisson_coupling(N) == pytest.approx(1.5, abs=1e-15)
