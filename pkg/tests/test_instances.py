from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cascadefree.avoidance import count_avoiding, gpk_classify, restrict
from cascadefree.core import GpkDecomposition, count_cascade_free
from cascadefree.errors import InvalidBase, NotPrime
from cascadefree.instances import (
    InstanceDescriptor,
    InstanceKind,
    addition_instance,
    addition_operation,
    binary_four_sum_instance,
    discriminant_row,
    doubling_instance,
    doubling_operation,
    fibonacci,
    fibonacci_bisection,
    is_prime,
    kummer_carry_count,
    scaling_law_check,
    sediment_instance,
    ternary_three_sum_instance,
)
from cascadefree.oracle import binomial_valuation

ODD_PRIMES = (3, 5, 7, 11, 13)


class TestAddition:
    @pytest.mark.parametrize("p, expected", [(2, (1, 2, 1)), (3, (3, 3, 3)), (5, (10, 5, 10))])
    def test_formula(self, p, expected):
        gpk = addition_instance(p)
        assert (gpk.g, gpk.t, gpk.k) == expected
        assert gpk.N == p * p

    def test_base_two_invariants(self):
        assert addition_instance(2).d == 2

    @pytest.mark.parametrize("p", range(2, 51))
    def test_matches_enumeration(self, p):
        assert gpk_classify(addition_operation(p)) == addition_instance(p)
        assert gpk_classify(doubling_operation(p)) == doubling_instance(p)

    @pytest.mark.parametrize("p", [1, 0, -3])
    def test_invalid_base(self, p):
        with pytest.raises(InvalidBase):
            addition_instance(p)
        with pytest.raises(InvalidBase):
            doubling_instance(p)


class TestDoubling:
    def test_examples(self):
        assert doubling_instance(3) == GpkDecomposition(1, 1, 1)
        assert doubling_instance(7) == GpkDecomposition(3, 1, 3)
        two = doubling_instance(2)
        assert two == GpkDecomposition(1, 0, 1) and two.d == 0
        assert count_cascade_free(two, 10) == [2**L for L in range(11)]

    @pytest.mark.parametrize("p", range(3, 40, 2))
    def test_odd_formula(self, p):
        h = (p - 1) // 2
        assert doubling_instance(p) == GpkDecomposition(h, 1, h)

    @pytest.mark.parametrize("p", range(4, 40, 2))
    def test_even_has_no_prop(self, p):
        assert doubling_instance(p).t == 0


class TestScalingLaw:
    def test_table_rows(self):
        row = scaling_law_check(7, 3)[3]
        assert (row.a_carry, row.a_dbl) == (103243, 301) and row.match
        row = scaling_law_check(13, 4)[4]
        assert (row.a_carry, row.a_dbl, row.scaled) == (729876355, 25555, 729876355)

    @pytest.mark.parametrize("p", ODD_PRIMES)
    def test_odd_primes_to_thirty(self, p):
        assert all(r.match for r in scaling_law_check(p, 30))

    def test_fails_for_two(self):
        rows = scaling_law_check(2, 5)
        assert rows[2].a_carry == 14 and rows[2].scaled == 16
        assert not any(r.match for r in rows[2:])


class TestFibonacci:
    def test_small(self):
        assert [fibonacci(n) for n in range(10)] == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34]
        assert [fibonacci_bisection(L) for L in (0, 3, 5)] == [1, 21, 144]

    def test_matches_doubling_counts(self):
        counts = count_cascade_free(doubling_instance(3), 50)
        assert counts == [fibonacci_bisection(L) for L in range(51)]

    @given(st.integers(1, 500))
    def test_fast_doubling_matches_iteration(self, n):
        a, b = 0, 1
        for _ in range(n):
            a, b = b, a + b
        assert fibonacci(n) == a


class TestMultiOperand:
    def test_ternary(self):
        op = ternary_three_sum_instance()
        assert (op.states, op.alphabet, op.forbidden, op.initial) == (3, 27, 2, 0)
        assert restrict(op).tolist() == [[10, 16], [4, 19]]
        assert count_avoiding(op, 1) == [1, 26]

    def test_binary4(self):
        op = binary_four_sum_instance()
        assert (op.states, op.alphabet, op.forbidden) == (4, 16, 3)
        assert restrict(op).tolist() == [[5, 10, 1], [1, 10, 5], [0, 5, 10]]
        assert count_avoiding(op, 2) == [1, 16, 255]


class TestSediment:
    @pytest.mark.parametrize("p, L, expected", [(3, 4, 1296), (2, 3, 8), (5, 2, 400)])
    def test_counts(self, p, L, expected):
        assert count_avoiding(sediment_instance(p), L)[L] == expected

    def test_restricted_matrix(self):
        assert restrict(sediment_instance(3)).tolist() == [[3, 3], [3, 3]]

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_forbidden_choice_irrelevant(self, p):
        want = [(p * (p - 1)) ** L for L in range(7)]
        for bad in range(p):
            start = 0 if bad != 0 else 1
            assert count_avoiding(sediment_instance(p, forbidden=bad, initial=start), 6) == want


class TestDescriptor:
    def test_fixed_bases(self):
        with pytest.raises(InvalidBase):
            InstanceDescriptor(InstanceKind.TERNARY_THREE_SUM, 5)
        with pytest.raises(InvalidBase):
            InstanceDescriptor(InstanceKind.BINARY_FOUR_SUM, 3)

    def test_dispatch(self):
        assert InstanceDescriptor(InstanceKind.ADDITION, 3).gpk() == GpkDecomposition(3, 3, 3)
        assert InstanceDescriptor(InstanceKind.DOUBLING, 5).is_gpk
        sed = InstanceDescriptor(InstanceKind.SEDIMENT, 4)
        assert not sed.is_gpk and sed.operation().states == 4
        with pytest.raises(TypeError):
            sed.gpk()

    def test_kind_values(self):
        assert {k.value for k in InstanceKind} == {"carry", "dbl", "ternary3", "binary4", "sediment"}


class TestDiscriminant:
    @pytest.mark.parametrize("p, disc, x", [(2, 2, 1.414), (3, 5, 1.5), (5, 17, 1.768), (7, 37, 2.021), (13, 145, 2.653)])
    def test_rows(self, p, disc, x):
        row = discriminant_row(p)
        assert row.discriminant == disc
        assert row.coupling == pytest.approx(x, rel=1e-3)

    @pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17])
    def test_odd_rows_equal_doubling(self, p):
        dbl = doubling_instance(p)
        row = discriminant_row(p)
        assert row.discriminant == dbl.N**2 - 4 * dbl.d == (p - 1) ** 2 + 1


class TestKummer:
    def test_examples(self):
        k = kummer_carry_count(1, 1, 3)
        assert (k.total, k.generated, k.propagated) == (0, 0, 0)
        k = kummer_carry_count(1, 2, 3)
        assert (k.total, k.generated, k.propagated) == (1, 1, 0)
        k = kummer_carry_count(13, 13, 5)
        assert (k.total, k.generated, k.propagated) == (2, 1, 1)

    def test_not_prime(self):
        with pytest.raises(NotPrime):
            kummer_carry_count(3, 4, 9)

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
    def test_legendre_oracle(self, p):
        rng = random.Random(1000 + p)
        top = p**10
        for _ in range(1000):
            m, n = rng.randrange(top), rng.randrange(top)
            k = kummer_carry_count(m, n, p)
            assert k.total == k.generated + k.propagated == binomial_valuation(m, n, p)

    def test_primality(self):
        small = [n for n in range(200) if is_prime(n)]
        sieve = [n for n in range(2, 200) if all(n % q for q in range(2, int(n**0.5) + 1))]
        assert small == sieve
        assert is_prime(2**61 - 1) and not is_prime(3215031751) and not is_prime(2**64 + 1)
