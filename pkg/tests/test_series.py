from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import naive_poly_mul, partition_count, q_binomial_brute, theta_enumerate
from thetapos.series import (
    IntegerSeries,
    NonInvertibleError,
    OrderMismatchError,
    SeriesError,
    ThetaForm,
    base_power,
    div_one_minus_q_power,
    div_one_plus_q_power,
    mul_one_minus_q_power,
    mul_one_plus_q_power,
    product_from_exponents,
    q_binomial,
    series_invert,
    series_mul,
    theta_full,
    theta_partial,
    theta_tail,
)

PENT = ThetaForm(Fraction(3, 2), Fraction(1, 2))


def S(*cs, order=None):
    return IntegerSeries(cs, order)


def series_strategy(order, unit=False):
    coeffs = st.lists(st.integers(-50, 50), min_size=order + 1, max_size=order + 1)
    if unit:
        return st.tuples(st.sampled_from([1, -1]), st.lists(st.integers(-20, 20), min_size=order, max_size=order)).map(
            lambda t: IntegerSeries([t[0], *t[1]])
        )
    return coeffs.map(IntegerSeries)


class TestConstruction:
    def test_pads_to_order(self):
        s = IntegerSeries([1, 2], 4)
        assert s.coeffs == (1, 2, 0, 0, 0)
        assert len(s) == 5

    def test_rejects_overlong(self):
        with pytest.raises(SeriesError):
            IntegerSeries([1, 2, 3], 1)

    def test_mixed_order_is_an_error(self):
        with pytest.raises(OrderMismatchError):
            S(1, 1) + S(1, 1, 1)
        with pytest.raises(OrderMismatchError):
            series_mul(S(1, 1), S(1, 1, 1))

    def test_shift_and_truncate(self):
        s = S(1, 2, 3, 4)
        assert s.shift(2) == S(0, 0, 1, 2)
        assert s.truncate(1) == S(1, 2)
        with pytest.raises(OrderMismatchError):
            s.truncate(5)


class TestThetaForm:
    @pytest.mark.parametrize("A,B", [(Fraction(1, 3), 0), (Fraction(3, 2), Fraction(1, 3)), (1, 1), (1, 2)])
    def test_rejects_invalid(self, A, B):
        with pytest.raises(SeriesError):
            ThetaForm(Fraction(A), Fraction(B))

    def test_exponents_are_integers(self):
        form = ThetaForm(Fraction(5, 2), Fraction(1, 2))
        assert [form.f(j) for j in range(-2, 3)] == [9, 2, 0, 3, 11]
        assert form.g(2) == form.f(-2)


class TestMul:
    def test_telescoping(self):
        assert series_mul(S(1, -1, 0, 0), S(1, 1, 1, 1)) == S(1, 0, 0, 0)

    def test_identity(self):
        s = S(3, -1, 4, 1, -5)
        assert series_mul(s, IntegerSeries.one(4)) == s

    def test_three_factors(self):
        p = series_mul(series_mul(S(1, -1, order=6), S(1, 0, -1, order=6)), S(1, 0, 0, -1, order=6))
        assert p.coeffs == (1, -1, -1, 0, 1, 1, -1)
        assert p.to_list() == naive_poly_mul(naive_poly_mul([1, -1], [1, 0, -1], 6), [1, 0, 0, -1], 6)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 40).flatmap(lambda T: st.tuples(series_strategy(T), series_strategy(T))))
    def test_matches_naive(self, pair):
        s, t = pair
        assert series_mul(s, t).to_list() == naive_poly_mul(s.to_list(), t.to_list(), s.order)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 128).flatmap(lambda T: st.tuples(series_strategy(T), series_strategy(T), series_strategy(T))))
    def test_commutative_associative(self, triple):
        a, b, c = triple
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)


class TestInvert:
    def test_geometric(self):
        assert series_invert(S(1, -1, 0, 0, 0)) == S(1, 1, 1, 1, 1)

    def test_partition_numbers(self):
        euler = product_from_exponents(range(1, 11), 10)
        p = series_invert(euler)
        assert p.coeffs == (1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42)
        assert list(p.coeffs) == [partition_count(n, n) for n in range(11)]

    def test_non_unit(self):
        with pytest.raises(NonInvertibleError):
            series_invert(S(2, 1))
        with pytest.raises(NonInvertibleError):
            series_invert(S(0, 1))

    @settings(max_examples=30, deadline=None)
    @given(series_strategy(64, unit=True))
    def test_round_trip(self, s):
        inv = series_invert(s)
        assert series_invert(inv) == s
        assert series_mul(s, inv) == IntegerSeries.one(64)


class TestSparseFactors:
    @pytest.mark.parametrize("m", [1, 2, 3, 7, 20])
    def test_div_undoes_mul(self, m):
        s = IntegerSeries(range(1, 22))
        assert div_one_minus_q_power(mul_one_minus_q_power(s, m), m) == s
        assert div_one_plus_q_power(mul_one_plus_q_power(s, m), m) == s

    def test_one_plus_matches_quotient(self):
        # (1 + q^e) = (1 - q^{2e}) / (1 - q^e)
        T = 30
        for e in (1, 2, 5):
            direct = mul_one_plus_q_power(IntegerSeries.one(T), e)
            quotient = div_one_minus_q_power(mul_one_minus_q_power(IntegerSeries.one(T), 2 * e), e)
            assert direct == quotient

    def test_base_power(self):
        assert base_power(S(1, 2, 3), 2, 5) == S(1, 0, 2, 0, 3, 0)


class TestProducts:
    def test_euler_t12(self):
        p = product_from_exponents(range(1, 13), 12)
        expected = [0] * 13
        for e, c in [(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1)]:
            expected[e] = c
        assert p.to_list() == expected

    def test_empty(self):
        assert product_from_exponents([], 7) == IntegerSeries.one(7)

    def test_order_independent(self):
        exps = [3, 1, 4, 1, 5, 9, 2, 6]
        assert product_from_exponents(exps, 20) == product_from_exponents(sorted(exps), 20)

    def test_rejects_nonpositive(self):
        with pytest.raises(SeriesError):
            product_from_exponents([1, 0], 5)

    def test_quintuple_matches_theta(self):
        exps = [e for e in range(1, 10) if e % 5 in (0, 1, 4)]
        p = product_from_exponents(exps, 9)
        assert p.coeffs[:8] == (1, -1, 0, 0, -1, 0, 0, 1)
        assert p == theta_full(ThetaForm(Fraction(5, 2), Fraction(3, 2)), 9)

    def test_pentagonal_theorem_large(self):
        T = 600
        assert product_from_exponents(range(1, T + 1), T) == theta_full(PENT, T)


class TestTheta:
    def test_pentagonal(self):
        t = theta_full(PENT, 12)
        assert {n: c for n, c in enumerate(t) if c} == {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1}

    def test_squares(self):
        t = theta_full(ThetaForm(Fraction(1), Fraction(0)), 9)
        assert {n: c for n, c in enumerate(t) if c} == {0: 1, 1: -2, 4: 2, 9: -2}

    def test_five_halves_one_half(self):
        t = theta_full(ThetaForm(Fraction(5, 2), Fraction(1, 2)), 7)
        assert t.to_list() == theta_enumerate(Fraction(5, 2), Fraction(1, 2), 7, lambda j: True)
        assert {n: c for n, c in enumerate(t) if c} == {0: 1, 2: -1, 3: -1}

    def test_tail_k1(self):
        t = theta_tail(PENT, 1, 7)
        assert {n: c for n, c in enumerate(t) if c} == {2: 1, 5: -1, 7: -1}

    def test_tail_rejects_k0(self):
        with pytest.raises(SeriesError):
            theta_tail(PENT, 0, 5)

    def test_tail_empty(self):
        form = ThetaForm(Fraction(2), Fraction(1))
        k = 5
        assert theta_tail(form, k, form.g(k) - 1 if form.g(k) <= form.f(k) else form.f(k) - 1).is_nonnegative()
        T = int(form.A * k * k - form.B * k) - 1
        assert theta_tail(form, k, T) == IntegerSeries.zero(T)

    @pytest.mark.parametrize("A,B", [(Fraction(3, 2), Fraction(1, 2)), (1, 0), (2, 1), (Fraction(5, 2), Fraction(3, 2))])
    @pytest.mark.parametrize("k", [1, 2, 3, 6])
    def test_tail_plus_partial_is_full(self, A, B, k):
        form = ThetaForm(Fraction(A), Fraction(B))
        T = 300
        sign = -1 if k % 2 else 1
        lhs = theta_full(form, T) * sign
        rhs = theta_partial(form, -k, k - 1, T) * sign + theta_tail(form, k, T)
        assert lhs == rhs
        oracle = theta_enumerate(form.A, form.B, T, lambda j: not (-k <= j <= k - 1))
        assert theta_tail(form, k, T).to_list() == [sign * c for c in oracle]

    def test_a3_rearrangement(self):
        # partial pentagonal sum equals the full product minus the signed tail
        T, k = 7, 1
        partial = theta_partial(PENT, -k, k - 1, T)
        tail = theta_tail(PENT, k, T) * (-1) ** k
        assert partial == product_from_exponents(range(1, T + 1), T) - tail


class TestQBinomial:
    def test_small(self):
        assert q_binomial(3, 1, 4) == S(1, 1, 1, 0, 0)
        assert q_binomial(5, 5, 4) == IntegerSeries.one(4)
        assert q_binomial(4, 2, 6) == S(1, 1, 2, 1, 1, 0, 0)

    def test_out_of_range(self):
        assert q_binomial(3, -1, 5) == IntegerSeries.zero(5)
        assert q_binomial(3, 4, 5) == IntegerSeries.zero(5)

    @pytest.mark.parametrize("n", range(0, 13))
    def test_matches_subset_oracle(self, n):
        T = n * n // 4 + 1
        for k in range(n + 1):
            assert q_binomial(n, k, T).to_list() == q_binomial_brute(n, k, T)

    @pytest.mark.parametrize("n", [15, 20])
    def test_nonnegative_and_sum(self, n):
        T = n * n
        for k in range(n + 1):
            qb = q_binomial(n, k, T)
            assert qb.is_nonnegative()
            assert sum(qb) == comb(n, k)
