from fractions import Fraction

import pytest

from oracles import theta_enumerate
from thetapos.merca import (
    check_lemma_e1,
    check_merca_conjecture,
    conjecture_display,
    conjecture_tail_form,
    gamma_prime_expected,
    gamma_prime_series,
    lemma_e1_P,
    lemma_e1_factors,
    merca_exponents,
    merca_N,
    merca_product,
    nu2,
)
from thetapos.series import IntegerSeries

PENT_A, PENT_B = Fraction(3, 2), Fraction(1, 2)


def nu2_slow(n):
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    return v


class TestExponents:
    @pytest.mark.parametrize("n,v,N", [(2, 1, 3), (16, 4, 48), (1, 0, 1), (12, 2, 24)])
    def test_examples(self, n, v, N):
        e = merca_N(n)
        assert (e.nu2, e.N) == (v, N)

    def test_nu2(self):
        assert all(nu2(n) == nu2_slow(n) for n in range(1, 2000))
        with pytest.raises(ValueError):
            nu2(0)

    def test_list_to_50(self):
        assert merca_exponents(50) == [3, 8, 9, 20, 15, 24, 21, 48, 27, 40, 33, 39, 45]

    def test_residue_families(self):
        # every N_{2n}, n <= M, comes from exactly one of five closed forms
        M = 1000
        got = sorted(merca_N(2 * n).N for n in range(1, M + 1))
        fam = []
        for n in range(1, 4 * M):
            if 4 * n - 2 <= 2 * M:
                fam.append(3 * (2 * n - 1))
            if 16 * n - 8 <= 2 * M:
                fam.append(5 * (8 * n - 4))
            if 16 * n <= 2 * M:
                fam.append(8 * n * (6 + nu2_slow(n)))
            if 16 * n - 12 <= 2 * M:
                fam.append(4 * (8 * n - 6))
            if 16 * n - 4 <= 2 * M:
                fam.append(4 * (8 * n - 2))
        assert sorted(fam) == got

    def test_even_indices_integral(self):
        assert all(merca_N(2 * n).N == Fraction(2 * n) * (1 + Fraction(nu2_slow(2 * n), 2)) for n in range(1, 500))


class TestProduct:
    def test_small(self):
        s = merca_product(10)
        assert {n: c for n, c in enumerate(s) if c} == {0: 1, 3: -1, 8: -1, 9: -1}
        assert merca_product(2) == IntegerSeries.one(2)


class TestLemmaE1:
    def test_nonnegative_100(self):
        P = lemma_e1_P(100)
        assert P[0] == 1 and P.is_nonnegative()

    def test_factors(self):
        r = check_lemma_e1(600, factors=True)
        assert r.nonnegative and r.factors_nonnegative and r.factors_match
        p1, p2 = lemma_e1_factors(200)
        assert p1[0] == p2[0] == 1


class TestGammaPrime:
    def test_examples_k1(self):
        g = gamma_prime_series(1, 10)
        assert list(g)[:5] == [0] * 5
        assert g[5] == g[6] == 1
        assert g[7] == 2

    @pytest.mark.parametrize("k", [1, 2, 5, 10])
    def test_against_running_sum(self, k):
        T = 500
        tail = theta_enumerate(PENT_A, PENT_B, T, lambda j: not (-k <= j <= k))
        sign = 1 if (k - 1) % 2 == 0 else -1
        running, acc = [], 0
        for c in tail:
            acc += sign * c
            running.append(acc)
        assert list(gamma_prime_series(k, T)) == running

    def test_pattern(self):
        for k in range(1, 11):
            g = gamma_prime_series(k, 500)
            assert set(g) <= {0, 1, 2}
            assert all(g[n] == gamma_prime_expected(k, n) for n in range(501))

    def test_rejects_k0(self):
        with pytest.raises(ValueError):
            gamma_prime_series(0, 5)


class TestConjectures:
    def test_statement1_k1(self):
        assert check_merca_conjecture(1, 1, 1000).nonnegative

    def test_statement2_k3(self):
        assert check_merca_conjecture(2, 3, 1000).nonnegative

    @pytest.mark.parametrize("which", [1, 2])
    def test_routes_agree(self, which):
        c = check_merca_conjecture(which, 2, 500, routes_T=500)
        assert c.routes.equal and c.passed

    def test_route_mismatch_is_reported(self):
        bogus = merca_product(200).shift(1) + IntegerSeries.one(200)
        c = check_merca_conjecture(1, 2, 200, routes_T=200, special=bogus)
        assert not c.routes.equal
        assert not c.passed

    def test_display_equals_tail_form(self):
        for k in (1, 4):
            assert conjecture_display(2, k, 300) == conjecture_tail_form(2, k, 300)

    def test_unknown_statement(self):
        with pytest.raises(ValueError):
            conjecture_display(3, 1, 10)
