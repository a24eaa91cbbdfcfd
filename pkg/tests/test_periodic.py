import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import count_parts_in
from thetapos.periodic import (
    CoprimeTriple,
    CoprimeTuple45,
    F_value,
    alpha_series,
    decompose,
    polynomial_part_45,
    remainder_45,
)
from thetapos.tables import load_expected

TABLE_TRIPLES = sorted({row.triple for row in load_expected()})


def coprime_triples_upto(limit):
    out = []
    for a in range(1, limit + 1):
        for b in range(a + 1, limit // a + 1):
            for c in range(b + 1, limit // (a * b) + 1):
                if gcd(a, b) == gcd(a, c) == gcd(b, c) == 1:
                    out.append((a, b, c))
    return out


SMALL_TRIPLES = coprime_triples_upto(1000)


def test_table_triples():
    assert len(TABLE_TRIPLES) == 10


class TestTriple:
    def test_sorted(self):
        assert CoprimeTriple.of(7, 1, 4).parts == (1, 4, 7)

    @pytest.mark.parametrize("parts", [(2, 4, 6), (1, 2, 2), (0, 1, 2), (1, 3, 9), (-1, 2, 3)])
    def test_rejects(self, parts):
        with pytest.raises(ValueError):
            CoprimeTriple.of(*parts)

    def test_tuple45(self):
        assert CoprimeTuple45((5, 3, 2, 1)).parts == (1, 2, 3, 5)
        with pytest.raises(ValueError):
            CoprimeTuple45((1, 2, 3))
        with pytest.raises(ValueError):
            CoprimeTuple45((1, 2, 4, 5))


class TestAlpha:
    def test_examples(self):
        s = alpha_series(CoprimeTriple.of(1, 2, 3), 10)
        assert s[0] == 1
        assert s[6] == 7
        assert alpha_series(CoprimeTriple.of(1, 4, 5), 3)[3] == 1

    @pytest.mark.parametrize("parts", TABLE_TRIPLES)
    def test_brute_force_to_200(self, parts):
        s = alpha_series(CoprimeTriple.of(*parts), 200)
        assert list(s) == [count_parts_in(n, parts) for n in range(201)]


class TestF:
    def test_examples(self):
        assert F_value(CoprimeTriple.of(1, 2, 3), 0) == 0
        assert F_value(CoprimeTriple.of(1, 2, 3), 6) == 6
        assert F_value(CoprimeTriple.of(1, 4, 5), 10) == 5


class TestDecompose:
    @pytest.mark.parametrize("parts,D", [((1, 2, 3), 1), ((1, 2, 7), Fraction(8, 7)), ((1, 3, 8), Fraction(17, 16))])
    def test_examples(self, parts, D):
        assert decompose(CoprimeTriple.of(*parts)).D == D

    def test_table_values(self):
        for row in load_expected():
            assert decompose(CoprimeTriple.of(*row.triple)).D == row.D, row

    @pytest.mark.parametrize("parts", TABLE_TRIPLES)
    def test_beta_matches_definition(self, parts):
        t = CoprimeTriple.of(*parts)
        dec = decompose(t)
        assert dec.period == t.product
        T = 3 * t.product
        alpha = count_parts_in  # independent counter
        for n in range(0, T, max(1, T // 60)):
            beta = alpha(n, parts) - Fraction(n * n + sum(parts) * n, 2 * t.product)
            assert dec.beta(n) == beta
            assert (2 * t.product) % beta.denominator == 0

    @settings(max_examples=50, deadline=None)
    @given(st.sampled_from(SMALL_TRIPLES))
    def test_random_triples_periodic(self, parts):
        t = CoprimeTriple.of(*parts)
        dec = decompose(t)
        P = t.product
        alpha = alpha_series(t, 3 * P)
        beta = [alpha[n] - F_value(t, n) for n in range(3 * P)]
        assert all(beta[n] == beta[n + P] for n in range(2 * P))
        assert all((2 * P) % b.denominator == 0 for b in beta)
        assert dec.D == max(abs(b) for b in beta)
        assert dec.D > 0


class TestRemainder45:
    def test_four_parts(self):
        ok, bound, period = remainder_45(CoprimeTuple45((1, 2, 3, 5)))
        assert ok and period == 30
        assert bound > 0

    def test_five_parts(self):
        ok, _, period = remainder_45(CoprimeTuple45((1, 2, 3, 5, 7)))
        assert ok and period == 210

    def test_value_at_zero(self):
        assert polynomial_part_45((1, 2, 3, 5), 0) == 0
        assert count_parts_in(0, (1, 2, 3, 5)) - polynomial_part_45((1, 2, 3, 5), 0) == 1

    def test_polynomial_hand_copy(self):
        # four parts: (2n^3 + 3 s n^2 + (sum of squares + 3 e2) n) / 12abcd
        a, b, c, d = 1, 3, 4, 5
        for n in (1, 7, 40):
            num = 2 * n**3 + 3 * 13 * n**2 + ((1 + 9 + 16 + 25) + 3 * (3 + 4 + 5 + 12 + 15 + 20)) * n
            assert polynomial_part_45((a, b, c, d), n) == Fraction(num, 12 * 60)

    def test_random_tuples(self):
        rng = random.Random(7)
        seen = 0
        while seen < 5:
            parts = tuple(sorted(rng.sample(range(1, 12), 4)))
            if all(gcd(x, y) == 1 for i, x in enumerate(parts) for y in parts[i + 1 :]):
                assert remainder_45(CoprimeTuple45(parts))[0]
                seen += 1
