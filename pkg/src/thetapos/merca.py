"""The special product ``prod (1 - q^{N_{2n}})`` and the two signed-tail positivity statements.

``N_n = n (1 + nu_2(n) / 2)`` with ``nu_2`` the 2-adic valuation.  The
statements are checked two ways: by building the displayed truncated-sum
expression directly, and by the tail form ``P(q) / ((1-q)(1-q^4)(1-q^5))``
times a pentagonal theta tail.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .identities import PENTAGONAL, IdentityReport, compare, euler_product
from .series import (
    IntegerSeries,
    _div_one_minus,
    _mul_binomial,
    product_from_exponents,
    series_invert,
    theta_outside,
    theta_partial,
)

__all__ = [
    "MercaExponent",
    "nu2",
    "merca_N",
    "merca_exponents",
    "merca_product",
    "lemma_e1_P",
    "lemma_e1_factors",
    "LemmaE1Result",
    "check_lemma_e1",
    "gamma_prime_series",
    "gamma_prime_expected",
    "MercaCertificate",
    "conjecture_display",
    "conjecture_tail_form",
    "check_merca_conjecture",
]

DEFAULT_K_MAX = 10
DEFAULT_T = 2000


@dataclass(frozen=True)
class MercaExponent:
    n: int
    nu2: int
    N: int


def nu2(n: int) -> int:
    if n <= 0:
        raise ValueError(f"nu_2 needs a positive integer, got {n}")
    return (n & -n).bit_length() - 1


def merca_N(n: int) -> MercaExponent:
    v = nu2(n)
    N = n * (1 + Fraction(v, 2))
    if N.denominator != 1:
        raise ValueError(f"N_{n} = {N} is not an integer")
    return MercaExponent(n, v, N.numerator)


def merca_exponents(T: int) -> list[int]:
    """``N_{2n}`` for every ``n`` with ``N_{2n} <= T``, in index order (``N_{2n} >= 2n``)."""
    out = []
    n = 1
    while 2 * n <= T:
        N = merca_N(2 * n).N
        if N <= T:
            out.append(N)
        n += 1
    return out


def merca_product(T: int) -> IntegerSeries:
    return product_from_exponents(merca_exponents(T), T)


def lemma_e1_P(T: int) -> IntegerSeries:
    """``P(q) = prod (1 - q^{N_{2n}}) (1-q)(1-q^4)(1-q^5) / (q; q)_inf``."""
    s = merca_product(T) * series_invert(euler_product(T))
    cs = s.to_list()
    for m in (1, 4, 5):
        _mul_binomial(cs, m, -1)
    return IntegerSeries(cs)


def _ratio(num_exps, den_exps, T: int) -> IntegerSeries:
    cs = product_from_exponents(num_exps, T).to_list()
    for e in den_exps:
        if e <= T:
            _div_one_minus(cs, e)
    return IntegerSeries(cs)


def lemma_e1_factors(T: int) -> tuple[IntegerSeries, IntegerSeries]:
    """The two factors ``P1``, ``P2`` of ``P`` built from the residue-class products."""
    odd = range(1, T + 1)
    p1 = _ratio(
        [3 * (2 * n - 1) for n in range(2, T + 1) if 3 * (2 * n - 1) <= T]
        + [5 * (8 * n - 4) for n in odd if 5 * (8 * n - 4) <= T],
        [2 * n - 1 for n in range(4, T + 1) if 2 * n - 1 <= T]
        + [8 * n - 4 for n in range(2, T + 1) if 8 * n - 4 <= T],
        T,
    )
    p2 = _ratio(
        [8 * n * (6 + nu2(n)) for n in odd if 8 * n * (6 + nu2(n)) <= T]
        + [4 * (8 * n - 6) for n in odd if 4 * (8 * n - 6) <= T]
        + [4 * (8 * n - 2) for n in odd if 4 * (8 * n - 2) <= T],
        [e for n in odd for e in (8 * n, 8 * n - 6, 8 * n - 2) if e <= T],
        T,
    )
    return p1, p2


@dataclass(frozen=True)
class LemmaE1Result:
    order: int
    nonnegative: bool
    min_coeff: int
    min_at: int
    factors_nonnegative: bool | None = None
    factors_match: bool | None = None


def check_lemma_e1(T: int, factors: bool = False) -> LemmaE1Result:
    P = lemma_e1_P(T)
    m, at = P.min_coeff()
    fn = fm = None
    if factors:
        p1, p2 = lemma_e1_factors(T)
        fn = p1.is_nonnegative() and p2.is_nonnegative()
        fm = p1 * p2 == P
    return LemmaE1Result(T, m >= 0, m, at, fn, fm)


def gamma_prime_series(k: int, T: int) -> IntegerSeries:
    """``(1/(1-q)) sum_{j not in [-k, k]} (-1)^{j+k-1} q^{j(3j+1)/2}``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    cs = theta_outside(PENTAGONAL, -k, k, T, sign_shift=k - 1).to_list()
    _div_one_minus(cs, 1)
    return IntegerSeries(cs)


def gamma_prime_expected(k: int, n: int) -> int:
    """Value of ``gamma'(n)`` read off the interval pattern 0 | 1, 2, 1, 0 repeating."""
    f = PENTAGONAL.f
    g = PENTAGONAL.g
    if n < g(k + 1):
        return 0
    l = 0
    while not g(k + 2 * l + 1) <= n < g(k + 2 * l + 3):
        l += 1
    j = k + 2 * l
    if n < f(j + 1):
        return 1
    if n < g(j + 2):
        return 2
    if n < f(j + 2):
        return 1
    return 0


@dataclass(frozen=True)
class MercaCertificate:
    which: int
    k: int
    order: int
    nonnegative: bool
    min_coeff: int
    min_at: int
    routes: IdentityReport | None = None

    @property
    def passed(self) -> bool:
        return self.nonnegative and (self.routes is None or self.routes.equal)

    def to_dict(self) -> dict:
        return {
            "conjecture": self.which,
            "k": self.k,
            "order": self.order,
            "nonnegative": self.nonnegative,
            "min_coeff": self.min_coeff,
            "min_at": self.min_at,
            "routes": None if self.routes is None else self.routes.to_dict(),
            "verdict": "pass" if self.passed else "fail",
        }


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


def conjecture_display(which: int, k: int, T: int, *, special: IntegerSeries | None = None) -> IntegerSeries:
    """The signed expression ``(+-)(1 - S_k / (q;q)_inf) prod (1 - q^{N_{2n}})`` expanded to ``T``.

    ``S_k`` is the partial sum of ``(-1)^j q^{j(3j-1)/2}`` over ``1-k <= j <= k``
    (first statement) or ``-k <= j <= k`` (second).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    # j(3j-1)/2 is A j^2 + B j with A=3/2, B=-1/2; index flip j -> -j maps it to the pentagonal form
    if which == 1:
        partial, sgn = theta_partial(PENTAGONAL, -k, k - 1, T), _sign(k)
    elif which == 2:
        partial, sgn = theta_partial(PENTAGONAL, -k, k, T), _sign(k - 1)
    else:
        raise ValueError(f"unknown statement {which}")
    inner = 1 - series_invert(euler_product(T)) * partial
    prod = merca_product(T) if special is None else special
    return (inner * prod) * sgn


def conjecture_tail_form(which: int, k: int, T: int, *, P: IntegerSeries | None = None) -> IntegerSeries:
    """``P(q) / ((1-q)(1-q^4)(1-q^5))`` times the matching pentagonal tail."""
    if P is None:
        P = lemma_e1_P(T)
    if which == 1:
        tail = theta_outside(PENTAGONAL, -k, k - 1, T, sign_shift=k)
    elif which == 2:
        tail = theta_outside(PENTAGONAL, -k, k, T, sign_shift=k - 1)
    else:
        raise ValueError(f"unknown statement {which}")
    cs = (P * tail).to_list()
    for m in (1, 4, 5):
        _div_one_minus(cs, m)
    return IntegerSeries(cs)


def check_merca_conjecture(
    which: int,
    k: int,
    T: int,
    routes_T: int | None = None,
    *,
    special: IntegerSeries | None = None,
    P: IntegerSeries | None = None,
) -> MercaCertificate:
    """Expand the display to ``T`` and check it is nonnegative.

    When ``routes_T`` is given, the display and tail-form constructions are
    also compared coefficientwise up to that order.
    """
    display = conjecture_display(which, k, T, special=special)
    m, at = display.min_coeff()
    routes = None
    if routes_T is not None:
        lhs = display.truncate(routes_T) if routes_T <= T else conjecture_display(which, k, routes_T)
        P_r = P.truncate(routes_T) if P is not None and P.order >= routes_T else None
        routes = compare(f"merca{which}_routes_k{k}", lhs, conjecture_tail_form(which, k, routes_T, P=P_r))
    return MercaCertificate(which, k, T, m >= 0, m, at, routes)
