"""Finite-order checks of the classical and truncated q-series identities.

Each check builds both sides independently and compares them coefficient by
coefficient up to order ``T``.  The right-hand infinite sums in the
truncation identities are cut where a term's lowest exponent first exceeds
``T``; that lowest exponent grows strictly with the summation index, so the
cut loses nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .series import (
    IntegerSeries,
    ThetaForm,
    _div_one_minus,
    _mul_binomial,
    base_power,
    product_from_exponents,
    q_binomial,
    series_invert,
    theta_full,
    theta_partial,
    theta_tail,
)

__all__ = [
    "IdentityReport",
    "compare",
    "PENTAGONAL",
    "GAUSS_SQUARES",
    "GAUSS_TRIANGULAR",
    "ROGERS_RAMANUJAN_1",
    "ROGERS_RAMANUJAN_2",
    "euler_product",
    "minus_q_product",
    "overpartition_series",
    "pod_series",
    "check_pentagonal",
    "check_gauss",
    "check_andrews_merca",
    "check_guo_zeng",
    "check_jacobi",
    "check_equivalence",
    "tail_positivity_series",
    "EQUIVALENCE_PAIRS",
    "TAIL_SERIES",
    "run_identity_suite",
]

DEFAULT_T = 2000

PENTAGONAL = ThetaForm(Fraction(3, 2), Fraction(1, 2))
GAUSS_SQUARES = ThetaForm(Fraction(1), Fraction(0))
GAUSS_TRIANGULAR = ThetaForm(Fraction(2), Fraction(1))
ROGERS_RAMANUJAN_1 = ThetaForm(Fraction(5, 2), Fraction(3, 2))
ROGERS_RAMANUJAN_2 = ThetaForm(Fraction(5, 2), Fraction(1, 2))


@dataclass(frozen=True)
class IdentityReport:
    name: str
    order: int
    lhs_hash: str
    rhs_hash: str
    equal: bool
    first_mismatch: int | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "lhs_hash": self.lhs_hash,
            "rhs_hash": self.rhs_hash,
            "equal": self.equal,
            "first_mismatch": self.first_mismatch,
        }


def compare(name: str, lhs: IntegerSeries, rhs: IntegerSeries) -> IdentityReport:
    miss = lhs.first_difference(rhs)
    return IdentityReport(name, lhs.order, lhs.digest(), rhs.digest(), miss is None, miss)


# -- infinite products ---------------------------------------------------------


def euler_product(T: int) -> IntegerSeries:
    """``(q; q)_inf``."""
    return product_from_exponents(range(1, T + 1), T)


def minus_q_product(T: int, step: int = 1, start: int = 1) -> IntegerSeries:
    """``prod_{i>=0} (1 + q^(start + i*step))`` with the factors multiplied in directly."""
    return product_from_exponents(range(start, T + 1, step), T, plus=True)


def overpartition_series(T: int) -> IntegerSeries:
    """``(-q; q)_inf / (q; q)_inf``."""
    cs = minus_q_product(T).to_list()
    for e in range(1, T + 1):
        _div_one_minus(cs, e)
    return IntegerSeries(cs)


def pod_series(T: int) -> IntegerSeries:
    """``(-q; q^2)_inf / (q^2; q^2)_inf``."""
    cs = minus_q_product(T, step=2).to_list()
    for e in range(2, T + 1, 2):
        _div_one_minus(cs, e)
    return IntegerSeries(cs)


def _quintuple_product(residues: tuple[int, ...], T: int) -> IntegerSeries:
    return product_from_exponents((e for e in range(1, T + 1) if e % 5 in residues), T)


def rr_product_1(T: int) -> IntegerSeries:
    """``(q, q^4, q^5; q^5)_inf``."""
    return _quintuple_product((0, 1, 4), T)


def rr_product_2(T: int) -> IntegerSeries:
    """``(q^2, q^3, q^5; q^5)_inf``."""
    return _quintuple_product((0, 2, 3), T)


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


# -- classical identities ------------------------------------------------------


def check_pentagonal(T: int) -> IdentityReport:
    return compare("pentagonal", euler_product(T), theta_full(PENTAGONAL, T))


def check_gauss(T: int) -> tuple[IdentityReport, IdentityReport]:
    """Both Gauss identities.

    Factors ``(1 + q^e)`` are multiplied in as two-term series; the
    denominators are then removed with :func:`series_invert`.
    """
    squares_rhs = series_invert(minus_q_product(T)) * euler_product(T)
    r1 = compare("gauss_squares", theta_full(GAUSS_SQUARES, T), squares_rhs)
    even = product_from_exponents(range(2, T + 1, 2), T)
    tri_rhs = series_invert(minus_q_product(T, step=2)) * even
    # left side written as the one-sided sum over j >= 0
    lhs_terms = [0] * (T + 1)
    j = 0
    while j * (2 * j + 1) <= T:
        lhs_terms[j * (2 * j + 1)] += _sign(j)
        if (j + 1) * (2 * j + 1) <= T:
            lhs_terms[(j + 1) * (2 * j + 1)] -= _sign(j)
        j += 1
    r2 = compare("gauss_triangular", IntegerSeries(lhs_terms), tri_rhs)
    return r1, r2


def check_jacobi(T: int) -> tuple[IdentityReport, IdentityReport]:
    return (
        compare("jacobi_q_q4_q5", rr_product_1(T), theta_full(ROGERS_RAMANUJAN_1, T)),
        compare("jacobi_q2_q3_q5", rr_product_2(T), theta_full(ROGERS_RAMANUJAN_2, T)),
    )


def check_andrews_merca(k: int, T: int) -> IdentityReport:
    """Truncated pentagonal number theorem at index ``k``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    partial = [0] * (T + 1)
    for j in range(k):
        for e, s in ((j * (3 * j + 1) // 2, 1), ((j + 1) * (3 * j + 2) // 2, -1)):
            if e <= T:
                partial[e] += s * _sign(j)
    lhs = series_invert(euler_product(T)) * IntegerSeries(partial)

    rhs = [0] * (T + 1)
    rhs[0] = 1
    sgn = _sign(k - 1)
    # running 1/(q; q)_j
    inv = [0] * (T + 1)
    inv[0] = 1
    for i in range(1, k):
        _div_one_minus(inv, i)
    j = k
    while k * (k - 1) // 2 + (k + 1) * j <= T:
        shift = k * (k - 1) // 2 + (k + 1) * j
        _div_one_minus(inv, j)
        width = T - shift
        term = IntegerSeries(inv[: width + 1]) * q_binomial(j - 1, k - 1, width)
        for n, c in enumerate(term.coeffs):
            if c:
                rhs[shift + n] += sgn * c
        j += 1
    return compare(f"andrews_merca_k{k}", lhs, IntegerSeries(rhs))


def check_guo_zeng(variant: int, k: int, T: int) -> IdentityReport:
    """Truncated Gauss identities (``variant`` 7: squares, 8: triangular)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if variant == 7:
        return _guo_zeng_squares(k, T)
    if variant == 8:
        return _guo_zeng_triangular(k, T)
    raise ValueError(f"unknown variant {variant}")


def _guo_zeng_squares(k: int, T: int) -> IdentityReport:
    lhs = overpartition_series(T) * theta_partial(GAUSS_SQUARES, 1 - k, k - 1, T)

    rhs = [0] * (T + 1)
    rhs[0] = 1
    sgn = _sign(k - 1)
    # running prefactor (-q; q)_{k-1} prod_{i=1}^{j-k} (1 + q^i) / (q; q)_j, starting at j = k
    pre = [0] * (T + 1)
    pre[0] = 1
    for i in range(1, k):
        _mul_binomial(pre, i, +1)
    for i in range(1, k + 1):
        _div_one_minus(pre, i)
    j = k
    while j * k <= T:
        width = T - j * k
        term = IntegerSeries(pre[: width + 1]) * q_binomial(j - 1, k - 1, width)
        for n, c in enumerate(term.coeffs):
            if c:
                # (-1; q)_{j-k+1} contributes the leading factor 2
                rhs[j * k + n] += 2 * sgn * c
        j += 1
        _mul_binomial(pre, j - k, +1)
        _div_one_minus(pre, j)
    return compare(f"guo_zeng_squares_k{k}", lhs, IntegerSeries(rhs))


def _guo_zeng_triangular(k: int, T: int) -> IdentityReport:
    partial = [0] * (T + 1)
    for j in range(k):
        for e, s in ((j * (2 * j + 1), 1), ((j + 1) * (2 * j + 1), -1)):
            if e <= T:
                partial[e] += s * _sign(j)
    lhs = pod_series(T) * IntegerSeries(partial)

    rhs = [0] * (T + 1)
    rhs[0] = 1
    sgn = _sign(k - 1)
    # running prefactor (-q; q^2)_k (-q; q^2)_{j-k} / (q^2; q^2)_j, starting at j = k
    pre = [0] * (T + 1)
    pre[0] = 1
    for i in range(k):
        _mul_binomial(pre, 2 * i + 1, +1)
    for i in range(1, k + 1):
        _div_one_minus(pre, 2 * i)
    j = k
    while 2 * (k + 1) * j - k <= T:
        shift = 2 * (k + 1) * j - k
        width = T - shift
        qb = base_power(q_binomial(j - 1, k - 1, width // 2), 2, width)
        term = IntegerSeries(pre[: width + 1]) * qb
        for n, c in enumerate(term.coeffs):
            if c:
                rhs[shift + n] += sgn * c
        _mul_binomial(pre, 2 * (j - k) + 1, +1)
        j += 1
        _div_one_minus(pre, 2 * j)
    return compare(f"guo_zeng_triangular_k{k}", lhs, IntegerSeries(rhs))


# -- truncated-sum form vs tail form ------------------------------------------


@lru_cache(maxsize=32)
def _weight(pair: str, T: int) -> tuple[IntegerSeries, ThetaForm]:
    """Multiplier series and theta form for each equivalence family."""
    if pair == "a2_a4":
        return series_invert(euler_product(T)), PENTAGONAL
    if pair == "a11_a12":
        return overpartition_series(T), GAUSS_SQUARES
    if pair == "a10_a13":
        return pod_series(T), GAUSS_TRIANGULAR
    if pair == "a14_a16":
        return series_invert(rr_product_1(T)), ROGERS_RAMANUJAN_1
    if pair == "a15_a17":
        return series_invert(rr_product_2(T)), ROGERS_RAMANUJAN_2
    raise ValueError(f"unknown equivalence pair {pair!r}")


EQUIVALENCE_PAIRS = ("a2_a4", "a10_a13", "a11_a12", "a14_a16", "a15_a17")


def check_equivalence(pair: str, k: int, T: int) -> IdentityReport:
    """Truncated-sum expression plus ``(-1)**k`` versus the weighted theta tail.

    The truncated-sum side is written the way the positivity statement is
    phrased for each family; the ``(-1)**k`` constant accounts for the
    ``n = 0`` term that those statements exclude or add separately.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    w, form = _weight(pair, T)
    sgn = _sign(k - 1)
    if pair == "a11_a12":
        # (-1)^{k-1} (p(n) + 2 sum_{j=1}^{k-1} (-1)^j p(n - j^2)) - p(n - k^2)
        finite = theta_partial(form, 1 - k, k - 1, T) * sgn - IntegerSeries.monomial(k * k, T)
    else:
        finite = theta_partial(form, -k, k - 1, T) * sgn
    lhs = w * finite + _sign(k)
    rhs = w * theta_tail(form, k, T)
    return compare(f"{pair}_k{k}", lhs, rhs)


TAIL_SERIES = ("a4", "a12", "a13", "a16", "a17")


def tail_positivity_series(which: str, k: int, T: int) -> IntegerSeries:
    """Weighted theta tail whose coefficients the positivity statements assert are >= 0."""
    pair = {"a4": "a2_a4", "a12": "a11_a12", "a13": "a10_a13", "a16": "a14_a16", "a17": "a15_a17"}[which]
    w, form = _weight(pair, T)
    return w * theta_tail(form, k, T)


def run_identity_suite(T: int = 500, k_max: int = 10) -> list[IdentityReport]:
    reports = [check_pentagonal(T), *check_gauss(T), *check_jacobi(T)]
    for k in range(1, k_max + 1):
        reports.append(check_andrews_merca(k, T))
        reports.append(check_guo_zeng(7, k, T))
        reports.append(check_guo_zeng(8, k, T))
        for pair in EQUIVALENCE_PAIRS:
            reports.append(check_equivalence(pair, k, T))
    return reports
