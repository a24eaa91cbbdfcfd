"""Truncated integer power series in ``q`` and the standard q-series builders.

Every series carries its truncation order ``T`` (inclusive) and exactly
``T + 1`` Python integer coefficients.  Arithmetic between series of
different orders raises :class:`OrderMismatchError`; re-truncation is only
ever explicit (:meth:`IntegerSeries.truncate`).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Iterable

__all__ = [
    "SeriesError",
    "OrderMismatchError",
    "NonInvertibleError",
    "IntegerSeries",
    "ThetaForm",
    "series_mul",
    "series_invert",
    "product_from_exponents",
    "theta_full",
    "theta_partial",
    "theta_outside",
    "theta_tail",
    "q_binomial",
    "base_power",
    "mul_one_minus_q_power",
    "mul_one_plus_q_power",
    "div_one_minus_q_power",
    "div_one_plus_q_power",
]


class SeriesError(ValueError):
    """Base class for series-domain errors."""


class OrderMismatchError(SeriesError):
    pass


class NonInvertibleError(SeriesError):
    pass


def _sign(parity: int) -> int:
    # Python's % is mathematical, so (-1) % 2 == 1.
    return -1 if parity % 2 else 1


class IntegerSeries:
    """Dense series ``c[0] + c[1] q + ... + c[T] q^T`` with exact integer coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int], order: int | None = None):
        cs = [int(c) for c in coeffs]
        if order is None:
            if not cs:
                raise SeriesError("empty coefficient list needs an explicit order")
            order = len(cs) - 1
        if order < 0:
            raise SeriesError(f"order must be nonnegative, got {order}")
        if len(cs) > order + 1:
            raise SeriesError(f"{len(cs)} coefficients do not fit order {order}")
        cs.extend([0] * (order + 1 - len(cs)))
        self._coeffs = tuple(cs)

    @classmethod
    def _wrap(cls, cs: list[int]) -> IntegerSeries:
        s = cls.__new__(cls)
        s._coeffs = tuple(cs)
        return s

    @classmethod
    def zero(cls, order: int) -> IntegerSeries:
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> IntegerSeries:
        return cls([1], order)

    @classmethod
    def monomial(cls, exponent: int, order: int, coeff: int = 1) -> IntegerSeries:
        """``coeff * q**exponent``; vanishes if the exponent exceeds the order."""
        cs = [0] * (order + 1)
        if 0 <= exponent <= order:
            cs[exponent] = coeff
        return cls._wrap(cs)

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    def to_list(self) -> list[int]:
        return list(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __getitem__(self, n):
        return self._coeffs[n]

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntegerSeries):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        terms = []
        for n, c in enumerate(self._coeffs):
            if c:
                terms.append(f"{c}" if n == 0 else f"{c}*q^{n}")
        body = " + ".join(terms) if terms else "0"
        return f"IntegerSeries({body}, order={self.order})"

    def _check(self, other: IntegerSeries) -> None:
        if other.order != self.order:
            raise OrderMismatchError(f"orders differ: {self.order} vs {other.order}")

    def __add__(self, other):
        if isinstance(other, int):
            cs = list(self._coeffs)
            cs[0] += other
            return IntegerSeries._wrap(cs)
        if not isinstance(other, IntegerSeries):
            return NotImplemented
        self._check(other)
        return IntegerSeries._wrap([x + y for x, y in zip(self._coeffs, other._coeffs)])

    __radd__ = __add__

    def __neg__(self) -> IntegerSeries:
        return IntegerSeries._wrap([-x for x in self._coeffs])

    def __sub__(self, other):
        if isinstance(other, int):
            return self + (-other)
        if not isinstance(other, IntegerSeries):
            return NotImplemented
        self._check(other)
        return IntegerSeries._wrap([x - y for x, y in zip(self._coeffs, other._coeffs)])

    def __rsub__(self, other):
        if isinstance(other, int):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            return IntegerSeries._wrap([other * x for x in self._coeffs])
        if not isinstance(other, IntegerSeries):
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def shift(self, m: int) -> IntegerSeries:
        """Multiply by ``q**m`` (m >= 0), keeping the order."""
        if m < 0:
            raise SeriesError("shift must be nonnegative")
        T = self.order
        if m > T:
            return IntegerSeries.zero(T)
        return IntegerSeries._wrap([0] * m + list(self._coeffs[: T + 1 - m]))

    def truncate(self, order: int) -> IntegerSeries:
        """Explicit re-truncation to a lower (or equal) order."""
        if order > self.order:
            raise OrderMismatchError(f"cannot extend order {self.order} to {order}")
        return IntegerSeries._wrap(list(self._coeffs[: order + 1]))

    def pad(self, order: int) -> IntegerSeries:
        """Embed a polynomial known to be exact at this order into a larger order."""
        if order < self.order:
            raise OrderMismatchError(f"cannot pad order {self.order} down to {order}")
        return IntegerSeries._wrap(list(self._coeffs) + [0] * (order - self.order))

    def min_coeff(self) -> tuple[int, int]:
        """Return ``(value, index)`` of the smallest coefficient (first occurrence)."""
        idx = min(range(len(self._coeffs)), key=self._coeffs.__getitem__)
        return self._coeffs[idx], idx

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self._coeffs)

    def first_difference(self, other: IntegerSeries) -> int | None:
        self._check(other)
        for n, (x, y) in enumerate(zip(self._coeffs, other._coeffs)):
            if x != y:
                return n
        return None

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(",".join(map(str, self._coeffs)).encode())
        return h.hexdigest()


@dataclass(frozen=True)
class ThetaForm:
    """Integer-valued quadratic ``A x**2 + B x`` with ``A > B >= 0``."""

    A: Fraction
    B: Fraction

    def __post_init__(self):
        A, B = Fraction(self.A), Fraction(self.B)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        if not A > B >= 0:
            raise SeriesError(f"need A > B >= 0, got A={A}, B={B}")
        if (2 * A).denominator != 1 or (A + B).denominator != 1:
            raise SeriesError(f"A x^2 + B x is not integer valued for A={A}, B={B}")

    def f(self, j: int) -> int:
        """``A j**2 + B j``."""
        v = self.A * j * j + self.B * j
        assert v.denominator == 1
        return v.numerator

    def g(self, j: int) -> int:
        """``A j**2 - B j``."""
        return self.f(-j)

    def max_index(self, T: int) -> int:
        """Smallest ``J >= 0`` such that every ``|j| > J`` has exponent ``> T``."""
        J = 0
        while self.g(J + 1) <= T:
            J += 1
        return J

    def __str__(self) -> str:
        return f"{self.A},{self.B}"


def series_mul(s: IntegerSeries, t: IntegerSeries) -> IntegerSeries:
    """Cauchy product truncated to the common order."""
    if s.order != t.order:
        raise OrderMismatchError(f"orders differ: {s.order} vs {t.order}")
    a, b = s.coeffs, t.coeffs
    # iterate over the sparser operand
    if sum(1 for x in a if x) > sum(1 for x in b if x):
        a, b = b, a
    T = s.order
    out = [0] * (T + 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        seg = b[: T + 1 - i]
        if ai == 1:
            out[i:] = [x + y for x, y in zip(out[i:], seg)]
        elif ai == -1:
            out[i:] = [x - y for x, y in zip(out[i:], seg)]
        else:
            out[i:] = [x + ai * y for x, y in zip(out[i:], seg)]
    return IntegerSeries._wrap(out)


def series_invert(s: IntegerSeries) -> IntegerSeries:
    """Multiplicative inverse of a series whose constant term is +1 or -1."""
    s0 = s[0]
    if s0 not in (1, -1):
        raise NonInvertibleError(f"constant term {s0} is not a unit")
    T = s.order
    support = [(i, c) for i, c in enumerate(s.coeffs) if i and c]
    t = [0] * (T + 1)
    t[0] = s0
    for n in range(1, T + 1):
        acc = 0
        for i, c in support:
            if i > n:
                break
            acc += c * t[n - i]
        t[n] = -s0 * acc
    return IntegerSeries._wrap(t)


# -- sparse factors -----------------------------------------------------------
# The list-based helpers mutate in place; they back the public builders and the
# expansion loops in the verifier, where avoiding tuple churn matters.


def _mul_binomial(cs: list[int], m: int, sign: int) -> None:
    # cs *= (1 + sign*q^m), using old values of cs
    if m <= 0:
        raise SeriesError(f"exponent must be positive, got {m}")
    if m >= len(cs):
        return
    lo = cs[: len(cs) - m]
    if sign > 0:
        cs[m:] = [x + y for x, y in zip(cs[m:], lo)]
    else:
        cs[m:] = [x - y for x, y in zip(cs[m:], lo)]


def _div_one_minus(cs: list[int], m: int) -> None:
    # cs /= (1 - q^m): c[n] += c[n - m] ascending, one residue class at a time
    if m <= 0:
        raise SeriesError(f"exponent must be positive, got {m}")
    for r in range(min(m, len(cs))):
        cs[r::m] = list(accumulate(cs[r::m]))


def _div_one_plus(cs: list[int], m: int) -> None:
    # cs /= (1 + q^m): c[n] -= c[n - m]; alternate signs turn it into a prefix sum
    if m <= 0:
        raise SeriesError(f"exponent must be positive, got {m}")
    for r in range(min(m, len(cs))):
        col = cs[r::m]
        alt = [x if i % 2 == 0 else -x for i, x in enumerate(col)]
        acc = list(accumulate(alt))
        cs[r::m] = [x if i % 2 == 0 else -x for i, x in enumerate(acc)]


def mul_one_minus_q_power(s: IntegerSeries, m: int) -> IntegerSeries:
    cs = s.to_list()
    _mul_binomial(cs, m, -1)
    return IntegerSeries._wrap(cs)


def mul_one_plus_q_power(s: IntegerSeries, m: int) -> IntegerSeries:
    cs = s.to_list()
    _mul_binomial(cs, m, +1)
    return IntegerSeries._wrap(cs)


def div_one_minus_q_power(s: IntegerSeries, m: int) -> IntegerSeries:
    cs = s.to_list()
    _div_one_minus(cs, m)
    return IntegerSeries._wrap(cs)


def div_one_plus_q_power(s: IntegerSeries, m: int) -> IntegerSeries:
    cs = s.to_list()
    _div_one_plus(cs, m)
    return IntegerSeries._wrap(cs)


def product_from_exponents(
    exps: Iterable[int],
    T: int,
    *,
    plus: bool = False,
    base: IntegerSeries | None = None,
) -> IntegerSeries:
    """Truncated product of ``(1 - q**e)`` over the exponent stream.

    With ``plus=True`` the factors are ``(1 + q**e)`` instead.  Exponents
    above ``T`` contribute nothing and are skipped, so an infinite stream is
    fine as long as it is eventually larger than ``T`` *and finite*; callers
    pass bounded ranges.  ``base`` multiplies the product onto an existing
    series in place of the constant 1.
    """
    if base is None:
        cs = [0] * (T + 1)
        cs[0] = 1
    else:
        if base.order != T:
            raise OrderMismatchError(f"orders differ: {base.order} vs {T}")
        cs = base.to_list()
    sign = 1 if plus else -1
    for e in exps:
        if e <= 0:
            raise SeriesError(f"exponent must be positive, got {e}")
        if e <= T:
            _mul_binomial(cs, e, sign)
    return IntegerSeries._wrap(cs)


def theta_partial(form: ThetaForm, lo: int, hi: int, T: int, sign_shift: int = 0) -> IntegerSeries:
    """``sum_{j=lo}^{hi} (-1)**(j + sign_shift) q**(A j^2 + B j)``."""
    cs = [0] * (T + 1)
    for j in range(lo, hi + 1):
        e = form.f(j)
        if e <= T:
            cs[e] += _sign(j + sign_shift)
    return IntegerSeries._wrap(cs)


def theta_full(form: ThetaForm, T: int) -> IntegerSeries:
    """``sum_{j in Z} (-1)**j q**(A j^2 + B j)`` truncated at ``T``."""
    J = form.max_index(T)
    return theta_partial(form, -J, J, T)


def theta_outside(form: ThetaForm, lo: int, hi: int, T: int, sign_shift: int = 0) -> IntegerSeries:
    """``sum_{j not in [lo, hi]} (-1)**(j + sign_shift) q**(A j^2 + B j)``."""
    if lo > hi:
        raise SeriesError(f"empty excluded range [{lo}, {hi}]")
    J = form.max_index(T)
    cs = [0] * (T + 1)
    for j in range(-J, J + 1):
        if lo <= j <= hi:
            continue
        e = form.f(j)
        if e <= T:
            cs[e] += _sign(j + sign_shift)
    return IntegerSeries._wrap(cs)


def theta_tail(form: ThetaForm, k: int, T: int) -> IntegerSeries:
    """``sum_{j not in [-k, k-1]} (-1)**(j + k) q**(A j^2 + B j)``."""
    if k < 1:
        raise SeriesError(f"k must be >= 1, got {k}")
    return theta_outside(form, -k, k - 1, T, sign_shift=k)


def q_binomial(n: int, k: int, T: int) -> IntegerSeries:
    """Gaussian binomial ``[n choose k]_q`` truncated at ``T``."""
    if n < 0 or k < 0 or k > n:
        return IntegerSeries.zero(T)
    k = min(k, n - k)
    cs = [0] * (T + 1)
    cs[0] = 1
    # prod_{i=1}^{k} (1 - q^{n-k+i}) / (1 - q^i); each division is exact
    for i in range(1, k + 1):
        _mul_binomial(cs, n - k + i, -1)
        _div_one_minus(cs, i)
    return IntegerSeries._wrap(cs)


def base_power(s: IntegerSeries, d: int, T: int) -> IntegerSeries:
    """Substitute ``q -> q**d`` and truncate at ``T``."""
    if d <= 0:
        raise SeriesError("substitution power must be positive")
    cs = [0] * (T + 1)
    for n, c in enumerate(s.coeffs):
        if n * d > T:
            break
        cs[n * d] = c
    return IntegerSeries._wrap(cs)
