"""Periodic decomposition of partitions into three (or four, five) coprime parts.

For pairwise coprime ``a < b < c`` the number ``alpha(n)`` of partitions of
``n`` into parts ``a, b, c`` splits as ``F(n) + beta(n)`` with

    F(n) = (n**2 + (a + b + c) n) / (2abc)

and ``beta`` periodic with period ``abc``.  We never trust the periodicity: it
is re-checked over a second period before ``D = max |beta|`` is reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, prod

from .series import IntegerSeries, _div_one_minus

__all__ = [
    "PeriodicityError",
    "CoprimeTriple",
    "CoprimeTuple45",
    "PeriodicDecomposition",
    "alpha_series",
    "F_value",
    "decompose",
    "polynomial_part_45",
    "remainder_45",
]


class PeriodicityError(RuntimeError):
    """The computed remainder is not periodic; indicates an arithmetic bug."""


def _check_parts(parts: tuple[int, ...]) -> tuple[int, ...]:
    parts = tuple(sorted(int(p) for p in parts))
    if any(p <= 0 for p in parts):
        raise ValueError(f"parts must be positive: {parts}")
    if len(set(parts)) != len(parts):
        raise ValueError(f"parts must be distinct: {parts}")
    for x, y in combinations(parts, 2):
        if gcd(x, y) != 1:
            raise ValueError(f"parts {x} and {y} are not coprime")
    return parts


@dataclass(frozen=True)
class CoprimeTriple:
    a: int
    b: int
    c: int

    def __post_init__(self):
        a, b, c = _check_parts((self.a, self.b, self.c))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @classmethod
    def of(cls, *parts: int) -> CoprimeTriple:
        if len(parts) == 1:
            parts = tuple(parts[0])
        if len(parts) != 3:
            raise ValueError(f"need exactly three parts, got {len(parts)}")
        return cls(*parts)

    @property
    def parts(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @property
    def product(self) -> int:
        return self.a * self.b * self.c

    @property
    def total(self) -> int:
        return self.a + self.b + self.c

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"


@dataclass(frozen=True)
class CoprimeTuple45:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = _check_parts(tuple(self.parts))
        if len(parts) not in (4, 5):
            raise ValueError(f"need 4 or 5 parts, got {len(parts)}")
        object.__setattr__(self, "parts", parts)


@dataclass(frozen=True)
class PeriodicDecomposition:
    triple: CoprimeTriple
    period: int
    beta_table: tuple[Fraction, ...]
    D: Fraction

    def beta(self, n: int) -> Fraction:
        return self.beta_table[n % self.period]


def alpha_series(triple: CoprimeTriple, T: int) -> IntegerSeries:
    """Coefficients of ``1 / ((1-q^a)(1-q^b)(1-q^c))`` up to ``q**T``."""
    return _parts_series(triple.parts, T)


def _parts_series(parts, T: int) -> IntegerSeries:
    cs = [0] * (T + 1)
    cs[0] = 1
    for p in parts:
        _div_one_minus(cs, p)
    return IntegerSeries(cs)


def F_value(triple: CoprimeTriple, n: int) -> Fraction:
    """The quadratic part ``(n^2 + (a+b+c) n) / (2abc)``; accepts any integer ``n``."""
    return Fraction(n * n + triple.total * n, 2 * triple.product)


def decompose(triple: CoprimeTriple) -> PeriodicDecomposition:
    period = triple.product
    alpha = alpha_series(triple, 2 * period - 1)
    beta = [alpha[n] - F_value(triple, n) for n in range(2 * period)]
    for n in range(period):
        if beta[n] != beta[n + period]:
            raise PeriodicityError(
                f"beta({n}) = {beta[n]} but beta({n + period}) = {beta[n + period]} for {triple}"
            )
    table = tuple(beta[:period])
    return PeriodicDecomposition(triple, period, table, max(abs(x) for x in table))


def polynomial_part_45(parts: tuple[int, ...], n: int) -> Fraction:
    """Non-periodic part of the four- or five-part partition count."""
    if len(parts) == 4:
        a, b, c, d = parts
        s1 = a + b + c + d
        s2 = a * a + b * b + c * c + d * d
        e2 = a * b + a * c + a * d + b * c + b * d + c * d
        return Fraction(2 * n**3 + 3 * s1 * n**2 + (s2 + 3 * e2) * n, 12 * a * b * c * d)
    if len(parts) == 5:
        C1 = sum(parts)
        C2 = sum(p * p for p in parts)
        C3 = sum(x * y for x, y in combinations(parts, 2))
        return Fraction(n**4 + 2 * C1 * n**3 + (C2 + 3 * C3) * n**2 + C1 * C3 * n, 24 * prod(parts))
    raise ValueError(f"need 4 or 5 parts, got {len(parts)}")


def remainder_45(tup: CoprimeTuple45, T: int | None = None) -> tuple[bool, Fraction, int]:
    """Check that ``alpha(n) - poly(n)`` repeats with period ``prod(parts)``.

    Scans ``[0, max(T, 2*period))``.  Returns ``(periodic, max |t(n)|, period)``;
    a period violation raises :class:`PeriodicityError`.
    """
    period = prod(tup.parts)
    span = 2 * period if T is None else max(T + 1, 2 * period)
    alpha = _parts_series(tup.parts, span - 1)
    t = [alpha[n] - polynomial_part_45(tup.parts, n) for n in range(span)]
    for n in range(span - period):
        if t[n] != t[n + period]:
            raise PeriodicityError(f"t({n}) != t({n + period}) for parts {tup.parts}")
    return True, max(abs(x) for x in t), period
