"""Threshold quadratics and the float-free root ceiling.

All coefficients are exact :class:`~fractions.Fraction` values.  The
quadratics ``H1..H13`` are polynomials in ``k``; ``G1..G5`` are polynomials in
``l`` for a fixed ``k``.  ``K`` is the ceiling of the largest root over the
``H`` family, and for each ``k < K`` the value ``L`` (and from it ``N``) comes
from the ``G`` family.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, isqrt
from typing import Sequence

from .periodic import CoprimeTriple, decompose
from .series import ThetaForm

__all__ = [
    "BoundsError",
    "RationalQuadratic",
    "FamilyParams",
    "Thresholds",
    "build_H",
    "build_G",
    "all_H",
    "all_G",
    "ceil_root",
    "ceil_T",
    "compute_thresholds",
]


class BoundsError(ValueError):
    pass


@dataclass(frozen=True)
class RationalQuadratic:
    """``u x**2 + v x + w`` with ``u > 0``."""

    u: Fraction
    v: Fraction
    w: Fraction

    def __post_init__(self):
        for name in ("u", "v", "w"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.u <= 0:
            raise BoundsError(f"leading coefficient must be positive, got {self.u}")

    @property
    def discriminant(self) -> Fraction:
        return self.v * self.v - 4 * self.u * self.w

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        return (self.u * x + self.v) * x + self.w


@dataclass(frozen=True)
class FamilyParams:
    triple: CoprimeTriple
    form: ThetaForm
    D: Fraction

    def __post_init__(self):
        object.__setattr__(self, "D", Fraction(self.D))
        if self.D <= 0:
            raise BoundsError(f"D must be positive, got {self.D}")

    @classmethod
    def from_family(cls, parts, A, B) -> FamilyParams:
        """Build params, computing ``D`` from the periodic decomposition."""
        triple = parts if isinstance(parts, CoprimeTriple) else CoprimeTriple.of(*parts)
        return cls(triple, ThetaForm(Fraction(A), Fraction(B)), decompose(triple).D)


@dataclass(frozen=True)
class Thresholds:
    K: int
    per_k: dict[int, tuple[int, int]] = field(default_factory=dict)

    @property
    def N_list(self) -> list[int]:
        return [self.per_k[k][1] for k in sorted(self.per_k)]


# Coefficient table for H_i(k) = (u k^2 + v k + w) / (abc) - d_i * D.
# Each entry maps (A, B, s=a+b+c) to the numerators (u, v, w) and the D multiplier.
def _H_table(A: Fraction, B: Fraction, s: int) -> list[tuple[Fraction, Fraction, Fraction, int]]:
    E = A - B
    return [
        (2 * E * E, E * (2 * A - 2 * B + s), E * (A - B + s) / 2, 2),
        (2 * E * (A + B), E * (2 * A + 4 * B + s), E * (A + 3 * B + s) / 2, 3),
        (4 * A * E, 2 * (2 * A + B) * E, -E * (A - 3 * B + s), 3),
        (4 * A * E, 2 * E * (2 * A - B), -E * (A + 5 * B + s), 4),
        (4 * A * E, 2 * E * (2 * A - B), -(24 * E * (A + B) + s * s) / 8, 5),
        (4 * A * E, 6 * E * (2 * A - B), E * (A - 11 * B + s), 4),
        (2 * E * (3 * A - B), E * (10 * A - 8 * B + s), 3 * E * (A - 5 * B + s) / 2, 6),
        (4 * A * E, 6 * E * (2 * A + B), E * (A + 13 * B + s), 4),
        (2 * E * (3 * A + B), E * (10 * A + s + 10 * B), 3 * E * (A + 7 * B + s) / 2, 7),
        (4 * A * E, 2 * E * (8 * A + B), E * (A - 15 * B + s), 4),
        (8 * A * E, 4 * E * (4 * A + B), -2 * E * (A - 7 * B + s), 7),
        (4 * A * E, 2 * E * (8 * A - B), -E * (A + 17 * B + s), 4),
        (8 * A * E, 4 * E * (4 * A - B), -2 * E * (A + 9 * B + s), 8),
    ]


def build_H(i: int, p: FamilyParams) -> RationalQuadratic:
    """The i-th threshold quadratic in ``k`` (1 <= i <= 13)."""
    if not 1 <= i <= 13:
        raise BoundsError(f"H index out of range: {i}")
    t = p.triple
    u, v, w, d = _H_table(p.form.A, p.form.B, t.total)[i - 1]
    m = t.product
    return RationalQuadratic(Fraction(u) / m, Fraction(v) / m, Fraction(w) / m - d * p.D)


def all_H(p: FamilyParams) -> list[RationalQuadratic]:
    return [build_H(i, p) for i in range(1, 14)]


def _G_coeffs(i: int, A: Fraction, B: Fraction, s: int, k: int):
    # (u, v, w) numerators over abc, and the D term written as (dl * l + d0) * D
    E = A - B
    if i == 1:
        return (2 * E * (2 * A * k - A - B), (2 * k + 1) * E * (2 * A * k - A - B), Fraction(-s * s, 8), 4, 1)
    if i == 2:
        return (
            4 * E * (A * k - B),
            E * (4 * A * k * k + 4 * A * k - 6 * B * k + A - 3 * B + s),
            (2 * k + 1) * E * (2 * A * k - 2 * B * k + A - B + s) / 2,
            4,
            2,
        )
    if i == 3:
        return (
            4 * E * (A * k + B),
            E * (4 * A * k * k + 4 * A * k + 6 * B * k + A + 5 * B + s),
            (2 * k + 1) * E * (2 * A * k + 2 * B * k + A + 3 * B + s) / 2,
            4,
            3,
        )
    if i == 4:
        return (
            4 * E * (A * k + B),
            E * (4 * A * k * k + 8 * A * k + 2 * B * k - A + 7 * B - s),
            E * (4 * A * k * k + 4 * A * k + 2 * B * k - A + 3 * B - s),
            4,
            3,
        )
    if i == 5:
        return (
            4 * E * (A * k - B),
            E * (4 * A * k * k + 8 * A * k - 2 * B * k - A - 9 * B - s),
            E * (4 * A * k * k + 4 * A * k - 2 * B * k - A - 5 * B - s),
            4,
            4,
        )
    raise BoundsError(f"G index out of range: {i}")


def build_G(i: int, p: FamilyParams, k: int) -> RationalQuadratic:
    """The i-th quadratic in ``l`` for fixed ``k >= 1`` (1 <= i <= 5)."""
    if k < 1:
        raise BoundsError(f"k must be >= 1, got {k}")
    t = p.triple
    u, v, w, dl, d0 = _G_coeffs(i, p.form.A, p.form.B, t.total, k)
    m = t.product
    u = Fraction(u) / m
    if u <= 0:
        raise BoundsError(f"G{i} has nonpositive leading coefficient {u} at k={k}")
    return RationalQuadratic(u, Fraction(v) / m - dl * p.D, Fraction(w) / m - d0 * p.D)


def all_G(p: FamilyParams, k: int) -> list[RationalQuadratic]:
    return [build_G(i, p, k) for i in range(1, 6)]


def _past_root(q: RationalQuadratic, m: int, disc: Fraction) -> bool:
    # m >= larger root  <=>  2um + v >= sqrt(disc)
    y = 2 * q.u * m + q.v
    return y >= 0 and y * y >= disc


def ceil_root(q: RationalQuadratic) -> int:
    """``ceil(max(1, larger real root))``, or 1 when there is no real root.

    Exact: the answer is the least integer ``m >= 1`` with ``2um + v >= 0``
    and ``(2um + v)**2 >= v**2 - 4uw``.
    """
    if not isinstance(q, RationalQuadratic) or q.u <= 0:
        raise BoundsError("ceil_root needs a quadratic with positive leading coefficient")
    disc = q.discriminant
    if disc < 0:
        return 1
    # isqrt(floor(disc)) <= sqrt(disc) < isqrt(floor(disc)) + 1
    s = isqrt(floor(disc))
    lo = max(1, floor((-q.v + s) / (2 * q.u)))
    hi = max(1, ceil((-q.v + s + 1) / (2 * q.u)))
    if _past_root(q, lo, disc):
        return lo
    while not _past_root(q, hi, disc):  # guard only; hi bounds the root by construction
        hi = 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _past_root(q, mid, disc):
            hi = mid
        else:
            lo = mid
    return hi


def ceil_T(qs: Sequence[RationalQuadratic]) -> int:
    if not qs:
        raise BoundsError("ceil_T needs at least one quadratic")
    return max(ceil_root(q) for q in qs)


def compute_thresholds(p: FamilyParams) -> Thresholds:
    K = ceil_T(all_H(p))
    per_k = {}
    for k in range(1, K):
        L = ceil_T(all_G(p, k))
        j = k + 2 * L
        per_k[k] = (L, p.form.f(j))
    return Thresholds(K, per_k)
