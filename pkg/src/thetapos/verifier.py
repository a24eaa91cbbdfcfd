"""Expansion of the gamma series and end-to-end positivity certificates."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import FamilyParams, Thresholds, compute_thresholds
from .periodic import F_value, alpha_series
from .series import IntegerSeries, _div_one_minus, theta_tail

__all__ = [
    "ConsistencyError",
    "KCheck",
    "SampleCheck",
    "PositivityCertificate",
    "gamma_series",
    "certify_family",
    "tail_terms",
    "classify_case",
    "case_bound_probe",
    "generic_case_bound",
    "case_intervals",
    "random_probes",
]

DEFAULT_SAMPLE_T = 2000
DEFAULT_SAMPLE_K_EXTRA = 3


class ConsistencyError(RuntimeError):
    """A result that the underlying theorem rules out; signals an implementation bug."""


@dataclass(frozen=True)
class KCheck:
    k: int
    L: int
    N: int
    min_coeff: int
    min_at: int


@dataclass(frozen=True)
class SampleCheck:
    k_range: tuple[int, int]  # half-open [K, K + extra)
    T: int
    passed: bool


@dataclass(frozen=True)
class PositivityCertificate:
    params: FamilyParams
    thresholds: Thresholds
    checked: list[KCheck] = field(default_factory=list)
    sample: SampleCheck | None = None

    @property
    def verdict(self) -> bool:
        return all(c.min_coeff >= 0 for c in self.checked) and (self.sample is None or self.sample.passed)

    def to_dict(self) -> dict:
        t, f = self.params.triple, self.params.form
        out = {
            "family": {"a": t.a, "b": t.b, "c": t.c, "A": _q(f.A), "B": _q(f.B)},
            "D": _q(self.params.D),
            "K": self.thresholds.K,
            "per_k": [
                {"k": c.k, "L": c.L, "N": c.N, "min_coeff": c.min_coeff, "min_at": c.min_at}
                for c in self.checked
            ],
            "sample": None,
            "verdict": "pass" if self.verdict else "fail",
        }
        if self.sample is not None:
            out["sample"] = {
                "k_range": list(self.sample.k_range),
                "T": self.sample.T,
                "pass": self.sample.passed,
            }
        return out


def _q(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def gamma_series(p: FamilyParams, k: int, T: int) -> IntegerSeries:
    """Theta tail of index ``k`` divided by ``(1-q^a)(1-q^b)(1-q^c)``."""
    cs = theta_tail(p.form, k, T).to_list()
    for m in p.triple.parts:
        _div_one_minus(cs, m)
    return IntegerSeries(cs)


def certify_family(
    p: FamilyParams,
    sample_T: int = DEFAULT_SAMPLE_T,
    sample_k_extra: int = DEFAULT_SAMPLE_K_EXTRA,
) -> PositivityCertificate:
    """Compute thresholds, then check every ``gamma(n)`` with ``n < N^k`` for ``k < K``.

    The ``K <= k < K + sample_k_extra`` sweep up to ``sample_T`` is a sanity
    guard: a negative coefficient there raises :class:`ConsistencyError`.
    """
    th = compute_thresholds(p)
    checked = []
    for k in range(1, th.K):
        L, N = th.per_k[k]
        if N == 0:
            checked.append(KCheck(k, L, N, 0, 0))
            continue
        g = gamma_series(p, k, N - 1)
        m, at = g.min_coeff()
        checked.append(KCheck(k, L, N, m, at))
    sample = None
    if sample_k_extra > 0:
        for k in range(th.K, th.K + sample_k_extra):
            m, at = gamma_series(p, k, sample_T).min_coeff()
            if m < 0:
                raise ConsistencyError(
                    f"gamma^{k}({at}) = {m} < 0 for {p.triple} with k >= K = {th.K}"
                )
        sample = SampleCheck((th.K, th.K + sample_k_extra), sample_T, True)
    return PositivityCertificate(p, th, checked, sample)


# -- nine-case lower bounds ----------------------------------------------------


def tail_terms(p: FamilyParams, k: int, n: int) -> list[tuple[int, int]]:
    """``(sign, exponent)`` of the tail terms with exponent ``<= n``, in increasing exponent order.

    The ordering is f(k), g(k+1), f(k+1), g(k+2), ... with signs +, -, -, +, ...
    """
    f, g = p.form.f, p.form.g
    out = []
    j = k
    while True:
        # step from index j: f(j) carries sign (-1)^(j-k), g(j+1) carries -(-1)^(j-k)
        s = 1 if (j - k) % 2 == 0 else -1
        ef, eg = f(j), g(j + 1)
        if ef > n:
            break
        out.append((s, ef))
        if eg > n:
            break
        out.append((-s, eg))
        j += 1
    return sorted(out, key=lambda t: t[1])


def classify_case(p: FamilyParams, k: int, n: int) -> tuple[int, int]:
    """Return ``(case, l)`` for the interval containing ``n``."""
    f, g = p.form.f, p.form.g
    if n < f(k):
        return 1, 0
    l = 0
    while not (f(k + 2 * l) <= n < f(k + 2 * l + 2)):
        l += 1
    j = k + 2 * l
    if l == 0:
        if n < g(k + 1):
            return 2, 0
        if n < f(k + 1):
            return 3, 0
        if n < g(k + 2):
            return 4, 0
        return 5, 0
    if n < g(j + 1):
        return 6, l
    if n < f(j + 1):
        return 7, l
    if n < g(j + 2):
        return 8, l
    return 9, l


def _pair_sum(p: FamilyParams, k: int, l: int, n: int) -> Fraction:
    # closed form of sum_{j<l} [F(n-f(k+2j)) - F(n-g(k+2j+1)) - F(n-f(k+2j+1)) + F(n-g(k+2j+2))]
    A, B = p.form.A, p.form.B
    t = p.triple
    return l * (A - B) * (6 * A * k * k + 12 * A * k * l + 8 * A * l * l - A - B - t.total - 2 * n) / t.product


def case_bound_probe(p: FamilyParams, k: int, n: int) -> tuple[int, Fraction, int]:
    """Return ``(case, closed-form lower bound, actual gamma(n))``."""
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    f, g = p.form.f, p.form.g
    D = p.D

    def F(x):
        return F_value(p.triple, x)

    case, l = classify_case(p, k, n)
    j = k + 2 * l
    if case == 1:
        bound = Fraction(0)
    elif case == 2:
        bound = Fraction(alpha_series(p.triple, n - f(k))[n - f(k)])
    elif case == 3:
        bound = F(n - f(k)) - F(n - g(k + 1)) - 2 * D
    elif case == 4:
        bound = F(n - f(k)) - F(n - g(k + 1)) - F(n - f(k + 1)) - 3 * D
    elif case == 5:
        bound = F(n - f(k)) - F(n - g(k + 1)) - F(n - f(k + 1)) + F(n - g(k + 2)) - 4 * D
    else:
        bound = _pair_sum(p, k, l, n) + F(n - f(j))
        if case >= 7:
            bound -= F(n - g(j + 1))
        if case >= 8:
            bound -= F(n - f(j + 1))
        if case == 9:
            bound += F(n - g(j + 2))
        bound -= (4 * l + case - 5) * D
    actual = gamma_series(p, k, n)[n]
    return case, bound, actual


def generic_case_bound(p: FamilyParams, k: int, n: int) -> Fraction:
    """Term-by-term bound ``sum sign * F(n - e) - (#terms) * D`` used to cross-check the closed forms."""
    terms = tail_terms(p, k, n)
    return sum((s * F_value(p.triple, n - e) for s, e in terms), Fraction(0)) - len(terms) * p.D


def case_intervals(p: FamilyParams, k: int, l: int) -> list[tuple[int, int, int]]:
    """Nonempty ``(case, lo, hi)`` half-open intervals of block ``l`` (block 0 also holds cases 1 to 5)."""
    f, g = p.form.f, p.form.g
    j = k + 2 * l
    if l == 0:
        cuts = [0, f(k), g(k + 1), f(k + 1), g(k + 2), f(k + 2)]
        cases = [1, 2, 3, 4, 5]
    else:
        cuts = [f(j), g(j + 1), f(j + 1), g(j + 2), f(j + 2)]
        cases = [6, 7, 8, 9]
    return [(c, lo, hi) for c, lo, hi in zip(cases, cuts, cuts[1:]) if lo < hi]


def random_probes(p: FamilyParams, K: int, count: int, rng: random.Random, k_span: int = 3, l_max: int = 4):
    """Sample ``(k, n)`` with ``K <= k < K + k_span`` and ``n < f(k + 2 l_max + 2)``.

    Sampling is stratified: a block ``l`` and one of its case intervals are
    chosen first, so narrow intervals are hit as often as wide ones.
    """
    out = []
    for _ in range(count):
        k = rng.randint(K, K + k_span - 1)
        _, lo, hi = rng.choice(case_intervals(p, k, rng.randint(0, l_max)))
        out.append((k, rng.randint(lo, hi - 1)))
    return out
