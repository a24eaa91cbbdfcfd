"""Expected threshold tables and their recomputation."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .bounds import FamilyParams, compute_thresholds
from .periodic import CoprimeTriple, decompose
from .series import ThetaForm


@dataclass(frozen=True)
class TableRow:
    triple: tuple[int, int, int]
    A: Fraction
    B: Fraction
    D: Fraction
    K: int
    N: tuple[int, ...]

    def key(self) -> tuple:
        return (self.A, self.B, self.triple)


def load_expected(path: str | Path | None = None) -> list[TableRow]:
    if path is None:
        text = resources.files("thetapos").joinpath("data/tables.json").read_text()
    else:
        text = Path(path).read_text()
    doc = json.loads(text)
    rows = []
    for table in doc["tables"]:
        A, B = Fraction(table["A"]), Fraction(table["B"])
        for r in table["rows"]:
            rows.append(TableRow(tuple(r["triple"]), A, B, Fraction(r["D"]), int(r["K"]), tuple(r["N"])))
    return rows


def compute_row(triple, A, B) -> TableRow:
    t = CoprimeTriple.of(*triple)
    form = ThetaForm(Fraction(A), Fraction(B))
    D = decompose(t).D
    th = compute_thresholds(FamilyParams(t, form, D))
    return TableRow(t.parts, form.A, form.B, D, th.K, tuple(th.N_list))


def diff_rows(expected: TableRow, got: TableRow) -> list[str]:
    out = []
    for name in ("D", "K", "N"):
        e, g = getattr(expected, name), getattr(got, name)
        if e != g:
            out.append(f"{expected.triple} A={expected.A} B={expected.B} {name}: expected {_fmt(e)}, got {_fmt(g)}")
    return out


def _fmt(x) -> str:
    if isinstance(x, tuple):
        return ",".join(map(str, x))
    return str(x)
