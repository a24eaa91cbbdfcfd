"""Command-line entry point.

Exit codes: 0 success, 1 a verification failed, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from math import gcd
from pathlib import Path

from . import identities, merca
from .bounds import FamilyParams, compute_thresholds
from .periodic import CoprimeTriple, CoprimeTuple45, PeriodicityError, decompose, remainder_45
from .series import SeriesError, ThetaForm
from .tables import compute_row, diff_rows, load_expected
from .verifier import ConsistencyError, certify_family

OUTPUT_DIR_ENV = "THETAPOS_OUTPUT_DIR"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q``, an integer, or a decimal that is a whole or half integer."""
    text = text.strip()
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None
    if "." in text and value.denominator not in (1, 2):
        raise UsageError(f"decimal input must be a whole or half integer: {text!r}")
    return value


def parse_form(text: str) -> ThetaForm:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"form must be 'A,B', got {text!r}")
    try:
        return ThetaForm(parse_rational(parts[0]), parse_rational(parts[1]))
    except SeriesError as e:
        raise UsageError(str(e)) from None


def parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def parse_triple(text: str) -> CoprimeTriple:
    try:
        return CoprimeTriple.of(*parse_ints(text))
    except ValueError as e:
        raise UsageError(str(e)) from None


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _emit(args, text: str, default_name: str) -> None:
    path = args.output
    if path is None and os.environ.get(OUTPUT_DIR_ENV):
        path = Path(os.environ[OUTPUT_DIR_ENV]) / default_name
    if path is None:
        sys.stdout.write(text)
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    print(f"wrote {path}", file=sys.stderr)


def _csv_text(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- tables ---------------------------------------------------------------------


def cmd_tables(args) -> int:
    expected = load_expected(args.expected)
    if args.family is not None:
        triple = parse_triple(args.family)
        form = parse_form(args.form or "3/2,1/2")
        expected = [r for r in expected if r.triple == triple.parts and (r.A, r.B) == (form.A, form.B)]
        if not expected:
            got = [compute_row(triple.parts, form.A, form.B)]
            pairs = [(None, g) for g in got]
        else:
            pairs = [(e, compute_row(e.triple, e.A, e.B)) for e in expected]
    else:
        pairs = [(e, compute_row(e.triple, e.A, e.B)) for e in expected]

    diffs = []
    for e, g in pairs:
        if e is not None:
            diffs.extend(diff_rows(e, g))

    if args.format == "json":
        text = _json_text(
            [
                {
                    "a": g.triple[0], "b": g.triple[1], "c": g.triple[2],
                    "A": _q(g.A), "B": _q(g.B), "D": _q(g.D), "K": g.K, "N": list(g.N),
                    "match": None if e is None else not diff_rows(e, g),
                }
                for e, g in pairs
            ]
        )
    elif args.format == "csv":
        width = max((len(g.N) for _, g in pairs), default=0)
        rows = [["a", "b", "c", "A", "B", "D", "K"] + [f"N_{i}" for i in range(1, width + 1)]]
        for _, g in pairs:
            rows.append([*g.triple, _q(g.A), _q(g.B), _q(g.D), g.K, *g.N])
        text = _csv_text(rows)
    else:
        lines = []
        current = None
        for e, g in pairs:
            if (g.A, g.B) != current and args.family is None:
                if current is not None:
                    lines.append("")
                current = (g.A, g.B)
                lines.append(f"A={_q(g.A)} B={_q(g.B)}")
                lines.append("(a,b,c) | D | K | N")
            mark = "" if e is None or not diff_rows(e, g) else "  MISMATCH"
            lines.append(f"({g.triple[0]},{g.triple[1]},{g.triple[2]}) | {_q(g.D)} | {g.K} | "
                         f"{','.join(map(str, g.N))}{mark}")
        lines.append(f"{len(pairs)} rows, {len(diffs)} mismatched cells")
        text = "\n".join(lines) + "\n"
    _emit(args, text, f"tables.{args.format}")
    for d in diffs:
        print(d, file=sys.stderr)
    return EXIT_FAIL if diffs else EXIT_OK


# -- verify ---------------------------------------------------------------------


def _certificate_rows(cert) -> list[list]:
    t, f = cert.params.triple, cert.params.form
    rows = [["a", "b", "c", "A", "B", "D", "K", "k", "L", "N", "min_coeff", "min_at"]]
    for c in cert.checked:
        rows.append([t.a, t.b, t.c, _q(f.A), _q(f.B), _q(cert.params.D), cert.thresholds.K,
                     c.k, c.L, c.N, c.min_coeff, c.min_at])
    return rows


def cmd_verify(args) -> int:
    triple = parse_triple(args.family)
    form = parse_form(args.form)
    params = FamilyParams(triple, form, decompose(triple).D)
    try:
        cert = certify_family(params, sample_T=args.sample_T, sample_k_extra=args.sample_k_extra)
    except ConsistencyError as e:
        print(f"internal consistency failure: {e}", file=sys.stderr)
        return EXIT_FAIL
    if args.format == "csv":
        text = _csv_text(_certificate_rows(cert))
    elif args.format == "text":
        d = cert.to_dict()
        lines = [f"family {triple} A={_q(form.A)} B={_q(form.B)}", f"D = {d['D']}", f"K = {d['K']}"]
        for c in cert.checked:
            lines.append(f"k={c.k} L={c.L} N={c.N} min_coeff={c.min_coeff} at n={c.min_at}")
        if cert.sample is not None:
            lines.append(f"sample k in [{cert.sample.k_range[0]}, {cert.sample.k_range[1]}) to order "
                         f"{cert.sample.T}: {'pass' if cert.sample.passed else 'fail'}")
        lines.append(f"verdict: {d['verdict']}")
        text = "\n".join(lines) + "\n"
    else:
        text = _json_text(cert.to_dict())
    name = f"certificate_{triple.a}-{triple.b}-{triple.c}_{_q(form.A).replace('/', 'o')}_{_q(form.B).replace('/', 'o')}"
    _emit(args, text, f"{name}.{args.format}")
    return EXIT_OK if cert.verdict else EXIT_FAIL


# -- identity -------------------------------------------------------------------


def cmd_identity(args) -> int:
    reports = identities.run_identity_suite(args.T, args.k_max)
    tails = []
    if args.tails:
        for which in identities.TAIL_SERIES:
            for k in range(1, args.tail_k_max + 1):
                s = identities.tail_positivity_series(which, k, args.tail_T)
                m, at = s.min_coeff()
                tails.append({"series": which, "k": k, "order": args.tail_T, "min_coeff": m,
                              "min_at": at, "nonnegative": m >= 0})
    ok = all(r.equal for r in reports) and all(t["nonnegative"] for t in tails)
    if args.format == "json":
        text = _json_text({"identities": [r.to_dict() for r in reports], "tails": tails,
                           "verdict": "pass" if ok else "fail"})
    elif args.format == "csv":
        rows = [["name", "order", "equal", "first_mismatch"]]
        rows += [[r.name, r.order, r.equal, "" if r.first_mismatch is None else r.first_mismatch] for r in reports]
        rows += [[f"tail_{t['series']}_k{t['k']}", t["order"], t["nonnegative"], ""] for t in tails]
        text = _csv_text(rows)
    else:
        lines = [f"{r.name}: {'equal' if r.equal else f'MISMATCH at {r.first_mismatch}'} (T={r.order})"
                 for r in reports]
        lines += [f"tail {t['series']} k={t['k']}: min {t['min_coeff']} (T={t['order']})" for t in tails]
        lines.append(f"verdict: {'pass' if ok else 'fail'}")
        text = "\n".join(lines) + "\n"
    _emit(args, text, f"identities.{args.format}")
    return EXIT_OK if ok else EXIT_FAIL


# -- merca ----------------------------------------------------------------------


def cmd_merca(args) -> int:
    ks = [args.k] if args.k is not None else list(range(1, args.k_max + 1))
    if any(k < 1 for k in ks):
        raise UsageError("k must be >= 1")
    lemma = merca.check_lemma_e1(args.T, factors=True)
    special = merca.merca_product(args.T)
    P = merca.lemma_e1_P(args.T)
    certs = [
        merca.check_merca_conjecture(w, k, args.T, min(args.routes_T, args.T), special=special, P=P)
        for w in (1, 2)
        for k in ks
    ]
    gp = []
    for k in ks:
        s = merca.gamma_prime_series(k, args.T)
        gp.append({"k": k, "values_in_0_1_2": set(s.coeffs) <= {0, 1, 2},
                   "pattern": all(s[n] == merca.gamma_prime_expected(k, n) for n in range(args.T + 1))})
    ok = (lemma.nonnegative and lemma.factors_nonnegative and lemma.factors_match
          and all(c.passed for c in certs) and all(g["values_in_0_1_2"] and g["pattern"] for g in gp))
    if args.format == "json":
        text = _json_text({
            "lemma_P": {"order": lemma.order, "nonnegative": lemma.nonnegative, "min_coeff": lemma.min_coeff,
                        "factors_nonnegative": lemma.factors_nonnegative, "factors_match": lemma.factors_match},
            "gamma_prime": gp,
            "conjectures": [c.to_dict() for c in certs],
            "verdict": "pass" if ok else "fail",
        })
    elif args.format == "csv":
        rows = [["conjecture", "k", "order", "nonnegative", "min_coeff", "min_at", "routes_equal"]]
        rows += [[c.which, c.k, c.order, c.nonnegative, c.min_coeff, c.min_at,
                  "" if c.routes is None else c.routes.equal] for c in certs]
        text = _csv_text(rows)
    else:
        lines = [f"P(q) to order {lemma.order}: {'nonnegative' if lemma.nonnegative else 'NEGATIVE'}"
                 f" (factors nonnegative: {lemma.factors_nonnegative}, product matches: {lemma.factors_match})"]
        lines += [f"gamma' k={g['k']}: values in {{0,1,2}}: {g['values_in_0_1_2']}, pattern: {g['pattern']}"
                  for g in gp]
        lines += [f"statement {c.which} k={c.k}: {'nonnegative' if c.nonnegative else 'NEGATIVE'} to {c.order}, "
                  f"routes {'equal' if c.routes is not None and c.routes.equal else 'DIFFER'}" for c in certs]
        lines.append(f"verdict: {'pass' if ok else 'fail'}")
        text = "\n".join(lines) + "\n"
    _emit(args, text, f"merca.{args.format}")
    return EXIT_OK if ok else EXIT_FAIL


# -- period ---------------------------------------------------------------------


def cmd_period(args) -> int:
    parts = parse_ints(args.triple)
    try:
        if len(parts) == 3:
            dec = decompose(CoprimeTriple.of(*parts))
            result = {"parts": list(dec.triple.parts), "period": dec.period, "verified": True, "D": _q(dec.D)}
        elif len(parts) in (4, 5):
            flag, tmax, period = remainder_45(CoprimeTuple45(parts))
            result = {"parts": sorted(parts), "period": period, "verified": flag, "max_abs_remainder": _q(tmax)}
        else:
            raise UsageError("give 3, 4 or 5 parts")
    except ValueError as e:
        raise UsageError(str(e)) from None
    except PeriodicityError as e:
        print(f"periodicity check failed: {e}", file=sys.stderr)
        return EXIT_FAIL
    if args.format == "json":
        text = _json_text(result)
    elif args.format == "csv":
        text = _csv_text([list(result), [",".join(map(str, v)) if isinstance(v, list) else v
                                         for v in result.values()]])
    else:
        bound = f"D = {result['D']}" if "D" in result else f"max |t| = {result['max_abs_remainder']}"
        text = f"parts {tuple(result['parts'])}: {bound}, period {result['period']} verified\n"
    _emit(args, text, f"period.{args.format}")
    return EXIT_OK


# -- scan -----------------------------------------------------------------------


def coprime_triples(limit: int):
    """Pairwise coprime ``a < b < c`` with ``abc <= limit`` in lexicographic order."""
    for a in range(1, limit + 1):
        for b in range(a + 1, limit // a + 1):
            if gcd(a, b) != 1:
                continue
            for c in range(b + 1, limit // (a * b) + 1):
                if gcd(a, c) == 1 and gcd(b, c) == 1:
                    yield CoprimeTriple(a, b, c)


def cmd_scan(args) -> int:
    form = parse_form(args.form)
    results = []
    for triple in coprime_triples(args.limit):
        params = FamilyParams(triple, form, decompose(triple).D)
        th = compute_thresholds(params)
        if th.N_list and max(th.N_list) > args.max_N:
            results.append({"triple": list(triple.parts), "D": _q(params.D), "K": th.K, "N": th.N_list,
                            "verdict": "skipped"})
            continue
        try:
            cert = certify_family(params, sample_T=args.sample_T, sample_k_extra=args.sample_k_extra)
            verdict = "pass" if cert.verdict else "fail"
        except ConsistencyError:
            verdict = "inconsistent"
        results.append({"triple": list(triple.parts), "D": _q(params.D), "K": th.K, "N": th.N_list,
                        "verdict": verdict})
    if args.format == "json":
        text = _json_text({"form": {"A": _q(form.A), "B": _q(form.B)}, "limit": args.limit, "results": results})
    elif args.format == "csv":
        rows = [["a", "b", "c", "D", "K", "N", "verdict"]]
        rows += [[*r["triple"], r["D"], r["K"], " ".join(map(str, r["N"])), r["verdict"]] for r in results]
        text = _csv_text(rows)
    else:
        lines = [f"({r['triple'][0]},{r['triple'][1]},{r['triple'][2]}) | {r['D']} | {r['K']} | "
                 f"{','.join(map(str, r['N']))} | {r['verdict']}" for r in results]
        text = "\n".join(lines) + "\n"
    _emit(args, text, f"scan.{args.format}")
    return EXIT_FAIL if any(r["verdict"] == "inconsistent" for r in results) else EXIT_OK


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thetapos", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON file whose keys supply defaults for the chosen command")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")
        p.add_argument("--output", help=f"output file (default: stdout, or ${OUTPUT_DIR_ENV}/<name>)")

    p = sub.add_parser("tables", help="recompute the threshold tables and diff against the expected values")
    p.add_argument("--family", help="a,b,c (single row)")
    p.add_argument("--form", help="A,B such as 3/2,1/2")
    p.add_argument("--expected", help="JSON file of expected tables (default: bundled)")
    common(p)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("verify", help="certify nonnegativity for one family")
    p.add_argument("--family", required=True, help="a,b,c")
    p.add_argument("--form", default="3/2,1/2", help="A,B (default 3/2,1/2)")
    p.add_argument("--sample-T", dest="sample_T", type=int, default=2000)
    p.add_argument("--sample-k-extra", dest="sample_k_extra", type=int, default=3)
    common(p)
    p.set_defaults(func=cmd_verify, format="json")

    p = sub.add_parser("identity", help="check the q-series identities to a finite order")
    p.add_argument("--T", type=int, default=identities.DEFAULT_T)
    p.add_argument("--k-max", dest="k_max", type=int, default=10)
    p.add_argument("--tails", action="store_true", help="also check the weighted tail series are nonnegative")
    p.add_argument("--tail-T", dest="tail_T", type=int, default=1000)
    p.add_argument("--tail-k-max", dest="tail_k_max", type=int, default=8)
    common(p)
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("merca", help="check the special-product positivity statements")
    p.add_argument("--k", type=int, help="a single k (default: 1..k-max)")
    p.add_argument("--k-max", dest="k_max", type=int, default=merca.DEFAULT_K_MAX)
    p.add_argument("--T", type=int, default=merca.DEFAULT_T)
    p.add_argument("--routes-T", dest="routes_T", type=int, default=500)
    common(p)
    p.set_defaults(func=cmd_merca)

    p = sub.add_parser("period", help="verify periodicity of the partition remainder")
    p.add_argument("--triple", required=True, help="3, 4 or 5 comma-separated pairwise coprime parts")
    common(p)
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("scan", help="certify every coprime triple with abc <= limit")
    p.add_argument("--form", default="3/2,1/2")
    p.add_argument("--limit", type=int, default=30)
    p.add_argument("--max-N", dest="max_N", type=int, default=10**6,
                   help="skip families whose largest N exceeds this")
    p.add_argument("--sample-T", dest="sample_T", type=int, default=2000)
    p.add_argument("--sample-k-extra", dest="sample_k_extra", type=int, default=3)
    common(p)
    p.set_defaults(func=cmd_scan)
    return parser


def _config_value(key: str, value):
    # list-valued families and forms are accepted as JSON arrays
    if key in ("family", "form", "triple") and isinstance(value, list):
        return ",".join(map(str, value))
    return value


def _load_config(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read config {path}: {e}") from None
    if not isinstance(data, dict):
        raise UsageError("config must be a JSON object")
    return {k.replace("-", "_"): v for k, v in data.items()}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        # only --config is read here; the subcommand's own required flags may come from the file
        pre_parser = argparse.ArgumentParser(add_help=False)
        pre_parser.add_argument("--config")
        pre, rest = pre_parser.parse_known_args(argv)
        subparsers = parser._subparsers._group_actions[0].choices
        command = next((a for a in rest if a in subparsers), None)
        if pre.config and command is not None:
            cfg = _load_config(pre.config)
            sub = subparsers[command]
            known = {a.dest for a in sub._actions}
            unknown = set(cfg) - known
            if unknown:
                raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
            for action in sub._actions:
                if action.dest in cfg:
                    action.required = False
            sub.set_defaults(**{k: _config_value(k, v) for k, v in cfg.items()})
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
