"""Command-line front end: ``cyclicbound {analyze,bounds,tabulate,decode,distance}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

import numpy as np

from .bounds import all_bounds
from .code import (
    CodeSpecError,
    build_code,
    classify_reversible,
    parse_code_spec,
    symmetric_reversible_degree,
)
from .decoder import DecodingError, decode, make_context
from .harness import CSV_HEADER, DEFAULT_BUDGET, OVER_BUDGET, rows_to_csv, tabulate, true_distance
from .series import default_registry, load_registry

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2


class InputError(Exception):
    pass


def _split_word(tokens: Sequence[str]) -> tuple[list[str], str | None]:
    rest, word = [], None
    for tok in tokens:
        if tok.startswith("word="):
            word = tok[5:]
        else:
            rest.append(tok)
    return rest, word


def _code(tokens: Sequence[str]):
    q, n, reps = parse_code_spec(tokens)
    return build_code(n, q, reps)


def _registry(args, q: int):
    if not args.registry:
        return default_registry(q)
    try:
        reg = load_registry(args.registry, q)
    except OSError as exc:
        raise InputError(f"cannot read registry: {exc}") from None
    for lineno, reason in reg.rejected:
        print(f"{args.registry}:{lineno}: rejected: {reason}", file=sys.stderr)
    return reg


def _emit(records: list[dict], fmt: str, columns: Sequence[str], text_lines: list[str]) -> str:
    if fmt == "json":
        return "\n".join(json.dumps(r, sort_keys=True) for r in records) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in records:
            w.writerow([json.dumps(r[c]) if isinstance(r[c], (dict, list)) else r[c] for c in columns])
        return buf.getvalue()
    return "\n".join(text_lines) + "\n"


def cmd_analyze(args) -> int:
    code = _code(args.spec)
    cls = classify_reversible(code.n, code.q, code)
    m = symmetric_reversible_degree(code.n, code.q)
    rec = {
        "q": code.q,
        "n": code.n,
        "k": code.k,
        "cosets": {str(c.leader): list(c.members) for c in code.cosets},
        "defining_set": list(code.defining_set),
        "generator": list(code.generator.coeffs),
        "reversibility": cls,
        "symmetric_reversible_m": m,
    }
    star = "*" if m is not None else ""
    lines = [
        f"code      q={code.q} n={code.n}{star} k={code.k}",
        f"reversible {cls}" + (f" (n | {code.q}^{m}+1)" if m is not None else ""),
        "cosets    " + "  ".join(f"M_{c.leader}={{{','.join(map(str, c.members))}}}" for c in code.cosets),
        f"D_C       {{{','.join(map(str, code.defining_set))}}}",
        f"g(x)      {list(code.generator.coeffs)}  (constant term first)",
    ]
    sys.stdout.write(_emit([rec], args.format, list(rec), lines))
    return EXIT_OK


def cmd_bounds(args) -> int:
    code = _code(args.spec)
    if not 1 <= code.k <= code.n - 1:
        raise InputError("bounds need 1 <= k <= n-1")
    certs = all_bounds(code, _registry(args, code.q))
    records = [c.to_dict() for c in certs]
    lines = [f"{c.kind:<9}{c.value:>3}  " + " ".join(f"{k}={v}" for k, v in c.witness.items()) for c in certs]
    sys.stdout.write(_emit(records, args.format, ["kind", "value", "witness"], lines))
    return EXIT_OK


def cmd_tabulate(args) -> int:
    try:
        lengths = [int(x) for x in args.lengths.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"bad --lengths value {args.lengths!r}") from None
    registry = None
    if args.registry:
        registry = _registry(args, args.q)
    try:
        rows = tabulate(lengths, args.q, registry, args.budget, distances=not args.no_distance)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.format == "csv":
        sys.stdout.write(rows_to_csv(rows))
    elif args.format == "json":
        sys.stdout.write("".join(json.dumps(r.to_dict(), sort_keys=True) + "\n" for r in rows))
    else:
        width = [4, 7, 10, 10, 9]
        out = ["  ".join(h.rjust(w) for h, w in zip(CSV_HEADER[:5], width)) + "  flags"]
        for r in rows:
            cells = r.cells()
            out.append("  ".join(c.rjust(w) for c, w in zip(cells[:5], width)) + "  " + cells[5])
        sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def cmd_decode(args) -> int:
    tokens, word = _split_word(args.spec)
    code = _code(tokens)
    if not 1 <= code.k <= code.n - 1:
        raise InputError("decoding needs 1 <= k <= n-1")
    ctx = make_context(code, registry=_registry(args, code.q))
    if word is None:
        if args.random_errors is None:
            raise InputError("decode needs word=<s0,s1,...> or --random-errors W")
        rng = np.random.default_rng(args.seed)
        sent = code.random_codeword(rng)
        received = list(sent)
        for i in rng.choice(code.n, size=min(args.random_errors, code.n), replace=False):
            received[i] = code.base.add(received[i], int(rng.integers(1, code.q)))
    else:
        try:
            received = [int(x) % code.q for x in word.split(",") if x.strip()]
        except ValueError:
            raise InputError(f"bad received word {word!r}") from None
        if len(received) != code.n:
            raise InputError(f"received word has {len(received)} symbols, expected {code.n}")
    res = decode(received, ctx)
    rec = res.to_dict()
    rec["received"] = received
    rec["t_max"] = ctx.t_max
    lines = [
        f"status    {res.status}" + (f" ({res.reason})" if res.reason else ""),
        f"received  {','.join(map(str, received))}",
        f"radius    {ctx.t_max} (d_f = {ctx.d_f}, {ctx.certificate.witness['candidate']})",
    ]
    if res.ok:
        lines += [
            f"positions {res.positions}",
            f"values    {res.values}",
            f"codeword  {','.join(map(str, res.codeword))}",
        ]
    sys.stdout.write(_emit([rec], args.format, ["status", "positions", "values", "codeword"], lines))
    return EXIT_OK if res.ok else EXIT_FAILURE


def cmd_distance(args) -> int:
    code = _code(args.spec)
    if not 1 <= code.k <= code.n - 1:
        raise InputError("distance needs 1 <= k <= n-1")
    d = true_distance(code, args.budget, args.method)
    rec = {"q": code.q, "n": code.n, "k": code.k, "distance": d}
    lines = [f"d = {d}" if d != OVER_BUDGET else f"over budget ({code.q}^{code.k} codewords > {args.budget})"]
    sys.stdout.write(_emit([rec], args.format, list(rec), lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--registry", help="candidate registry file (default: built-in)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max codewords to enumerate")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="cyclicbound", description="Cyclic-code distance bounds and decoding.")
    sub = p.add_subparsers(dest="command", required=True)
    spec_help = "code spec: q=<int> n=<int> cosets=<r1,r2,...>"

    a = sub.add_parser("analyze", parents=[common], help="code parameters and cosets")
    a.add_argument("spec", nargs="+", help=spec_help)
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("bounds", parents=[common], help="BCH, HT, rational and Boston certificates")
    b.add_argument("spec", nargs="+", help=spec_help)
    b.set_defaults(func=cmd_bounds)

    t = sub.add_parser("tabulate", parents=[common], help="bound statistics over all codes of given lengths")
    t.add_argument("--lengths", required=True, help="comma-separated lengths")
    t.add_argument("--q", type=int, default=2)
    t.add_argument("--no-distance", action="store_true", help="skip brute-force distance columns")
    t.set_defaults(func=cmd_tabulate)

    d = sub.add_parser("decode", parents=[common], help="decode a received word")
    d.add_argument("spec", nargs="+", help=spec_help + " word=<s0,s1,...>")
    d.add_argument("--random-errors", type=int, help="decode a random codeword with this many errors")
    d.set_defaults(func=cmd_decode)

    s = sub.add_parser("distance", parents=[common], help="brute-force minimum distance")
    s.add_argument("spec", nargs="+", help=spec_help)
    s.add_argument("--method", choices=["direct", "dual", "auto"], default="direct")
    s.set_defaults(func=cmd_distance)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CodeSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InputError, DecodingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
