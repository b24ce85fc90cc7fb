"""Command line interface: ``rigid-invariants <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .blocks import BlockError, decompose_blocks
from .catalog import (
    build_catalog,
    dumps_jsonl,
    find_dual_candidates,
    group_classes,
    parse_families,
    self_test,
    verify_theories,
)
from .fingerprints import FingerprintError, condition_ii_report, fingerprint_trace, parse_fingerprint
from .partitions import (
    DEFAULT,
    TheoryLabel,
    check_structure,
    enumerate_rigid,
    format_partition,
    parse_pair,
    parse_theory,
)
from .representatives import (
    ReconstructionError,
    fingerprint_of_representative,
    mu_from_fingerprint,
    reconstruct_from_symbol,
    symbol_of_mu_r,
)
from .symbols import SymbolError, format_symbol, parse_symbol, symbol_of_pair

OK, FAILED, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _theory(text: str) -> TheoryLabel:
    try:
        return parse_theory(text)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def cmd_enumerate(args) -> int:
    theory = _theory(args.theory)
    if args.partitions_only:
        for p in enumerate_rigid(theory):
            print(format_partition(p))
        return OK
    for rec in build_catalog(theory):
        print(format_partition(rec.pair.lambda1) + ";" + format_partition(rec.pair.lambda2))
    return OK


def invariants_report(theory: TheoryLabel, pair_text: str) -> dict:
    try:
        pair = parse_pair(pair_text, theory)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if not pair.is_valid():
        raise InputError(f"{pair} is not a rigid pair of {theory}")
    trace = fingerprint_trace(pair)
    try:
        blocks = [
            {"kind": b.kind, "rows": [b.start + 1, b.stop], "operator": b.operator}
            for b in decompose_blocks(trace.merged)
        ]
    except BlockError as exc:
        blocks = {"error": str(exc)}
    return {
        "pair": str(pair),
        "symbol": format_symbol(symbol_of_pair(pair)),
        "fingerprint": str(trace.fingerprint),
        "lambda": format_partition(trace.merged.underlying),
        "mu": format_partition(trace.mu),
        "tau": {
            str(m): {"sign": s, "conditions": sorted(trace.tau.triggers[m])}
            for m, s in sorted(trace.tau.signs.items(), reverse=True)
        },
        "diagnostics": {
            "signature": list(pair.signature.families),
            "merged_rows": list(trace.merged.rows),
            "row_origins": ["lambda1" if o == "l1" else "lambda2" for o in trace.merged.origins],
            "blocks": blocks,
            "condition_ii_delta": bool(condition_ii_report([pair]).differences),
            "structure": {
                "lambda1": check_structure(pair.lambda1, pair.factor_theories()[0]).clauses,
                "lambda2": check_structure(pair.lambda2, pair.factor_theories()[1]).clauses,
            },
        },
    }


def cmd_invariants(args) -> int:
    rep = invariants_report(_theory(args.theory), args.pair)
    if args.json:
        _emit(rep)
        return OK
    for key in ("pair", "symbol", "fingerprint", "lambda", "mu"):
        print(f"{key}: {rep[key]}")
    tau = ", ".join(f"{m}:{'+' if v['sign'] > 0 else '-'}{''.join(v['conditions'])}" for m, v in rep["tau"].items())
    print(f"tau: {tau or '-'}")
    print("diagnostics: " + json.dumps(rep["diagnostics"], separators=(",", ":")))
    return OK


def cmd_classes(args) -> int:
    theory = _theory(args.theory)
    records = build_catalog(theory)
    for cid, members in group_classes(records, args.by).items():
        head = members[0]
        label = format_symbol(head.symbol) if args.by == "symbol" else str(head.fingerprint)
        print(f"{cid} {label} ({len(members)})")
        for r in members:
            print("  " + format_partition(r.pair.lambda1) + ";" + format_partition(r.pair.lambda2))
    return OK


def cmd_represent(args) -> int:
    theory = _theory(args.theory)
    if args.from_symbol is not None:
        try:
            s = parse_symbol(args.from_symbol)
            rec = reconstruct_from_symbol(s, theory)
        except (ValueError, ReconstructionError, SymbolError) as exc:
            raise InputError(str(exc)) from exc
        print(format_partition(rec.pair.lambda1) + ";" + format_partition(rec.pair.lambda2))
        fp, info = fingerprint_of_representative(rec.pair)
        _emit(
            {
                "assignment": [
                    {"length": a.length, "side": a.side, "owner": "lambda1" if a.owner == "l1" else "lambda2",
                     "row": a.row_index, "row_length": a.row_length, "role": a.role}
                    for a in rec.assignment.lines
                ],
                "greedy": rec.greedy,
                "backtracks": rec.backtracks,
                "equal_first_lines": rec.equal_first_lines,
                "fingerprint": str(fp),
                "fingerprint_blocks": info,
                "diagnostics": rec.diagnostics,
            }
        )
        return OK
    try:
        fp = parse_fingerprint(args.from_fingerprint)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if fp.size != theory.rank:
        raise InputError(f"fingerprint size {fp.size} does not match rank {theory.rank}")
    l1, l2, mu_r = mu_from_fingerprint(fp)
    print(f"lambda1_r: {format_partition(l1)}")
    print(f"lambda2_r: {format_partition(l2)}")
    print(f"mu_r: {format_partition(mu_r)}")
    try:
        print(f"mu_r symbol: {format_symbol(symbol_of_mu_r(fp, theory))}")
    except SymbolError as exc:
        print(f"mu_r symbol: error: {exc}")
    return OK


def cmd_verify(args) -> int:
    try:
        families = parse_families(args.theory)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report, records = verify_theories(families, args.max_rank)
    out = report.to_json()
    out["self_test"] = self_test(records)
    _emit(out)
    ok = report.strict_ok if args.strict else report.ok
    return OK if ok and out["self_test"] else FAILED


def cmd_duals(args) -> int:
    if args.rank < 0:
        raise InputError("rank must be non-negative")
    b = build_catalog(TheoryLabel("B", args.rank))
    c = build_catalog(TheoryLabel("C", args.rank))
    _emit(find_dual_candidates(b, c, by=args.by).to_json())
    return OK


def cmd_catalog(args) -> int:
    text = dumps_jsonl(build_catalog(_theory(args.theory)))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rigid-invariants", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list rigid pairs (or partitions) of a theory")
    p.add_argument("--theory", required=True)
    p.add_argument("--partitions-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("invariants", help="symbol, fingerprint, mu and tau of one pair")
    p.add_argument("--theory", required=True)
    p.add_argument("--pair", required=True, help="e.g. '[2^2,1^9];[]'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("classes", help="group a theory's pairs by invariant")
    p.add_argument("--theory", required=True)
    p.add_argument("--by", choices=("symbol", "fingerprint"), default="symbol")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("represent", help="representative from a symbol or fingerprint")
    p.add_argument("--theory", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--from-symbol")
    src.add_argument("--from-fingerprint")
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("verify", help="exhaustive symbol => fingerprint check")
    p.add_argument("--theory", default="all", help="'all' or family letters, e.g. BC")
    p.add_argument("--max-rank", type=int, default=6)
    p.add_argument("--strict", action="store_true", help="also fail on condition-(ii) deltas")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("duals", help="match B and C pairs of one rank")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--by", choices=("symbol", "fingerprint"), default="symbol")
    p.set_defaults(func=cmd_duals)

    p = sub.add_parser("catalog", help="write a theory's catalog as JSON Lines")
    p.add_argument("--theory", required=True)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except (FingerprintError, SymbolError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
