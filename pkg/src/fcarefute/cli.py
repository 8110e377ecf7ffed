"""Command-line interface.

Exit codes: 0 success, 1 when ``refute``/``fuzz`` find a non-SOUND verdict,
2 for input or usage errors. Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .context import ContractError, FormalConcept, FormalContext
from .cxt import CxtParseError, parse_cxt, write_cxt
from .graph import build_graph, to_dot
from .harness import (
    FuzzConfig,
    RefutationReport,
    Verdict,
    builtin_case,
    check_alg1,
    check_alg2,
    check_alg3,
    check_all,
    fuzz,
)
from .lattice import enumerate_bruteforce, enumerate_lectic, partition_fst
from .pipeline import classify_pawlak, clarify, reduce, run_pipeline
from .replay import Mode, replay_alg1, replay_alg2, replay_alg3


class InputError(Exception):
    pass


def _load(path: str) -> FormalContext:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return parse_cxt(text)
    except CxtParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _attr(ctx: FormalContext, label: str) -> int:
    try:
        return ctx.attribute_index(label)
    except ContractError as exc:
        raise InputError(str(exc)) from None


def _concept_json(ctx: FormalContext, c: FormalConcept) -> dict[str, list[str]]:
    return {"extent": list(ctx.object_names(c.extent)), "intent": list(ctx.attribute_names(c.intent))}


def _dump(obj: Any) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def cmd_concepts(args: argparse.Namespace) -> int:
    ctx = _load(args.file)
    enumerate_ = enumerate_bruteforce if args.algo == "brute" else enumerate_lectic
    concepts = enumerate_(ctx)
    if args.json:
        _dump([_concept_json(ctx, c) for c in concepts])
    else:
        for c in concepts:
            ext = ", ".join(ctx.object_names(c.extent))
            itt = ", ".join(ctx.attribute_names(c.intent))
            sys.stdout.write(f"{{{ext}}} | {{{itt}}}\n")
    return 0


def cmd_partition(args: argparse.Namespace) -> int:
    ctx = _load(args.file)
    part = partition_fst(ctx, _attr(ctx, args.attr))
    _dump(
        {
            "pivot": args.attr,
            "F": [_concept_json(ctx, c) for c in part.F],
            "S": [_concept_json(ctx, c) for c in part.S],
            "T": [_concept_json(ctx, c) for c in part.T],
        }
    )
    return 0


def cmd_clarify(args: argparse.Namespace) -> int:
    ctx, mapping = clarify(_load(args.file))
    if args.json:
        _dump({"clarification_map": mapping, "context": write_cxt(ctx).splitlines()})
    else:
        sys.stdout.write(write_cxt(ctx))
    return 0


def cmd_reduce(args: argparse.Namespace) -> int:
    ctx, removed = reduce(_load(args.file))
    if args.json:
        _dump({"reduced_away": list(removed), "context": write_cxt(ctx).splitlines()})
    else:
        sys.stdout.write(write_cxt(ctx))
    return 0


def cmd_pipeline(args: argparse.Namespace) -> int:
    _dump(run_pipeline(_load(args.file)).to_json())
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    _dump({k: v.value for k, v in classify_pawlak(_load(args.file)).items()})
    return 0


def cmd_graph(args: argparse.Namespace) -> int:
    g = build_graph(_load(args.file))
    if args.dot:
        sys.stdout.write(to_dot(g))
        return 0
    ctx = g.context
    _dump(
        {
            "pre_weights": {
                ctx.attribute_labels[a]: list(ctx.object_names(w)) for a, w in enumerate(g.pre_weights)
            },
            "arcs": [[ctx.attribute_labels[y], ctx.attribute_labels[x]] for y, x in sorted(g.arcs)],
            "bi_arcs": [list(ctx.attribute_names(sum(1 << v for v in p))) for p in sorted(map(sorted, g.bi_arcs))],
        }
    )
    return 0


def cmd_replay(args: argparse.Namespace) -> int:
    ctx = _load(args.file)
    pivot = _attr(ctx, args.attr)
    g = build_graph(ctx)
    if args.alg == 3:
        if args.mode is None:
            raise InputError("--mode drop|keep is required for --alg 3")
        outcome = replay_alg3(g, pivot, _MODES[args.mode])
    elif args.alg == 2:
        outcome = replay_alg2(g, pivot)
    else:
        outcome = replay_alg1(g, pivot)
    if args.trace:
        sys.stdout.write(outcome.trace.to_text())
    else:
        _dump(outcome.to_json(ctx))
    return 0


def _refute_exit(reports: list[RefutationReport]) -> int:
    return 1 if any(r.verdict is not Verdict.SOUND for r in reports) else 0


def cmd_refute(args: argparse.Namespace) -> int:
    if args.builtin:
        ctx, pivot = builtin_case(args.builtin)
        if args.builtin == "cex1":
            reports = [check_alg1(ctx, pivot)]
        elif args.builtin == "cex2":
            reports = [check_alg2(ctx, pivot)]
        else:
            reports = [check_alg3(ctx, pivot, mode) for mode in Mode]
    else:
        if not args.file or not args.attr:
            raise InputError("refute needs --builtin NAME or --file FILE --attr NAME")
        ctx = _load(args.file)
        reports = check_all(ctx, _attr(ctx, args.attr))
    if args.text:
        sys.stdout.write("".join(r.summary() + "\n" for r in reports))
    else:
        _dump([r.to_json() for r in reports])
    return _refute_exit(reports)


def cmd_fuzz(args: argparse.Namespace) -> int:
    try:
        cfg = FuzzConfig(
            seed=args.seed,
            iterations=args.iters,
            max_objects=args.max_objects,
            max_attributes=args.max_attrs,
            density=args.density,
            require_nonempty_rows_cols=args.nonempty,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    reports = fuzz(cfg)
    if args.text:
        sys.stdout.write("".join(r.summary() + "\n" for r in reports))
    else:
        _dump([r.to_json() for r in reports])
    return _refute_exit(reports)


_MODES = {"drop": Mode.DROP_ATTRIBUTE, "keep": Mode.KEEP_ATTRIBUTE}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fcarefute", description="Formal concept analysis and replay-based refutation tools."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("concepts", help="enumerate all formal concepts")
    p.add_argument("file")
    p.add_argument("--algo", choices=["brute", "lectic"], default="lectic")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_concepts)

    p = sub.add_parser("partition", help="split the core concepts by a pivot attribute")
    p.add_argument("file")
    p.add_argument("--attr", required=True)
    p.set_defaults(func=cmd_partition)

    for name, func, help_ in [
        ("clarify", cmd_clarify, "remove duplicate attribute columns"),
        ("reduce", cmd_reduce, "remove reducible attributes of a clarified context"),
    ]:
        p = sub.add_parser(name, help=help_)
        p.add_argument("file")
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("pipeline", help="run the three-phase attribute reduction")
    p.add_argument("file")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("classify", help="Pawlak class of every attribute")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("graph", help="pre-weighted relevant graph")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("replay", help="replay one of the three enumeration algorithms")
    p.add_argument("file")
    p.add_argument("--alg", type=int, choices=[1, 2, 3], required=True)
    p.add_argument("--attr", required=True)
    p.add_argument("--mode", choices=sorted(_MODES))
    p.add_argument("--trace", action="store_true", help="print the text trace instead of JSON")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("refute", help="judge replays against the exact partition")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", choices=["cex1", "cex2", "cex3"])
    src.add_argument("--file")
    p.add_argument("--attr")
    p.add_argument("--text", action="store_true")
    p.set_defaults(func=cmd_refute)

    p = sub.add_parser("fuzz", help="search random contexts for failing replays")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--iters", type=int, required=True)
    p.add_argument("--max-objects", type=int, default=8)
    p.add_argument("--max-attrs", type=int, default=6)
    p.add_argument("--density", type=float, default=0.4)
    p.add_argument("--nonempty", action="store_true", help="force a cross into empty rows and columns")
    p.add_argument("--text", action="store_true")
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ContractError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

