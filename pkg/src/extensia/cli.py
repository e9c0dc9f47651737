"""Command-line front end.

Exit codes: 0 success, 1 usage or I/O problem, 2 syntax or type error,
3 program outside the supported fragment, 4 budget or level bound
exhausted, 5 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import truth
from .engine import EngineConfig, auto_kappa, collapse, least_model
from .errors import (
    ExtensiaError,
    FrontEndError,
    HTypeError,
    ResourceError,
    RestrictionError,
)
from .oracle import brute_min_model, default_budget, ground, wfs_alternating_fixpoint
from .semantics import Interpretation, ProgramSemantics
from .syntax import compile_surface, parse_core, parse_expr, parse_surface, pretty, typecheck
from .syntax.typecheck import annotate
from .syntax.types import O

EXIT_OK, EXIT_USAGE, EXIT_FRONTEND, EXIT_RESTRICTION, EXIT_RESOURCE, EXIT_INTERNAL = range(6)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _kappa(text: str):
    if text == "auto":
        return None
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a positive integer or 'auto'") from None
    if k < 1:
        raise argparse.ArgumentTypeError("kappa must be at least 1")
    return k


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="extensia", description="Minimum infinite-valued models of higher-order programs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, kappa=True):
        p.add_argument("file", help="program text (surface syntax unless --core)")
        p.add_argument("--core", action="store_true", help="input is in core syntax")
        p.add_argument("--wadge", action="store_true", help="rewrite predicate constants in clause heads")
        if kappa:
            p.add_argument("--kappa", type=_kappa, default=None, metavar="N|auto", help="bound on truth levels")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("check", help="parse, compile and type-check")
    common(p, kappa=False)
    p.add_argument("--print-core", action="store_true", help="print the compiled core program")

    p = sub.add_parser("solve", help="compute the minimum model")
    common(p)
    p.add_argument("--collapse", action="store_true", help="print True/False/Undef")
    p.add_argument("--trace", action="store_true", help="log stage iterations on stderr")
    p.add_argument("--pred", action="append", default=[], help="only show these predicates")

    p = sub.add_parser("query", help="evaluate a closed expression in the minimum model")
    common(p)
    p.add_argument("expr", help="core expression, e.g. 'band (\\X:i. X = sally \\/ X = george)'")
    p.add_argument("--collapse", action="store_true")
    p.add_argument("--table", action="store_true", help="allow predicate-typed queries, printed as tables")

    p = sub.add_parser("wfs", help="well-founded model of a first-order normal program")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("oracle-min", help="minimum model by brute-force enumeration")
    common(p)
    p.add_argument("--budget", type=int, default=None, help="maximum number of interpretations")
    p.add_argument("--collapse", action="store_true")
    p.add_argument("--pred", action="append", default=[])
    return parser


def _load(args):
    text = Path(args.file).read_text(encoding="utf-8")
    if args.core:
        return typecheck(parse_core(text))
    return typecheck(compile_surface(parse_surface(text), wadge_mode=args.wadge))


def _cell_label(m: Interpretation, p: str, k: int) -> str:
    return p if m.types[p] == O else f"{p}{m.cell_key(p, k)}"


def _model_payload(m: Interpretation, preds: list[str]) -> tuple[dict, dict]:
    model, collapsed = {}, {}
    for p in preds:
        model[p] = {m.cell_key(p, k): v.to_json() for k, v in enumerate(m.tables[p])}
        collapsed[p] = {m.cell_key(p, k): truth.label(v) for k, v in enumerate(m.tables[p])}
    return model, collapsed


def _show_model(m: Interpretation, args, out, stats: dict) -> None:
    preds = args.pred or list(m.types)
    unknown = [p for p in preds if p not in m.types]
    if unknown:
        raise HTypeError(f"unknown predicate(s): {', '.join(unknown)}")
    if args.json:
        model, collapsed = _model_payload(m, preds)
        json.dump({"model": model, "collapsed": collapsed, "stats": stats}, out, indent=2, sort_keys=False)
        out.write("\n")
        return
    shown = collapse(m) if args.collapse else m
    for p in preds:
        for k, v in enumerate(shown.tables[p]):
            value = truth.label(v) if args.collapse else str(v)
            out.write(f"{_cell_label(m, p, k)}: {value}\n")


def cmd_check(args, out) -> int:
    program = _load(args)
    if args.print_core:
        out.write(pretty(program))
        return EXIT_OK
    sig = program.signature
    if args.json:
        json.dump({"predicates": {p: str(t) for p, t in sig.predicates.items()},
                   "individuals": list(sig.individuals), "clauses": len(program.clauses)}, out, indent=2)
        out.write("\n")
        return EXIT_OK
    out.write(f"ok: {len(program.clauses)} clauses, {len(sig.predicates)} predicates\n")
    for p, t in sig.predicates.items():
        out.write(f"  {p} : {t}\n")
    return EXIT_OK


def cmd_solve(args, out) -> int:
    program = _load(args)
    result = least_model(program, EngineConfig(kappa_max=args.kappa, trace=args.trace))
    if args.trace:
        for event in result.trace:
            print(event, file=sys.stderr)
    stats = {"stages": result.stages_used, "cells": result.cells, "kappa": result.kappa,
             "complete": result.complete}
    _show_model(result.model, args, out, stats)
    return EXIT_OK


def cmd_query(args, out) -> int:
    program = _load(args)
    expr = annotate(parse_expr(args.expr, program.signature), program.signature)
    if expr.type != O and not args.table:
        raise HTypeError(f"query has type {expr.type}; pass --table to print predicate-typed results")
    result = least_model(program, EngineConfig(kappa_max=args.kappa))
    sem = ProgramSemantics(program, result.model.domain)
    value = sem.evaluate(expr, result.model)
    dom = result.model.domain
    if expr.type == O:
        text = truth.label(value) if args.collapse else str(value)
        payload = {"value": truth.label(value) if args.collapse else value.to_json()}
    else:
        text = dom.render(value, expr.type)
        payload = {"value": dom.to_json(value, expr.type)}
    if args.json:
        json.dump(payload, out)
        out.write("\n")
    else:
        out.write(text + "\n")
    return EXIT_OK


def cmd_wfs(args, out) -> int:
    sp = parse_surface(Path(args.file).read_text(encoding="utf-8"))
    compile_surface(sp)  # reports type errors before grounding
    labels = wfs_alternating_fixpoint(ground(sp))
    if args.json:
        json.dump(labels, out, indent=2)
        out.write("\n")
    else:
        for atom, label in labels.items():
            out.write(f"{atom}: {label}\n")
    return EXIT_OK


def cmd_oracle_min(args, out) -> int:
    program = _load(args)
    kappa = args.kappa
    if kappa is None:
        kappa = auto_kappa(program)
    budget = args.budget if args.budget is not None else default_budget()
    m = brute_min_model(program, kappa, budget)
    stats = {"kappa": kappa, "cells": m.cell_count(), "models_budget": budget}
    _show_model(m, args, out, stats)
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "solve": cmd_solve,
    "query": cmd_query,
    "wfs": cmd_wfs,
    "oracle-min": cmd_oracle_min,
}


def exit_code_for(err: ExtensiaError) -> int:
    if isinstance(err, FrontEndError):
        return EXIT_FRONTEND
    if isinstance(err, RestrictionError):
        return EXIT_RESTRICTION
    if isinstance(err, ResourceError):
        return EXIT_RESOURCE
    # invariant violations and misuse of the domain operations alike
    return EXIT_INTERNAL


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except OSError as err:
        print(f"extensia: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ExtensiaError as err:
        print(f"extensia: {type(err).__name__}: {err}", file=sys.stderr)
        return exit_code_for(err)


def main_entry() -> None:
    sys.exit(main())


__all__ = ["build_parser", "exit_code_for", "main", "main_entry"]

if __name__ == "__main__":
    main_entry()
