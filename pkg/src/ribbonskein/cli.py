"""Command-line entry point.

Exit codes: 0 success, 1 invalid input, 2 a verification check failed.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .cabling import evaluate_closed
from .diagram import DiagramError, GraphDiagram, parse_diagram, stack
from .skein import reduce, y_basis
from .tl import jones_wenzl
from . import verify

EXIT_OK, EXIT_INPUT, EXIT_CHECK = 0, 1, 2


class InputError(Exception):
    pass


def _read(source: str, inline: bool) -> GraphDiagram:
    if inline:
        text, where = source, "<inline>"
    elif source == "-":
        text, where = sys.stdin.read(), "<stdin>"
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"{source}: {exc.strerror}") from exc
        where = source
    try:
        return parse_diagram(text)
    except DiagramError as exc:
        loc = f"{where}:{exc.line}" if exc.line is not None else where
        raise InputError(f"{loc}: {exc.message}") from exc


def _emit(lines: List[str], records: List[dict], fmt: str) -> None:
    if fmt == "records":
        for r in records:
            print(json.dumps(r, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _emit_yelement(y, fmt: str) -> None:
    items = sorted(y.terms.items(), key=lambda t: t[0].blocks)
    if not items:
        _emit(["0"], [{"coefficient": "0", "normal_form": None}], fmt)
        return
    _emit([f"{c}  {nf}" for nf, c in items],
          [{"coefficient": str(c), "normal_form": str(nf)} for nf, c in items], fmt)


def cmd_eval(args) -> int:
    g = _read(args.source, args.inline)
    if g.n != 0:
        raise InputError(f"eval needs a closed diagram (n = 0), got n = {g.n}")
    value = evaluate_closed(g)
    _emit([str(value)], [{"value": str(value)}], args.format)
    return EXIT_OK


def cmd_reduce(args) -> int:
    g = _read(args.source, args.inline)
    _emit_yelement(reduce(g, crossing_cap=args.crossing_cap), args.format)
    return EXIT_OK


def cmd_mul(args) -> int:
    top = _read(args.top, args.inline)
    bottom = _read(args.bottom, args.inline)
    try:
        g = stack(top, bottom)
    except DiagramError as exc:
        raise InputError(str(exc)) from exc
    _emit_yelement(reduce(g, crossing_cap=args.crossing_cap), args.format)
    return EXIT_OK


def cmd_basis(args) -> int:
    basis = y_basis(args.n)
    _emit([str(nf) for nf in basis],
          [{"index": i, "normal_form": str(nf)} for i, nf in enumerate(basis)], args.format)
    return EXIT_OK


def cmd_jw(args) -> int:
    f = jones_wenzl(args.n, args.k)
    _emit([str(f)], [{"n": args.n, "k": args.k, "value": str(f)}], args.format)
    return EXIT_OK


def _reports(which: str, seed: int, count: int):
    if which in ("rules", "all"):
        yield verify.verify_rules()
    if which in ("y2", "all"):
        yield verify.verify_y2()
    if which in ("y3", "all"):
        yield verify.verify_y3()
    if which in ("inject", "all"):
        yield verify.verify_injectivity()
    if which in ("moves", "all"):
        yield verify.verify_moves()
    if which in ("oracle", "all"):
        yield verify.oracle_corpus(seed, count)


def cmd_verify(args) -> int:
    if args.count < 1:
        raise InputError("--count must be at least 1")
    ok = True
    for rep in _reports(args.which, args.seed, args.count):
        print(rep.records() if args.format == "records" else rep.text())
        ok = ok and rep.ok
    return EXIT_OK if ok else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ribbonskein", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("text", "records"), default="text",
                   help="plain text or one JSON record per output line")
    # accept --format after the subcommand too
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "records"), default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        return sub.add_parser(name, help=help_text, parents=[common])

    def diagram_cmd(name, help_text):
        s = add(name, help_text)
        s.add_argument("-e", "--inline", action="store_true", help="treat arguments as diagram text")
        s.add_argument("--crossing-cap", type=int, default=12)
        return s

    s = diagram_cmd("eval", "closed-diagram invariant via the cabling map")
    s.add_argument("source", help="diagram file, '-' for stdin")
    s.set_defaults(func=cmd_eval)
    s = diagram_cmd("reduce", "rewrite a diagram into normal forms")
    s.add_argument("source")
    s.set_defaults(func=cmd_reduce)
    s = diagram_cmd("mul", "stack TOP over BOTTOM and reduce")
    s.add_argument("top")
    s.add_argument("bottom")
    s.set_defaults(func=cmd_mul)
    s = add("basis", "normal-form basis of Y_n")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_basis)
    s = add("jw", "Jones-Wenzl projector f_k in TL_n")
    s.add_argument("n", type=int)
    s.add_argument("k", type=int)
    s.set_defaults(func=cmd_jw)
    s = add("verify", "run a verification report")
    s.add_argument("which", choices=("y2", "y3", "inject", "moves", "oracle", "rules", "all"))
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--count", type=int, default=100)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
