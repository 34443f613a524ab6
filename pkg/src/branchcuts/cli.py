"""Command-line front end: ``branchcuts <command> EXPR [options]``."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .catalog import ARCCOT_CONVENTIONS, SYMBOLS, Conventions, catalog, defining_cut
from .cuts import DEFAULT_WINDOW
from .engine import APPROACHES, EngineConfig, branch_cuts
from .errors import BranchCutError, ParseError, UnknownFunction
from .expr import FUNCTIONS, parse
from .plotting import Window, plot2d, plot3d, plot32d
from .spurious import ClassifyConfig, classify

GRAMMAR = f"""expression grammar:
  expr     := term (('+' | '-') term)*
  term     := '-' term | factor (('*' | '/') factor)*
  factor   := base ('^' exponent)?
  base     := z | number | I | '(' expr ')' | func '(' expr ')'
  number   := integer ('/' integer)?
  exponent := ['-'] number | '(' ['-'] number ')'
  func     := {' | '.join(FUNCTIONS)}
examples: "ln(z^2)", "ln(-sqrt(z))", "2*arcsin(z) - arcsin(2*z*sqrt(1-z^2))", "z^(1/3)"
"""

EXIT_OK, EXIT_USAGE, EXIT_ENGINE = 0, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n{GRAMMAR}")
        raise SystemExit(EXIT_USAGE)


def _window_arg(text: str) -> tuple:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad window {text!r}") from None
    if len(vals) != 4 or not (vals[0] < vals[1] and vals[2] < vals[3]):
        raise argparse.ArgumentTypeError("window must be x0,x1,y0,y1 with x0<x1 and y0<y1")
    return vals


def _grid_arg(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    try:
        n = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from None
    if len(n) == 1:
        n = n * 2
    if len(n) != 2 or min(n) < 2:
        raise argparse.ArgumentTypeError("grid must be N or NxM with N, M >= 2")
    return n[0], n[1]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="branchcuts", description="Branch cuts of elementary complex functions.", epilog=GRAMMAR,
                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, expr=True):
        if expr:
            sp.add_argument("expr", help="expression in z")
        sp.add_argument("--window", type=_window_arg, default=DEFAULT_WINDOW, help="x0,x1,y0,y1 (default -2,2,-2,2)")
        sp.add_argument("--arccot-convention", choices=ARCCOT_CONVENTIONS, default="recip")
        sp.add_argument("--out", help="write output to FILE instead of stdout")

    def engine(sp):
        sp.add_argument("--approach", choices=APPROACHES, default="auto")

    def probes(sp):
        sp.add_argument("--eps", type=float, default=1e-6)
        sp.add_argument("--threshold", type=float, default=None)
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("analyze", help="print the branch cuts of an expression")
    common(sp)
    engine(sp)
    sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("catalog", help="print defining cuts of the function symbols")
    sp.add_argument("symbol", nargs="?", choices=SYMBOLS)
    sp.add_argument("--arccot-convention", choices=ARCCOT_CONVENTIONS, default="recip")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--out")

    sp = sub.add_parser("classify", help="probe each cut for a jump")
    common(sp)
    engine(sp)
    probes(sp)
    sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("plot2d", help="SVG diagram of the classified cuts")
    common(sp)
    engine(sp)
    probes(sp)

    for name, text in (("plot3d", "CSV mesh x,y,re,im,mask"), ("plot32d", "top-down PPM with edge overlay")):
        sp = sub.add_parser(name, help=text)
        common(sp)
        sp.add_argument("--grid", type=_grid_arg, default=(200, 200), help="N or NxM nodes (default 200)")
        sp.add_argument("--part", choices=("re", "im"), default="im")
        if name == "plot32d":
            sp.add_argument("--threshold", type=float, default=0.5, help="edge jump threshold")
    return p


def _emit(data, out: str | None) -> None:
    if isinstance(data, str):
        if out:
            with open(out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(data)
        else:
            sys.stdout.write(data)
    else:
        if out:
            with open(out, "wb") as fh:
                fh.write(data)
        else:
            sys.stdout.flush()
            sys.stdout.buffer.write(data)


def _parse_expr(text: str):
    try:
        return parse(text)
    except (ParseError, UnknownFunction) as exc:
        raise UsageError(str(exc)) from exc


def _engine_config(args) -> EngineConfig:
    return EngineConfig(
        approach=getattr(args, "approach", "auto"),
        conventions=Conventions(args.arccot_convention),
        window=args.window,
    )


def _classify_config(args) -> ClassifyConfig:
    return ClassifyConfig(
        eps=args.eps,
        threshold=1e-3 if args.threshold is None else args.threshold,
        window=args.window,
        seed=args.seed,
        conventions=Conventions(args.arccot_convention),
    )


def _classify_text(cuts, verdicts) -> str:
    lines = [str(cuts.source)]
    if not cuts.cuts:
        lines.append("no branch cuts")
    for i, (c, v) in enumerate(zip(cuts, verdicts)):
        lines.append(f"[{i}] {c.describe()}")
        lines.append(f"    verdict: {v.verdict} ({v.reason})")
        if v.evidence:
            lines.append(f"    {'point':>24}  {'normal':>16}  {'jump':>12}  component")
            for r in v.evidence:
                pt = f"{r.point.real:+.6f}{r.point.imag:+.6f}i"
                nm = f"{r.normal.real:+.3f}{r.normal.imag:+.3f}i"
                lines.append(f"    {pt:>24}  {nm:>16}  {r.magnitude:12.6g}  {r.component}")
    return "\n".join(lines) + "\n"


def run(args) -> int:
    cmd = args.command
    if cmd == "catalog":
        conv = Conventions(args.arccot_convention)
        entries = [defining_cut(args.symbol, conv)] if args.symbol else catalog(conv)
        if args.format == "json":
            _emit(json.dumps([e.to_dict() for e in entries], indent=2, allow_nan=False) + "\n", args.out)
        else:
            _emit("".join(e.to_text() + "\n" for e in entries), args.out)
        return EXIT_OK

    e = _parse_expr(args.expr)
    window = args.window
    if cmd == "analyze":
        cuts = branch_cuts(e, _engine_config(args))
        text = cuts.to_json() + "\n" if args.format == "json" else cuts.describe() + "\n"
        _emit(text, args.out)
    elif cmd == "classify":
        cuts, verdicts = classify(e, branch_cuts(e, _engine_config(args)), _classify_config(args))
        if args.format == "json":
            d = cuts.to_dict()
            d["verdicts"] = [v.to_dict() for v in verdicts]
            _emit(json.dumps(d, indent=2, allow_nan=False) + "\n", args.out)
        else:
            _emit(_classify_text(cuts, verdicts), args.out)
    elif cmd == "plot2d":
        cuts, _ = classify(e, branch_cuts(e, _engine_config(args)), _classify_config(args))
        _emit(plot2d(cuts, Window(*window)), args.out)
    elif cmd == "plot3d":
        surface = plot3d(e, Window(*window, *args.grid), Conventions(args.arccot_convention))
        _emit(surface.to_csv(), args.out)
        if args.out:
            v = surface.part(args.part)[~surface.mask]
            lo, hi = (float(v.min()), float(v.max())) if v.size else (np.nan, np.nan)
            print(f"{args.part} range [{lo:.6g}, {hi:.6g}], {int(surface.mask.sum())} masked nodes")
    elif cmd == "plot32d":
        data = plot32d(e, Window(*window, *args.grid), args.part, Conventions(args.arccot_convention), args.threshold)
        _emit(data, args.out)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return run(args)
    except UsageError as exc:
        sys.stderr.write(f"branchcuts: error: {exc}\n{GRAMMAR}")
        return EXIT_USAGE
    except (BranchCutError, ValueError) as exc:
        sys.stderr.write(f"branchcuts: {type(exc).__name__}: {exc}\n")
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
