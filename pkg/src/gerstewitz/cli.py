"""Command-line interface.

Exit codes: 0 success, 1 a corpus example failed, 2 bad input, 3 infeasible,
4 unbounded below or infimum not attained, 5 no existence certificate.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .corpus import EXAMPLES, build_example, run_example
from .efficiency import DominationSet, eff_finite
from .errors import GerstewitzError
from .existence import RULE_TITLES, Verdict, existence_report
from .functional import DEFAULT_TOL, classify, format_float, phi
from .geometry import Orthant, TriBool
from .instance_io import InstanceError, load_instance, load_json, load_points, parse_point, parse_set
from .parameters import SweepSpec, sweep
from .solver import ProblemInstance, SolveStatus, solve

EXIT_OK = 0
EXIT_EXAMPLE_FAILED = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_UNBOUNDED = 4
EXIT_NO_CERTIFICATE = 5


def _fmt_point(y) -> str:
    return "(" + ", ".join(format_float(float(v)) for v in y) + ")"


def _resolve_instance(ref: str, args) -> ProblemInstance:
    """A JSON file path, or the id of a corpus example."""
    path = Path(ref)
    if path.exists():
        return load_instance(path, tol=args.tol, t_max=args.t_max, resolution=args.resolution)
    if ref in EXAMPLES:
        P = build_example(ref, tol=args.tol if args.tol is not None else DEFAULT_TOL)
        if args.t_max is not None:
            P = ProblemInstance(P.F, P.g.with_params(t_max=args.t_max), P.separation, P.name)
        return P
    raise InstanceError("instance", f"{ref!r} is neither a file nor an example id ({', '.join(EXAMPLES)})")


class _Output:
    """Writes to ``--out`` when given, stdout otherwise."""

    def __init__(self, path: str | None):
        self.path = path
        self.buf = io.StringIO()

    def __enter__(self):
        return self.buf

    def __exit__(self, *exc):
        text = self.buf.getvalue()
        if self.path:
            Path(self.path).write_text(text)
        else:
            sys.stdout.write(text)
        return False


def _say(args, *lines: str) -> None:
    if not args.quiet:
        for line in lines:
            print(line)


# -- commands -------------------------------------------------------------------------

def cmd_eval(args) -> int:
    P = _resolve_instance(args.instance, args)
    pts = []
    if args.points:
        pts.append(load_points(args.points, P.g.dim))
    for text in args.point or ():
        pts.append(parse_point(text, P.g.dim)[None, :])
    if not pts:
        raise InstanceError("points", "give a points file or at least one --point")
    Y = np.vstack(pts)
    with _Output(args.out) as out:
        w = csv.writer(out, lineterminator="\n")
        w.writerow([f"y{i + 1}" for i in range(P.g.dim)] + ["phi", "class", "certainty"])
        for y in Y:
            s = phi(P.g, y)
            w.writerow([format_float(v) for v in y] + [format_float(s.value), classify(P.g, y).value,
                                                       s.certainty_label])
    return EXIT_OK


def _solve_exit(status: SolveStatus) -> int:
    if status is SolveStatus.INFEASIBLE:
        return EXIT_INFEASIBLE
    if status in (SolveStatus.UNBOUNDED_BELOW, SolveStatus.INFIMUM_NOT_ATTAINED):
        return EXIT_UNBOUNDED
    return EXIT_OK


def cmd_solve(args) -> int:
    P = _resolve_instance(args.instance, args)
    r = solve(P)
    lines = [f"status: {r.status.value}"]
    if r.t_star is not None:
        lines.append(f"t*: {format_float(r.t_star)}")
    if r.status is SolveStatus.UNBOUNDED_BELOW:
        lines.append(f"witness: {_fmt_point(r.witness)} with phi = {format_float(r.witness_t)}")
    if r.status is SolveStatus.INFIMUM_NOT_ATTAINED:
        lines.append(f"infimum estimate: {format_float(r.inf_estimate)}")
        lines.append("evidence (y, t) per range doubling:")
        lines.extend(f"  {_fmt_point(y)}  {format_float(t)}" for y, t in r.evidence)
    if r.has_minimizers:
        lines.append(f"minimizers: {len(r.minimizers)}" + (" (sampled representation)" if not r.exact else ""))
        if r.cell_size is not None:
            lines.append(f"cell size: {_fmt_point(r.cell_size)}")
        if r.minimizers_bounded is not TriBool.TRUE:
            lines.append(f"minimizer set bounded: {r.minimizers_bounded}")
        if r.recession_direction is not None:
            lines.append(f"recession direction: {_fmt_point(r.recession_direction)}")
    lines.extend(f"note: {n}" for n in r.notes)
    _say(args, *lines)
    if r.has_minimizers:
        with _Output(args.out) as out:
            w = csv.writer(out, lineterminator="\n")
            w.writerow([f"y{i + 1}" for i in range(P.g.dim)])
            for y in r.minimizers:
                w.writerow([format_float(v) for v in y])
    return _solve_exit(r.status)


def render_report(rep) -> list[str]:
    head = rep.verdict.value + (f"({rep.rule})" if rep.rule else "")
    lines = [f"verdict: {head}"]
    for rule, check in rep.checks.items():
        lines.append(f"{rule} [{check.value}]: {RULE_TITLES[rule]}")
        for name, hyp in check.breakdown.items():
            note = f" - {hyp.note}" if hyp.note and hyp.note != name else ""
            lines.append(f"  [{hyp.value}] {name}{note}")
    return lines


def cmd_check(args) -> int:
    P = _resolve_instance(args.instance, args)
    rep = existence_report(P)
    with _Output(args.out) as out:
        out.write("\n".join(render_report(rep)) + "\n")
    return EXIT_OK if rep.verdict is Verdict.GUARANTEED else EXIT_NO_CERTIFICATE


_SWEEP_KEYS = {"a_mode", "a_index", "a_lo", "a_hi", "a_count", "a_points", "k_resolution", "k_points", "workers"}


def load_sweep_spec(path: str) -> SweepSpec:
    doc = load_json(path)
    if not isinstance(doc, dict):
        raise InstanceError("sweep", "expected a JSON object")
    unknown = set(doc) - _SWEEP_KEYS
    if unknown:
        raise InstanceError("sweep", f"unknown field(s) {sorted(unknown)}")
    for key in ("a_points", "k_points"):
        if key in doc:
            doc[key] = tuple(tuple(float(x) for x in row) for row in doc[key])
    return SweepSpec(**doc)


def cmd_sweep(args) -> int:
    P = _resolve_instance(args.instance, args)
    spec = load_sweep_spec(args.spec)
    rows = sweep(P.F, P.g.H, spec, tol=P.g.tol, t_max=P.g.t_max)
    l = P.g.dim
    with _Output(args.out) as out:
        w = csv.writer(out, lineterminator="\n")
        w.writerow([f"a{i + 1}" for i in range(l)] + [f"k{i + 1}" for i in range(l)] + ["status", "t_star"]
                   + [f"y{i + 1}" for i in range(l)])
        for row in rows:
            left = [format_float(v) for v in row.a] + [format_float(v) for v in row.k]
            t = "" if row.t_star is None else format_float(row.t_star)
            if len(row.minimizers):
                for y in row.minimizers:
                    w.writerow(left + [row.status, t] + [format_float(v) for v in y])
            else:
                w.writerow(left + [row.status, t] + [""] * l)
    return EXIT_OK


def _domination_set(spec: str, dim: int, exclude_zero: bool) -> DominationSet:
    if spec == "orthant":
        return DominationSet(Orthant(dim), exclude_zero)
    path = Path(spec)
    doc = load_json(path) if path.exists() else {"kind": "builtin", "name": spec}
    return DominationSet(parse_set(doc, dim, "D"), exclude_zero)


def cmd_eff(args) -> int:
    Y = load_points(args.points)
    D = _domination_set(args.domination, Y.shape[1], args.exclude_zero)
    E = eff_finite(Y, D)
    with _Output(args.out) as out:
        w = csv.writer(out, lineterminator="\n")
        w.writerow([f"y{i + 1}" for i in range(Y.shape[1])])
        for y in E:
            w.writerow([format_float(v) for v in y])
    return EXIT_OK


def cmd_examples(args) -> int:
    if args.action == "list":
        for ex in EXAMPLES.values():
            print(f"{ex.id:<18} {ex.description}")
        return EXIT_OK
    tol = args.tol if args.tol is not None else DEFAULT_TOL
    failed = 0
    ids = args.ids or list(EXAMPLES)
    for ex_id in ids:
        if ex_id not in EXAMPLES:
            raise InstanceError("examples", f"unknown example {ex_id!r}")
        o = run_example(ex_id, tol)
        failed += not o.passed
        print(f"{'PASS' if o.passed else 'FAIL'} {ex_id}: {o.result.status.value}")
        if not args.quiet or not o.passed:
            for name, ok, detail in o.checks:
                print(f"    [{'ok' if ok else 'FAIL'}] {name}: {detail}")
    print(f"{len(ids) - failed}/{len(ids)} examples passed")
    return EXIT_OK if failed == 0 else EXIT_EXAMPLE_FAILED


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="bisection tolerance (default 1e-9)")
    common.add_argument("--t-max", type=float, default=None, help="bisection search bound (default 1e12)")
    common.add_argument("--resolution", type=int, default=None, help="points per axis for grid feasible sets")
    common.add_argument("--out", default=None, help="write CSV or report output to this file")
    common.add_argument("--quiet", action="store_true", help="suppress explanatory output")

    p = argparse.ArgumentParser(prog="gerstewitz", description="Scalarization with Gerstewitz functionals.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common], help="evaluate phi at points")
    s.add_argument("instance", help="instance JSON file or example id")
    s.add_argument("points", nargs="?", help="JSON or CSV points file")
    s.add_argument("--point", action="append", help="a point such as 2,0; write --point=-1,0 for a leading minus (repeatable)")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("solve", parents=[common], help="minimise phi over F")
    s.add_argument("instance")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("check", parents=[common], help="existence report")
    s.add_argument("instance")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("sweep", parents=[common], help="solve over a grid of (a, k)")
    s.add_argument("instance")
    s.add_argument("spec", help="sweep specification JSON")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("eff", parents=[common], help="efficient points of a finite set")
    s.add_argument("points")
    s.add_argument("--domination", "-D", default="orthant",
                   help="'orthant', a builtin set name, or a JSON set file (default orthant)")
    s.add_argument("--exclude-zero", action="store_true")
    s.set_defaults(func=cmd_eff)

    s = sub.add_parser("examples", parents=[common], help="builtin example corpus")
    s.add_argument("action", choices=["list", "run-all"])
    s.add_argument("ids", nargs="*", help="restrict run-all to these example ids")
    s.set_defaults(func=cmd_examples)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GerstewitzError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
