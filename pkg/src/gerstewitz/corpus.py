"""Builtin example corpus and seeded random instance families."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .existence import ExistenceReport, Verdict, existence_report, separation_boundedness
from .feasible import BuiltinCurve, FinitePoints, GridRegion
from .functional import GerstewitzFunctional
from .geometry import BuiltinSet, GeneratorCone, Halfspaces, Orthant, TriBool
from .solver import ProblemInstance, Separation, SolveResult, SolveStatus, solve

DEFAULT_SEED = 42
OPTIMAL_LIKE = (SolveStatus.OPTIMAL, SolveStatus.APPROXIMATE_OPTIMAL)
RAY_TOL = 1e-6


def seed_from_env() -> int:
    raw = os.environ.get("GW_SEED", "")
    return int(raw) if raw.strip() else DEFAULT_SEED


def rng_from_env(offset: int = 0) -> np.random.Generator:
    return np.random.default_rng(seed_from_env() + offset)


def triangle_points(step: float = 0.05) -> np.ndarray:
    """Grid points of ``{0 <= y2 <= y1 <= 1}``; indices keep the grid exact."""
    n = int(round(1.0 / step))
    return np.array([(i * step, j * step) for i in range(n + 1) for j in range(i + 1)], dtype=float)


EX615_GENERATORS = ((2.0, 0.0, -1.0), (0.0, 2.0, -1.0), (-1.0, 0.0, 2.0))
SEP_CONE = Halfspaces([[-1.0, -1.0]], [0.0])


def ex311(tol):
    return ProblemInstance(FinitePoints(triangle_points()), GerstewitzFunctional([-1, 0], Orthant(2), [1, 1], tol=tol),
                           name="ex311")


def ex613(tol):
    H = BuiltinSet("halfplane_x_2d")
    return ProblemInstance(BuiltinCurve("hyperbola_branch_ex613"), GerstewitzFunctional([0, 0], H, [1, 1], tol=tol),
                           name="ex613")


def ex614(tol):
    H = BuiltinSet("hyperbola_epi_2d")
    return ProblemInstance(BuiltinCurve("xaxis_ex614"), GerstewitzFunctional([0, 0], H, [1, 1], tol=tol), name="ex614")


def _ex615(a, name):
    def build(tol):
        g = GerstewitzFunctional(a, GeneratorCone(EX615_GENERATORS), [1, 1, 1], tol=tol)
        return ProblemInstance(BuiltinCurve("plane_curve_ex615"), g, name=name)
    return build


def _ex616(a, name):
    def build(tol):
        g = GerstewitzFunctional(a, Orthant(3), [1, 1, 1], tol=tol)
        return ProblemInstance(BuiltinCurve("plane_curve_ex616"), g, name=name)
    return build


def ex617(tol, a=(1.0, 0.0)):
    g = GerstewitzFunctional(a, BuiltinSet("parabola_epi_2d"), [0, 1], tol=tol)
    return ProblemInstance(BuiltinCurve("parabola_arc_ex617"), g, name="ex617")


def _ex618(a, name):
    def build(tol):
        return ProblemInstance(BuiltinCurve("orthant_ex618"), GerstewitzFunctional(a, Orthant(2), [1, 1], tol=tol),
                               name=name)
    return build


def shifted_hyperbola(tol):
    g = GerstewitzFunctional([0, 0], BuiltinSet("shifted_hyperbola_2d"), [1, 1], tol=tol)
    sep = Separation(SEP_CONE, np.zeros(2), np.zeros(2))
    return ProblemInstance(BuiltinCurve("wedge_sep"), g, separation=sep, name="shifted-hyperbola")


# -- expectations ---------------------------------------------------------------------

Check = tuple[str, bool, str]


def _status_in(r: SolveResult, allowed) -> Check:
    ok = r.status in allowed
    return ("status", ok, f"{r.status.value} (expected {' or '.join(s.value for s in allowed)})")


def _not_certified(rep: ExistenceReport) -> Check:
    ok = rep.verdict is not Verdict.GUARANTEED
    return ("no certificate", ok, rep.verdict.value + (f"({rep.rule})" if rep.rule else ""))


def _certified(rep: ExistenceReport, rule: str) -> Check:
    ok = rep.verdict is Verdict.GUARANTEED and rep.rule == rule
    return ("certificate", ok, rep.verdict.value + (f"({rep.rule})" if rep.rule else "") + f", expected {rule}")


def _unique_minimizer(r: SolveResult, point, tol: float) -> Check:
    m = r.minimizers
    ok = r.has_minimizers and bool(np.all(np.max(np.abs(m - np.asarray(point)), axis=1) <= tol))
    return ("unique minimizer", ok, f"{len(m)} minimizer(s), max deviation "
            f"{float(np.max(np.abs(m - np.asarray(point)))) if len(m) else math.nan:.3g} from {tuple(point)}")


def ray_distance(Y: np.ndarray, origin, direction) -> np.ndarray:
    """Euclidean distance of rows of ``Y`` to ``{origin + s d : s >= 0}``."""
    o = np.asarray(origin, float)
    d = np.asarray(direction, float)
    s = np.clip((Y - o) @ d / (d @ d), 0.0, None)
    return np.linalg.norm(Y - o - s[:, None] * d, axis=1)


def check_ex311(P, r, rep):
    return [
        _status_in(r, (SolveStatus.OPTIMAL,)),
        ("t* = 1", r.t_star is not None and abs(r.t_star - 1.0) <= 1e-9, f"t* = {r.t_star}"),
        _unique_minimizer(r, (0.0, 0.0), 1e-9),
        _certified(rep, "R-pointed-cone"),
    ]


def _check_no_optimum(P, r, rep):
    return [_status_in(r, (SolveStatus.INFIMUM_NOT_ATTAINED,)), _not_certified(rep)]


def check_ex613(P, r, rep):
    line = rep.checks.get("R-boundedbelow-lines")
    named = line is not None and "direction (0, 1)" in line.breakdown["no axis lines in H"].note
    return _check_no_optimum(P, r, rep) + [("line (0,1) named", named, line.breakdown["no axis lines in H"].note
                                            if line else "rule not evaluated")]


def check_ex614(P, r, rep):
    line = rep.checks.get("R-boundedbelow-lines")
    v = line.breakdown["F bounded below"].value if line else TriBool.UNKNOWN
    return _check_no_optimum(P, r, rep) + [("F not bounded below", v is TriBool.FALSE, f"F bounded below: {v}")]


def check_ex615b(P, r, rep):
    out = [_status_in(r, OPTIMAL_LIKE)]
    if r.has_minimizers:
        d = ray_distance(r.minimizers, (1.0, -1.0, -0.5), (0.0, -2.0, 1.0))
        out.append(("minimizers on ray", bool(np.all(d <= RAY_TOL)), f"max distance {float(d.max()):.3g}"))
        out.append(("minimizer set unbounded", r.minimizers_bounded is TriBool.FALSE,
                    f"bounded flag {r.minimizers_bounded}"))
    return out


def check_ex616b(P, r, rep):
    out = [_status_in(r, OPTIMAL_LIKE)]
    if r.has_minimizers:
        M = r.minimizers
        dev = np.maximum.reduce([np.abs(M[:, 0] - 1.0), np.clip(M[:, 1] + 1.0, 0.0, None), np.abs(M[:, 2] + 1.0)])
        out.append(("minimizers on {y1=1, y2<=-1, y3=-1}", bool(np.all(dev <= RAY_TOL)),
                    f"max deviation {float(dev.max()):.3g}"))
    return out


def check_ex617(P, r, rep):
    sample = P.F.representative_points(3)
    low = float(np.min(P.g.values(sample)))
    g0 = P.g.with_params(a=np.zeros(2))
    floor = float(np.min(g0.values(sample)))
    return [
        _status_in(r, (SolveStatus.INFIMUM_NOT_ATTAINED, SolveStatus.UNBOUNDED_BELOW)),
        ("phi_{b-H,k} < -1e3 on sample", low < -1e3, f"min over sample {low:.6g}"),
        ("phi_{-H,k} >= -tol on sample", floor >= -P.g.tol, f"min over sample {floor:.3g}"),
    ]


def check_ex618a(P, r, rep):
    return [_status_in(r, OPTIMAL_LIKE), _unique_minimizer(r, (0.0, 0.0), 1e-9)]


def check_ex618b(P, r, rep):
    out = [_status_in(r, OPTIMAL_LIKE)]
    if not r.has_minimizers:
        return out
    Y = P.F.representative_points(0)
    seg = Y[(np.abs(Y[:, 1]) == 0.0) & (Y[:, 0] >= 0.0) & (Y[:, 0] <= 1.0)]
    v = P.g.values(seg)
    fill = bool(len(seg) > 1 and np.all(v <= r.t_star + r.eps_tie))
    out.append(("segment filled", fill, f"{len(seg)} sampled segment points, max phi - t* = {float(v.max() - r.t_star):.3g}"))
    M = r.minimizers
    on_seg = bool(np.all((np.abs(M[:, 1]) <= 1e-9) & (M[:, 0] >= -1e-9) & (M[:, 0] <= 1 + 1e-9)))
    out.append(("minimizers on segment", on_seg, f"{len(M)} minimizers"))
    return out


def check_shifted_hyperbola(P, r, rep):
    H = P.g.H
    axis_free = all(H.contains_line_in_direction(e) is TriBool.FALSE for e in np.eye(2))
    sep = separation_boundedness(P.F.representative_points(0), H, SEP_CONE, np.zeros(2), np.zeros(2))
    return [
        _status_in(r, OPTIMAL_LIKE),
        _certified(rep, "R-polyhedral-sep"),
        ("separation hypotheses", sep is TriBool.TRUE, str(sep)),
        ("no axis lines in H", axis_free, ""),
    ]


@dataclass(frozen=True)
class Example:
    id: str
    description: str
    build: Callable[[float], ProblemInstance]
    check: Callable[[ProblemInstance, SolveResult, ExistenceReport], list]


EXAMPLES: dict[str, Example] = {e.id: e for e in (
    Example("ex311", "triangle grid, a=(-1,0), H=R^2_+, k=(1,1): unique optimum (0,0), t*=1", ex311, check_ex311),
    Example("ex613", "hyperbola branch, H={y1>=0}, k=(1,1): infimum 0 not attained", ex613, check_ex613),
    Example("ex614", "x-axis, H=hyperbola epigraph, k=(1,1): infimum not attained", ex614, check_ex614),
    Example("ex615a", "plane curve, H=cone(3 generators), a=0, k=(1,1,1): no optimum", _ex615((0, 0, 0), "ex615a"),
            _check_no_optimum),
    Example("ex615b", "plane curve, H=cone(3 generators), b=(1,-1,-1/2): minimizers on a ray",
            _ex615((1, -1, -0.5), "ex615b"), check_ex615b),
    Example("ex616a", "plane curve, H=R^3_+, a=0, k=(1,1,1): no optimum", _ex616((0, 0, 0), "ex616a"),
            _check_no_optimum),
    Example("ex616b", "plane curve, H=R^3_+, b=(1,-1,-1): minimizers {y1=1, y2<=-1, y3=-1}",
            _ex616((1, -1, -1), "ex616b"), check_ex616b),
    Example("ex617", "parabola arc, H=parabola epigraph, k=(0,1), b=(1,0): phi unbounded below", ex617, check_ex617),
    Example("ex618a", "F=H=R^2_+, a=0, k=(1,1): unique minimizer (0,0)", _ex618((0, 0), "ex618a"), check_ex618a),
    Example("ex618b", "F=H=R^2_+, b=(1,0), k=(1,1): the segment [0,1]x{0} minimizes", _ex618((1, 0), "ex618b"),
            check_ex618b),
    Example("shifted-hyperbola", "wedge F, shifted hyperbola H, separating cone {y1+y2<=0}", shifted_hyperbola,
            check_shifted_hyperbola),
)}


@dataclass(frozen=True)
class ExampleOutcome:
    id: str
    result: SolveResult
    report: ExistenceReport
    checks: list

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)


def run_example(example_id: str, tol: float = 1e-9) -> ExampleOutcome:
    ex = EXAMPLES[example_id]
    P = ex.build(tol)
    r = solve(P)
    rep = existence_report(P)
    return ExampleOutcome(ex.id, r, rep, ex.check(P, r, rep))


def build_example(example_id: str, tol: float = 1e-9) -> ProblemInstance:
    if example_id not in EXAMPLES:
        raise KeyError(f"unknown example {example_id!r}; choose from {', '.join(EXAMPLES)}")
    return EXAMPLES[example_id].build(tol)


# -- random families --------------------------------------------------------------------

def random_polyhedral_H(rng: np.random.Generator, dim: int, k: np.ndarray, max_rows: int = 6,
                        zero_row_prob: float = 0.2) -> Halfspaces:
    """Nonempty ``{W y >= b}`` with ``W k >= 0`` and some rows orthogonal to ``k``."""
    m = int(rng.integers(1, max_rows + 1))
    rows = []
    for _ in range(m):
        w = rng.integers(-3, 4, size=dim).astype(float)
        if rng.random() < zero_row_prob:
            w = (k @ k) * w - (w @ k) * k
        elif w @ k < 0:
            w = -w
        if np.max(np.abs(w)) < 1e-9:
            w = k.copy()
        rows.append(w)
    W = np.array(rows)
    x0 = rng.uniform(-2, 2, size=dim)
    b = W @ x0 - rng.uniform(0, 2, size=m)
    return Halfspaces(W, b)


def random_k(rng: np.random.Generator, dim: int) -> np.ndarray:
    k = rng.integers(-2, 4, size=dim).astype(float)
    while not np.any(k != 0):
        k = rng.integers(-2, 4, size=dim).astype(float)
    return k


def random_polyhedral_functional(rng: np.random.Generator, dim: int | None = None, tol: float = 1e-9):
    dim = int(rng.choice([2, 3])) if dim is None else dim
    k = random_k(rng, dim)
    H = random_polyhedral_H(rng, dim, k)
    a = rng.uniform(-2, 2, size=dim).round(3)
    return GerstewitzFunctional(a, H, k, tol=tol)


def random_finite_instance(rng: np.random.Generator, dim: int | None = None, n_max: int = 30) -> ProblemInstance:
    g = random_polyhedral_functional(rng, dim)
    n = int(rng.integers(1, n_max + 1))
    F = FinitePoints(rng.uniform(-3, 3, size=(n, g.dim)).round(3))
    return ProblemInstance(F, g)


def random_cone_instance(rng: np.random.Generator, dim: int | None = None, n_max: int = 30) -> ProblemInstance:
    """Finite ``F`` with a pointed polyhedral cone ``H ⊇ R^l_+`` and ``k`` in ``int H``."""
    dim = int(rng.choice([2, 3])) if dim is None else dim
    W = np.vstack([np.eye(dim), rng.uniform(0.0, 1.0, size=(int(rng.integers(0, 3)), dim))])
    H = Halfspaces(W, np.zeros(len(W)))
    k = rng.uniform(0.2, 2.0, size=dim).round(3)
    a = rng.uniform(-2, 2, size=dim).round(3)
    n = int(rng.integers(1, n_max + 1))
    F = FinitePoints(rng.uniform(-3, 3, size=(n, dim)).round(3))
    return ProblemInstance(F, GerstewitzFunctional(a, H, k))


def random_convex_template(rng: np.random.Generator, dim: int | None = None):
    """Polyhedral ``F`` (box cut by halfspaces) and polyhedral ``H`` with ``R^l_+ ⊆ 0+H``."""
    dim = int(rng.choice([2, 3])) if dim is None else dim
    m = int(rng.integers(1, 5))
    W = rng.uniform(0.0, 1.0, size=(m, dim)).round(3)
    W[np.max(W, axis=1) < 1e-3] = 1.0
    H = Halfspaces(W, rng.uniform(-1, 1, size=m).round(3))
    cut_w = rng.normal(size=(2, dim)).round(3)
    c = rng.uniform(-1, 1, size=dim)
    cut = Halfspaces(cut_w, cut_w @ c - rng.uniform(0.1, 1.0, size=2))
    F = GridRegion(-np.full(dim, 4.0), np.full(dim, 4.0), resolution=5, membership=cut)
    return F, H


def random_positive_k(rng: np.random.Generator, dim: int) -> np.ndarray:
    return rng.uniform(0.1, 2.0, size=dim).round(3)
