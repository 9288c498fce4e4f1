"""Minimisation of ``phi_{a-H,k}`` over a feasible set ``F``.

Finite ``F`` is solved exactly by enumeration. Continuous ``F`` is sampled,
the parameter range is doubled three times to detect an infimum that
escapes to infinity, and the incumbent cells are refined locally.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DimensionMismatch, PreconditionError, UnsupportedRepresentation
from .feasible import FeasibleSet, FinitePoints, LevelRestricted, ParametricSet
from .functional import GerstewitzFunctional, level_contains_many
from .geometry import Halfspaces, TriBool, as_points

RANGE_DOUBLINGS = 3
REFINE_ROUNDS = 3
REFINE_FACTOR = 4
MAX_REFINE_CENTRES = 64


class SolveStatus(enum.Enum):
    OPTIMAL = "Optimal"
    APPROXIMATE_OPTIMAL = "ApproximateOptimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED_BELOW = "UnboundedBelow"
    INFIMUM_NOT_ATTAINED = "InfimumNotAttained"


@dataclass(frozen=True, eq=False)
class Separation:
    """Data ``(C, z, u)`` for the polyhedral-separation existence rule."""

    C: Halfspaces
    z: np.ndarray
    u: np.ndarray


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    F: FeasibleSet
    g: GerstewitzFunctional
    separation: Separation | None = None
    name: str = ""

    def __post_init__(self):
        if self.F.dim != self.g.dim:
            raise DimensionMismatch(f"F lives in R^{self.F.dim} but the functional in R^{self.g.dim}")

    def with_params(self, a=None, k=None) -> ProblemInstance:
        return replace(self, g=self.g.with_params(a=a, k=k))


@dataclass(frozen=True, eq=False)
class SolveResult:
    status: SolveStatus
    t_star: float | None = None
    minimizers: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))
    exact: bool = False
    eps_tie: float = 0.0
    witness: np.ndarray | None = None
    witness_t: float | None = None
    inf_estimate: float | None = None
    evidence: tuple = ()
    diverging: bool = False
    cell_size: np.ndarray | None = None
    minimizers_bounded: TriBool = TriBool.TRUE
    recession_direction: np.ndarray | None = None
    notes: tuple[str, ...] = ()

    @property
    def has_minimizers(self) -> bool:
        return self.status in (SolveStatus.OPTIMAL, SolveStatus.APPROXIMATE_OPTIMAL) and len(self.minimizers) > 0


def eps_tie(g: GerstewitzFunctional, t: float) -> float:
    base = 1e-9 * (1.0 + abs(t))
    return base if g.polyhedral else max(base, 2.0 * g.tol)


def _from_values(g: GerstewitzFunctional, Y: np.ndarray, v: np.ndarray, status: SolveStatus, notes=()) -> SolveResult:
    """Assemble the verdict for sampled points ``Y`` with values ``v``."""
    if len(Y) == 0 or np.all(v == math.inf):
        return SolveResult(SolveStatus.INFEASIBLE, exact=g.polyhedral, notes=tuple(notes))
    neg = np.flatnonzero(v == -math.inf)
    if len(neg):
        i = int(neg[0])
        return SolveResult(
            SolveStatus.UNBOUNDED_BELOW,
            exact=g.polyhedral,
            witness=Y[i].copy(),
            witness_t=-math.inf,
            notes=tuple(notes) + ("phi is -inf at the witness point",),
        )
    t = float(np.min(v)) + 0.0
    eps = eps_tie(g, t)
    mins = Y[v <= t + eps]
    return SolveResult(status, t_star=t, minimizers=mins.copy(), exact=g.polyhedral, eps_tie=eps, notes=tuple(notes))


def solve_finite(P: ProblemInstance) -> SolveResult:
    if not isinstance(P.F, FinitePoints):
        raise UnsupportedRepresentation("solve_finite needs a FinitePoints feasible set")
    Y = P.F.points
    return _from_values(P.g, Y, P.g.values(Y), SolveStatus.OPTIMAL)


def _dedupe(P: np.ndarray, Y: np.ndarray, v: np.ndarray):
    _, idx = np.unique(Y, axis=0, return_index=True)
    idx = np.sort(idx)
    return P[idx], Y[idx], v[idx]


def _spread(idx: np.ndarray, cap: int) -> np.ndarray:
    if len(idx) <= cap:
        return idx
    return idx[np.unique(np.round(np.linspace(0, len(idx) - 1, cap)).astype(int))]


def solve_grid(P: ProblemInstance) -> SolveResult:
    F, g = P.F, P.g
    if isinstance(F, FinitePoints):
        return solve_finite(P)
    if not isinstance(F, ParametricSet):
        raise UnsupportedRepresentation(f"cannot sample {F!r}")

    stages = range(RANGE_DOUBLINGS + 1) if F.extendable else range(1)
    samples = []
    for j in stages:
        Pj, Yj = F.points(F.param_grid(j))
        vj = g.values(Yj) if len(Yj) else np.zeros(0)
        samples.append((j, Pj, Yj, vj))
    extras = F.extras
    v_extra = g.values(extras) if len(extras) else np.zeros(0)
    sample_note = "sample-relative verdict: only sampled points of F were examined"

    j_last, P_all, Y_all, v_all = samples[-1]
    Y_pool = np.vstack([Y_all, extras]) if len(extras) else Y_all
    v_pool = np.concatenate([v_all, v_extra])
    if len(Y_pool) == 0 or np.all(v_pool == math.inf):
        return SolveResult(SolveStatus.INFEASIBLE, exact=False, notes=(sample_note,))
    if np.any(v_pool == -math.inf):
        res = _from_values(g, Y_pool, v_pool, SolveStatus.UNBOUNDED_BELOW, (sample_note,))
        return replace(res, exact=False)

    if F.extendable:
        incumbents, argmins = [], []
        for _, _, Yj, vj in samples:
            vv = np.concatenate([vj, v_extra])
            YY = np.vstack([Yj, extras]) if len(extras) else Yj
            i = int(np.argmin(vv)) if len(vv) else -1
            incumbents.append(float(vv[i]) if i >= 0 else math.inf)
            argmins.append(YY[i].copy() if i >= 0 else None)
        inc = np.array(incumbents)
        with np.errstate(invalid="ignore"):
            decs = inc[:-1] - inc[1:]
        # two empty stages in a row (inf - inf) show no decrease
        decs = np.where(np.isnan(decs), 0.0, decs)
        last = incumbents[-1]
        threshold = 10.0 * 1e-9 * (1.0 + abs(last))
        if not g.polyhedral and argmins[-1] is not None:
            # bracket width plus the membership tolerance at the sample's scale
            scale = 1.0 + float(np.max(np.abs(argmins[-1])))
            threshold = max(threshold, 2.0 * g.tol + 1e-12 * scale)
        if np.all(decs > threshold):
            diverging = bool(decs[-1] >= decs[0])
            evidence = tuple((y, t) for y, t in zip(argmins, incumbents) if y is not None)
            note = (
                "incumbent decreases by a non-shrinking amount per range doubling: phi looks unbounded below on F"
                if diverging
                else "incumbent decreases with shrinking steps: infimum approached but not attained in range"
            )
            return SolveResult(
                SolveStatus.INFIMUM_NOT_ATTAINED,
                inf_estimate=last,
                evidence=evidence,
                diverging=diverging,
                notes=(sample_note, note),
            )

    P_pool, Y_grid, v_grid = P_all, Y_all, v_all
    step = F.steps.astype(float)
    for _ in range(REFINE_ROUNDS):
        finite = np.isfinite(v_grid)
        if not np.any(finite):
            break
        t = float(np.min(v_grid))
        ties = np.flatnonzero(v_grid <= t + eps_tie(g, t))
        centres = P_pool[_spread(ties, MAX_REFINE_CENTRES)]
        new_step = step / REFINE_FACTOR
        Pn, Yn = F.points(F.local_grid(centres, step, new_step, j_last))
        if len(Yn):
            P_pool = np.vstack([P_pool, Pn])
            Y_grid = np.vstack([Y_grid, Yn])
            v_grid = np.concatenate([v_grid, g.values(Yn)])
            P_pool, Y_grid, v_grid = _dedupe(P_pool, Y_grid, v_grid)
        step = new_step

    Y_fin = np.vstack([Y_grid, extras]) if len(extras) else Y_grid
    v_fin = np.concatenate([v_grid, v_extra])
    res = _from_values(g, Y_fin, v_fin, SolveStatus.APPROXIMATE_OPTIMAL, (sample_note,))
    if res.status is not SolveStatus.APPROXIMATE_OPTIMAL:
        return replace(res, exact=False)
    order = np.lexsort(res.minimizers.T[::-1])
    mins = res.minimizers[order]
    bounded = TriBool.TRUE
    direction = None
    notes = list(res.notes)
    if F.extendable:
        tie_params = P_pool[v_grid <= res.t_star + res.eps_tie]
        if np.any(F.on_growing_edge(tie_params, j_last)):
            bounded = TriBool.FALSE
            notes.append("minimizers reach the edge of the sampled range: sampled representation of an unbounded set")
            if g.polyhedral and len(mins) > 1:
                near = mins[np.argmin(np.linalg.norm(mins, axis=1))]
                far = mins[np.argmax(np.linalg.norm(mins - near, axis=1))]
                d = far - near
                direction = d / np.linalg.norm(d)
    return replace(
        res,
        minimizers=mins,
        exact=False,
        cell_size=step,
        minimizers_bounded=bounded,
        recession_direction=direction,
        notes=tuple(notes),
    )


def solve(P: ProblemInstance) -> SolveResult:
    if isinstance(P.F, FinitePoints):
        return solve_finite(P)
    return solve_grid(P)


# -- equivalent formulations ----------------------------------------------------

def _sample_points(F: FeasibleSet) -> np.ndarray:
    if isinstance(F, FinitePoints):
        return F.points
    return F.representative_points()


def boundary_values(g: GerstewitzFunctional, Y) -> np.ndarray:
    """``inf{t : y in a - bd H + t k}`` for each row of ``Y``.

    A finite ``phi(y)`` is attained on the boundary, which is verified; a
    ``-inf`` value needs the whole line to meet the boundary, decided by
    probing it.
    """
    Y = as_points(Y, g.dim)
    v = g.values(Y)
    out = np.full(len(Y), math.inf)
    fin = np.isfinite(v)
    if np.any(fin):
        X = g.a[None, :] + v[fin, None] * g.k[None, :] - Y[fin]
        if g.polyhedral:
            on_bd = g.H.boundary_many(X)
        else:
            below = X - g.tol * g.k[None, :]
            on_bd = g.H.contains_many(X) & ~g.H.contains_many(below)
        out[np.flatnonzero(fin)[on_bd]] = v[fin][on_bd]
    neg = np.flatnonzero(v == -math.inf)
    if len(neg):
        probes = np.array([-1e3, -1.0, 0.0, 1.0, 1e3])
        for i in neg:
            X = g.a[None, :] + probes[:, None] * g.k[None, :] - Y[i][None, :]
            if np.all(g.H.boundary_many(X)):
                out[i] = -math.inf
    return out


@dataclass(frozen=True)
class BoundaryCheck:
    agrees: bool
    t_full: float | None
    t_boundary: float | None
    status_full: SolveStatus
    status_boundary: SolveStatus


def _same_points(A: np.ndarray, B: np.ndarray, tol: float) -> bool:
    if len(A) != len(B):
        return False
    if len(A) == 0:
        return True
    d = np.max(np.abs(A[:, None, :] - B[None, :, :]), axis=2)
    return bool(np.all(d.min(axis=1) <= tol) and np.all(d.min(axis=0) <= tol))


def boundary_equivalence_check(P: ProblemInstance) -> BoundaryCheck:
    """Compare the problem with its boundary-constrained variant on a sample of ``F``."""
    g = P.g
    Y = _sample_points(P.F)
    full = _from_values(g, Y, g.values(Y), SolveStatus.OPTIMAL)
    bd = _from_values(g, Y, boundary_values(g, Y), SolveStatus.OPTIMAL)
    agrees = full.status is bd.status
    if agrees and full.status is SolveStatus.OPTIMAL:
        eps = max(full.eps_tie, bd.eps_tie)
        agrees = abs(full.t_star - bd.t_star) <= 2 * eps and _same_points(full.minimizers, bd.minimizers, 1e-12)
    return BoundaryCheck(agrees, full.t_star, bd.t_star, full.status, bd.status)


def restrict_to_level(P: ProblemInstance, t0: float) -> ProblemInstance:
    """``F`` replaced by ``F ∩ (a - H + t0 k)``."""
    g, F = P.g, P.F
    if isinstance(F, FinitePoints):
        keep = level_contains_many(g, t0, F.points)
        if not np.any(keep):
            raise PreconditionError(f"no point of F is feasible at level t0={t0!r}")
        return replace(P, F=FinitePoints(F.points[keep], declared_convex=F.convex and g.H.convex))
    if not isinstance(F, ParametricSet):
        raise UnsupportedRepresentation(f"cannot restrict {F!r}")
    restricted = LevelRestricted(F, g, t0)
    found = any(len(restricted.representative_points(j)) for j in range(RANGE_DOUBLINGS + 1))
    if not found:
        raise PreconditionError(f"no sampled point of F is feasible at level t0={t0!r}")
    return replace(P, F=restricted)


@dataclass(frozen=True)
class MinkowskiReport:
    same_value: bool
    inclusion_chain_holds: bool
    t_F: float | None
    t_sum: float | None


def minkowski_sum_relations(P: ProblemInstance, H_sample) -> MinkowskiReport:
    """Compare minimisation over ``F`` and over ``F + S`` for a sample ``S`` of ``H``.

    The origin is added to ``S``; both need ``0 in H`` and ``H + H ⊆ H``.
    """
    if not isinstance(P.F, FinitePoints):
        raise UnsupportedRepresentation("Minkowski-sum relations are checked on finite F only")
    g = P.g
    S = np.asarray(H_sample, dtype=float).reshape(-1, g.dim)
    if len(S) and not np.all(g.H.contains_many(S)):
        bad = S[~g.H.contains_many(S)][0]
        raise PreconditionError(f"sample point {bad.tolist()} is not in H")
    if not g.H.contains(np.zeros(g.dim)):
        raise PreconditionError("0 must belong to H")
    if g.H.is_additive() is TriBool.FALSE:
        raise PreconditionError("H + H is not contained in H")
    S = np.vstack([np.zeros((1, g.dim)), S])
    F = P.F.points
    sums = (F[:, None, :] + S[None, :, :]).reshape(-1, g.dim)
    r_F = solve_finite(P)
    r_sum = solve_finite(replace(P, F=FinitePoints(sums)))
    if r_F.status is not SolveStatus.OPTIMAL or r_sum.status is not SolveStatus.OPTIMAL:
        return MinkowskiReport(r_F.status is r_sum.status, r_F.status is r_sum.status, r_F.t_star, r_sum.t_star)
    eps = max(r_F.eps_tie, r_sum.eps_tie)
    same = abs(r_F.t_star - r_sum.t_star) <= 2 * eps
    tol = 1e-12 * (1.0 + np.max(np.abs(sums)))

    def subset(A, B):
        d = np.max(np.abs(A[:, None, :] - B[None, :, :]), axis=2)
        return bool(np.all(d.min(axis=1) <= tol))

    M_plus_S = (r_F.minimizers[:, None, :] + S[None, :, :]).reshape(-1, g.dim)
    chain = subset(r_F.minimizers, r_sum.minimizers) and subset(r_sum.minimizers, M_plus_S)
    return MinkowskiReport(bool(same), chain, r_F.t_star, r_sum.t_star)
