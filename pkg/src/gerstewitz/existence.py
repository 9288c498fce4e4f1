"""Certificates that the minimizer set of an instance is nonempty and compact.

Each rule is a conjunction of hypotheses evaluated as :class:`TriBool`. A rule
certifies only when every hypothesis is ``TRUE``; ``UNKNOWN`` never upgrades.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import PreconditionError, UnsupportedRepresentation
from .feasible import FinitePoints, ParametricSet
from .functional import phi, properness_report
from .geometry import LP_TOL, Halfspaces, SetRep, TriBool, _lp, as_point, as_points, geom_tol, polyhedral_form, translate
from .solver import ProblemInstance

# Most specific hypotheses first, so a report names the sharpest result that applies.
RULE_ORDER = (
    "R-pointed-cone",
    "R-cone-knotneg",
    "R-convex-strict",
    "R-core",
    "R-boundedbelow-lines",
    "R-boundedbelow-cases",
    "R-polyhedral-sep",
    "R-compactF-finite",
    "R-compactF-cases",
    "R-compact-level",
)

RULE_TITLES = {
    "R-nec": "feasible solution exists and phi is bounded below on F",
    "R-compact-level": "some level cut of F is nonempty and compact, phi bounded below on F",
    "R-compactF-finite": "F nonempty compact, phi finite-valued",
    "R-core": "F nonempty compact, k interior to the recession cone",
    "R-compactF-cases": "F compact and feasible, one of four conditions on H",
    "R-boundedbelow-lines": "F closed and bounded below, no axis lines in H, k interior to the recession cone",
    "R-pointed-cone": "F closed and bounded below, H pointed cone containing the orthant, k interior to H",
    "R-boundedbelow-cases": "F closed and bounded below, no axis lines in H, one of four conditions",
    "R-convex-strict": "F closed and bounded below, H convex with strict orthant and k shifts",
    "R-cone-knotneg": "F closed and bounded below, H pointed cone containing the orthant, k in H but not in -H",
    "R-polyhedral-sep": "a polyhedral cone separates F from the recession of H",
}


class Verdict(enum.Enum):
    GUARANTEED = "GuaranteedNonemptyCompact"
    NECESSARY_FAILS = "NecessaryConditionFails"
    NO_RULE = "NoRuleApplies"


@dataclass(frozen=True)
class Hypothesis:
    value: TriBool
    note: str = ""


@dataclass(frozen=True)
class RuleCheck:
    rule: str
    value: TriBool
    breakdown: dict[str, Hypothesis] = field(default_factory=dict)


@dataclass(frozen=True)
class NecessaryReport:
    feasible: TriBool
    bounded_below: TriBool
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class ExistenceReport:
    verdict: Verdict
    rule: str | None
    checks: dict[str, RuleCheck]

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.GUARANTEED


def _hyp(value: TriBool, true_note: str = "", false_note: str = "", unknown_note: str = "") -> Hypothesis:
    note = {TriBool.TRUE: true_note, TriBool.FALSE: false_note, TriBool.UNKNOWN: unknown_note}[value]
    return Hypothesis(value, note)


def _conj(*hyps: Hypothesis) -> TriBool:
    return TriBool.all_of(h.value for h in hyps)


def _disj(*hyps: Hypothesis) -> Hypothesis:
    value = TriBool.any_of(h.value for h in hyps)
    return Hypothesis(value, "; ".join(h.note for h in hyps if h.note))


def _fmt(v) -> str:
    return "(" + ", ".join(f"{x:g}" for x in np.asarray(v, dtype=float)) + ")"


# -- necessary conditions ---------------------------------------------------------

def _lp_min_phi(P: ProblemInstance) -> tuple[int, float]:
    """``min t`` over ``y in F, y in a - H + t k`` as an LP in ``(y, t)``."""
    g = P.g
    Fh = P.F.polyhedron
    Hh = polyhedral_form(g.H)
    l = g.dim
    # F: W_F y >= b_F ; H: W_H (a + t k - y) >= b_H
    A = np.vstack([
        np.hstack([-Fh.normals, np.zeros((len(Fh.normals), 1))]),
        np.hstack([Hh.normals, -(Hh.normals @ g.k)[:, None]]),
    ])
    rhs = np.concatenate([-Fh.offsets, Hh.normals @ g.a - Hh.offsets])
    c = np.zeros(l + 1)
    c[-1] = 1.0
    status, _, fun = _lp(c, A_ub=A, b_ub=rhs)
    return status, fun


def _exact_polyhedral(P: ProblemInstance) -> bool:
    return P.F.polyhedron is not None and P.g.polyhedral


def _monotone_floor(P: ProblemInstance) -> float | None:
    """``phi(u)`` when ``F ⊆ u + R^l_+ ⊆ u + 0+H``; it bounds ``phi`` below on ``F``."""
    if P.F.bounded_below() is not TriBool.TRUE:
        return None
    if P.g.H.orthant_in_recession() is not TriBool.TRUE:
        return None
    u = P.F.lower_bound()
    if u is None:
        return None
    return phi(P.g, u).value


def _sample(P: ProblemInstance) -> np.ndarray:
    F = P.F
    if isinstance(F, FinitePoints):
        return F.points
    if isinstance(F, ParametricSet):
        return np.vstack([F.representative_points(0), F.representative_points(3)])
    raise UnsupportedRepresentation(f"cannot sample {F!r}")


def necessary_conditions(P: ProblemInstance, t_probe_range=(-100.0, 100.0), samples: int = 41) -> NecessaryReport:
    """Conditions (5) ``F ∩ dom phi ≠ ∅`` and (6) ``phi`` bounded below on ``F``."""
    if int(samples) < 2:
        raise ValueError("samples must be >= 2")
    g, F = P.g, P.F
    if isinstance(F, FinitePoints):
        v = g.values(F.points)
        feasible = TriBool.of(bool(np.any(v < math.inf)))
        bounded = TriBool.of(not bool(np.any(v == -math.inf)))
        if not g.polyhedral and bounded is TriBool.FALSE:
            bounded = TriBool.UNKNOWN
        return NecessaryReport(feasible, bounded, ("evaluated phi at every point of F",))
    if _exact_polyhedral(P):
        status, fun = _lp_min_phi(P)
        if status == 0:
            return NecessaryReport(TriBool.TRUE, TriBool.TRUE, (f"LP minimum of phi over F is {fun:g}",))
        if status == 2:
            return NecessaryReport(TriBool.FALSE, TriBool.TRUE, ("LP: F misses the domain of phi",))
        if status == 3:
            return NecessaryReport(TriBool.TRUE, TriBool.FALSE, ("LP: phi is unbounded below on F",))

    notes = []
    Y = _sample(P)
    v = g.values(Y)
    feasible = TriBool.TRUE if np.any(v < math.inf) else TriBool.UNKNOWN
    if feasible is TriBool.TRUE:
        notes.append("a sampled point of F has finite phi")
    bounded = TriBool.UNKNOWN
    if np.any(v == -math.inf) and g.polyhedral:
        bounded = TriBool.FALSE
        notes.append("phi is -inf at a sampled point")
    else:
        floor = _monotone_floor(P)
        if floor is not None and floor > -math.inf:
            bounded = TriBool.TRUE
            notes.append(f"F ⊆ u + R^l_+ ⊆ u + 0+H, so phi >= phi(u) = {floor:g} on F")
    if bounded is TriBool.UNKNOWN and np.any(np.isfinite(v)):
        t_lo, t_hi = t_probe_range
        probes = np.linspace(t_lo, t_hi, int(samples))
        empty = probes[probes < np.min(v)]
        if len(empty):
            notes.append(f"sampled evidence only: no sampled point at level {empty[0]:g}")
    return NecessaryReport(feasible, bounded, tuple(notes))


# -- separation test --------------------------------------------------------------

@dataclass(frozen=True)
class SeparationCheck:
    verdict: TriBool
    recession_inside: TriBool
    points_outside: TriBool
    sampled_intersection_radius: float


def _strictly_inside_cone(C: Halfspaces, X: np.ndarray) -> np.ndarray:
    return np.all(X @ C.normals.T > geom_tol(X)[:, None] * np.sum(np.abs(C.normals), axis=1)[None, :], axis=1)


def _neg_set_in_open_cone(D: SetRep, C: Halfspaces) -> TriBool:
    """``-D minus {0} ⊂ int C`` for ``D`` containing the origin."""
    if D.polyhedral:
        Dh = polyhedral_form(D)
        l = D.dim
        for c in C.normals:
            # a nonzero d in D with <c, d> >= 0 keeps -d out of int C; D is convex
            # and holds 0, so such a d exists iff one exists in the unit box
            A = np.vstack([-Dh.normals, -c[None, :]])
            rhs = np.concatenate([-Dh.offsets, [0.0]])
            for j in range(l):
                for sign in (1.0, -1.0):
                    obj = np.zeros(l)
                    obj[j] = -sign
                    status, _, fun = _lp(obj, A_ub=A, b_ub=rhs, bounds=(-1.0, 1.0))
                    if status != 0:
                        return TriBool.UNKNOWN
                    if -fun > LP_TOL:
                        return TriBool.FALSE
        return TriBool.TRUE
    if not (hasattr(D, "boundary_samples") and hasattr(D, "recession_rays")):
        return TriBool.UNKNOWN
    pts = D.boundary_samples(500)
    pts = pts[np.max(np.abs(pts), axis=1) > 1e-12]
    rays = D.recession_rays()
    X = -np.vstack([pts, rays])
    return TriBool.of(bool(np.all(_strictly_inside_cone(C, X))))


def separation_details(M_points, D: SetRep, C: Halfspaces, u, b) -> SeparationCheck:
    if not isinstance(C, Halfspaces) or np.any(C.offsets != 0.0):
        raise PreconditionError("C must be a polyhedral cone given by halfspaces with zero offsets")
    if C.dim != D.dim:
        raise PreconditionError("C and D live in different dimensions")
    if not D.contains(np.zeros(D.dim)):
        raise PreconditionError("D must contain the origin")
    u = as_point(u, D.dim)
    b = as_point(b, D.dim)
    M = as_points(M_points, D.dim)
    inside = _neg_set_in_open_cone(D, C)
    outside = TriBool.of(not bool(np.any(_strictly_inside_cone(C, M - u))))
    cut = M[D.contains_many(b[None, :] - M)]
    radius = float(np.max(np.linalg.norm(cut - b, axis=1))) if len(cut) else 0.0
    return SeparationCheck(inside & outside, inside, outside, radius)


def separation_boundedness(M_points, D: SetRep, C: Halfspaces, u, b) -> TriBool:
    """Hypotheses under which every ``M ∩ (b - D)`` is bounded."""
    return separation_details(M_points, D, C, u, b).verdict


# -- facts shared by the rules ----------------------------------------------------

class _Facts:
    def __init__(self, P: ProblemInstance):
        self.P = P
        self.g = P.g
        self.H = P.g.H
        self.F = P.F
        self.k = P.g.k

    @cached_property
    def nec(self) -> NecessaryReport:
        return necessary_conditions(self.P)

    @cached_property
    def feasible(self) -> Hypothesis:
        return _hyp(self.nec.feasible, "a feasible point exists", "no point of F lies in dom phi",
                    "no sampled point of F lies in dom phi")

    @cached_property
    def bounded_phi(self) -> Hypothesis:
        return _hyp(self.nec.bounded_below, "phi is bounded below on F", "phi is unbounded below on F",
                    "lower boundedness of phi on F is undecided")

    @cached_property
    def F_nonempty(self) -> Hypothesis:
        if isinstance(self.F, FinitePoints):
            return Hypothesis(TriBool.TRUE, "")
        has = len(_sample(self.P)) > 0
        return _hyp(TriBool.TRUE if has else TriBool.UNKNOWN, "", "", "no sampled point of F")

    @cached_property
    def F_closed(self) -> Hypothesis:
        return _hyp(self.F.closed, "F is closed", "F is not closed", "closedness of F is undeclared")

    @cached_property
    def F_compact(self) -> Hypothesis:
        return _hyp(self.F.compact, "F is compact", "F is not compact (unbounded)", "compactness of F is undeclared")

    @cached_property
    def F_bounded_below(self) -> Hypothesis:
        v = self.F.bounded_below()
        u = self.F.lower_bound()
        return _hyp(v, f"F ⊆ u + R^l_+ with u = {_fmt(u)}" if u is not None else "",
                    "F is not bounded below", "lower boundedness of F is undeclared")

    @cached_property
    def finite_valued(self) -> Hypothesis:
        rep = properness_report(self.g)
        return _hyp(rep.finite_valued, "phi is finite-valued", "phi takes the value +inf somewhere",
                    "finite-valuedness of phi is undecided")

    @cached_property
    def k_core(self) -> Hypothesis:
        return _hyp(self.H.recession_interior_contains(self.k), "k is interior to 0+H",
                    "k is not interior to 0+H", "interior membership of k in 0+H is undecided")

    @cached_property
    def orthant_recession(self) -> Hypothesis:
        return _hyp(self.H.orthant_in_recession(), "R^l_+ ⊆ 0+H", "R^l_+ is not contained in 0+H",
                    "R^l_+ ⊆ 0+H is undecided")

    @cached_property
    def no_axis_lines(self) -> Hypothesis:
        out = TriBool.TRUE
        notes = []
        for j, e in enumerate(np.eye(self.H.dim)):
            v = self.H.contains_line_in_direction(e)
            out = out & ~v
            if v is TriBool.TRUE:
                notes.append(f"H contains a line in direction {_fmt(e)}")
            elif v is TriBool.UNKNOWN:
                notes.append(f"line test in direction e{j + 1} is undecided")
        return Hypothesis(out, "; ".join(notes) if notes else "H contains no axis-parallel line")

    @cached_property
    def no_line_k(self) -> Hypothesis:
        v = self.H.contains_line_in_direction(self.k)
        return _hyp(~v, "H contains no line in direction k", f"H contains a line in direction {_fmt(self.k)}",
                    "line test in direction k is undecided")

    @cached_property
    def convex_k_not_neg(self) -> Hypothesis:
        if not self.H.convex:
            return Hypothesis(TriBool.FALSE, "H is not convex")
        v = ~self.H.recession_contains(-self.k)
        return _hyp(v, "H convex and -k not in 0+H", "-k lies in 0+H", "recession membership of -k is undecided")

    @cached_property
    def shift_interior(self) -> Hypothesis:
        return _hyp(self.H.shift_interior(self.k), "H + R_> k ⊆ int H", "H + R_> k is not inside int H",
                    "H + R_> k ⊆ int H is undecided")

    @cached_property
    def orthant_shift_interior(self) -> Hypothesis:
        return _hyp(self.H.orthant_shift_interior(), "H + (R^l_+ minus 0) ⊆ int H",
                    "H + (R^l_+ minus 0) is not inside int H", "H + (R^l_+ minus 0) ⊆ int H is undecided")

    def _disjoint(self, interior: bool) -> TriBool:
        """``F ∩ (a - H) = ∅`` or, with ``interior``, ``F ∩ (a - int H) = ∅``."""
        g, F = self.g, self.F
        if isinstance(F, FinitePoints):
            X = g.a[None, :] - F.points
            hit = g.H.interior_many(X) if interior else g.H.contains_many(X)
            return TriBool.of(not bool(np.any(hit)))
        if _exact_polyhedral(self.P):
            Fh, Hh = F.polyhedron, polyhedral_form(g.H)
            # maximise s with y in F and W_H (a - y) >= b_H + s (s = 0 allowed without interior)
            l = g.dim
            A = np.vstack([
                np.hstack([-Fh.normals, np.zeros((len(Fh.normals), 1))]),
                np.hstack([Hh.normals, np.ones((len(Hh.normals), 1))]),
            ])
            rhs = np.concatenate([-Fh.offsets, Hh.normals @ g.a - Hh.offsets])
            c = np.zeros(l + 1)
            c[-1] = -1.0
            status, _, fun = _lp(c, A_ub=A, b_ub=rhs, bounds=[(None, None)] * l + [(None, 1.0)])
            if status == 2:
                return TriBool.TRUE
            if status != 0:
                return TriBool.UNKNOWN
            s = -fun
            return TriBool.of(s <= LP_TOL if interior else s < -LP_TOL)
        floor = _monotone_floor(self.P)
        if floor is not None and (floor > 0 or (interior and floor >= 0)):
            return TriBool.TRUE
        X = g.a[None, :] - _sample(self.P)
        hit = g.H.interior_many(X) if interior else g.H.contains_many(X)
        return TriBool.FALSE if np.any(hit) else TriBool.UNKNOWN

    @cached_property
    def disjoint(self) -> Hypothesis:
        return _hyp(self._disjoint(False), "F ∩ (a - H) = ∅", "F meets a - H", "F ∩ (a - H) = ∅ is undecided")

    @cached_property
    def disjoint_interior(self) -> Hypothesis:
        return _hyp(self._disjoint(True), "F ∩ (a - int H) = ∅", "F meets a - int H",
                    "F ∩ (a - int H) = ∅ is undecided")

    @cached_property
    def cone(self) -> Hypothesis:
        H = self.H
        v = H.is_cone() & H.is_nontrivial_cone() & TriBool.of(H.convex) & H.is_pointed()
        return _hyp(v, "H is a nontrivial closed convex pointed cone", "H is not a nontrivial pointed convex cone",
                    "cone structure of H is undecided")

    @cached_property
    def k_int_H(self) -> Hypothesis:
        return _hyp(self.H.interior_contains(self.k), "k ∈ int H", "k is not interior to H", "k ∈ int H is undecided")

    @cached_property
    def k_H_not_neg(self) -> Hypothesis:
        v = TriBool.of(self.H.contains(self.k)) & TriBool.of(not self.H.contains(-self.k))
        return _hyp(v, "k ∈ H minus (-H)", "k is not in H minus (-H)")

    @cached_property
    def k_recession_not_neg(self) -> Hypothesis:
        v = ~self.H.recession_contains(-self.k)
        return _hyp(v, "k ∈ 0+H minus (-0+H)", "-k lies in 0+H", "recession membership of -k is undecided")

    @cached_property
    def separation(self) -> Hypothesis:
        sep = self.P.separation
        if sep is None:
            return Hypothesis(TriBool.UNKNOWN, "no separating cone supplied")
        H = self.H
        if not H.convex:
            return Hypothesis(TriBool.UNKNOWN, "closed convex hull of H is not available")
        if not H.contains(sep.z):
            return Hypothesis(TriBool.FALSE, f"z = {_fmt(sep.z)} is not in H")
        D = translate(H, sep.z)
        inside = _neg_set_in_open_cone(D, sep.C)
        outside = self._F_outside_cone(sep.C, sep.u)
        v = inside & outside
        notes = []
        notes.append({TriBool.TRUE: "z - H minus {0} ⊂ int C", TriBool.FALSE: "z - H leaves int C",
                      TriBool.UNKNOWN: "z - H ⊂ int C is undecided"}[inside])
        notes.append({TriBool.TRUE: "(F - u) ∩ int C = ∅", TriBool.FALSE: "F - u meets int C",
                      TriBool.UNKNOWN: "(F - u) ∩ int C = ∅ is undecided"}[outside])
        return Hypothesis(v, "; ".join(notes))

    def _F_outside_cone(self, C: Halfspaces, u) -> TriBool:
        F = self.F
        u = as_point(u, F.dim)
        if isinstance(F, FinitePoints):
            return TriBool.of(not bool(np.any(_strictly_inside_cone(C, F.points - u))))
        if F.polyhedron is not None:
            Fh, l = F.polyhedron, F.dim
            # maximise s with y in F and <c_i, y - u> >= s for every row
            A = np.vstack([
                np.hstack([-Fh.normals, np.zeros((len(Fh.normals), 1))]),
                np.hstack([-C.normals, np.ones((len(C.normals), 1))]),
            ])
            rhs = np.concatenate([-Fh.offsets, -(C.normals @ u)])
            c = np.zeros(l + 1)
            c[-1] = -1.0
            status, _, fun = _lp(c, A_ub=A, b_ub=rhs, bounds=[(None, None)] * l + [(None, 1.0)])
            if status == 2:
                return TriBool.TRUE
            if status != 0:
                return TriBool.UNKNOWN
            return TriBool.of(-fun <= LP_TOL)
        hit = np.any(_strictly_inside_cone(C, _sample(self.P) - u))
        return TriBool.FALSE if hit else TriBool.UNKNOWN


# -- rules --------------------------------------------------------------------------

def _check(rule: str, f: _Facts) -> RuleCheck:
    if rule == "R-nec":
        b = {"(5) feasible": f.feasible, "(6) bounded below": f.bounded_phi}
    elif rule == "R-compact-level":
        level = Hypothesis(TriBool.UNKNOWN, "compactness of a level cut is undecided")
        if f.F_compact.value is TriBool.TRUE and f.F_closed.value is TriBool.TRUE:
            level = Hypothesis(f.feasible.value, "F compact and H closed: every level cut is compact")
        b = {"level cut nonempty and compact": level, "(6) bounded below": f.bounded_phi}
    elif rule == "R-compactF-finite":
        b = {"F nonempty": f.F_nonempty, "F compact": f.F_compact, "phi finite-valued": f.finite_valued}
    elif rule == "R-core":
        b = {"F nonempty": f.F_nonempty, "F compact": f.F_compact, "k ∈ int 0+H": f.k_core}
    elif rule == "R-compactF-cases":
        b = {
            "F compact": f.F_compact,
            "feasible": f.feasible,
            "case (a)-(d)": _disj(
                f.disjoint,
                Hypothesis(_conj(f.disjoint_interior, f.shift_interior),
                           f"{f.disjoint_interior.note}, {f.shift_interior.note}"),
                f.no_line_k,
                f.convex_k_not_neg,
            ),
        }
    elif rule == "R-boundedbelow-lines":
        b = {
            "F nonempty": f.F_nonempty,
            "F closed": f.F_closed,
            "F bounded below": f.F_bounded_below,
            "R^l_+ ⊆ 0+H": f.orthant_recession,
            "k ∈ int 0+H": f.k_core,
            "no axis lines in H": f.no_axis_lines,
        }
    elif rule == "R-pointed-cone":
        b = {
            "F nonempty": f.F_nonempty,
            "F closed": f.F_closed,
            "F bounded below": f.F_bounded_below,
            "H pointed convex cone": f.cone,
            "R^l_+ ⊆ H": f.orthant_recession,
            "k ∈ int H": f.k_int_H,
        }
    elif rule == "R-boundedbelow-cases":
        b = {
            "F closed": f.F_closed,
            "F bounded below": f.F_bounded_below,
            "R^l_+ ⊆ 0+H": f.orthant_recession,
            "no axis lines in H": f.no_axis_lines,
            "feasible": f.feasible,
            "case (i)-(iv)": _disj(
                f.disjoint,
                Hypothesis(_conj(f.disjoint_interior, f.shift_interior),
                           f"{f.disjoint_interior.note}, {f.shift_interior.note}"),
                f.no_line_k,
                f.convex_k_not_neg,
            ),
        }
    elif rule == "R-convex-strict":
        b = {
            "F closed": f.F_closed,
            "F bounded below": f.F_bounded_below,
            "H convex": Hypothesis(TriBool.of(f.H.convex)),
            "H + (R^l_+ minus 0) ⊆ int H": f.orthant_shift_interior,
            "H + R_> k ⊆ int H": f.shift_interior,
            "k ∉ -0+H": f.k_recession_not_neg,
            "feasible": f.feasible,
        }
    elif rule == "R-cone-knotneg":
        b = {
            "F closed": f.F_closed,
            "F bounded below": f.F_bounded_below,
            "H pointed convex cone": f.cone,
            "R^l_+ ⊆ H": f.orthant_recession,
            "k ∈ H minus (-H)": f.k_H_not_neg,
            "feasible": f.feasible,
        }
    elif rule == "R-polyhedral-sep":
        # three variants share the separating cone; any one suffices
        d1 = Hypothesis(_conj(f.F_nonempty, f.F_closed, f.k_core, f.separation), "k ∈ int 0+H")
        d2 = Hypothesis(
            _conj(f.F_nonempty, f.F_closed, f.separation, f.feasible)
            & TriBool.any_of([
                f.disjoint.value,
                f.disjoint_interior.value & f.shift_interior.value,
                f.no_line_k.value,
            ]),
            "feasible plus one of three conditions",
        )
        d3 = Hypothesis(
            _conj(f.F_nonempty, f.F_closed, f.separation, f.feasible, f.k_recession_not_neg)
            & TriBool.of(f.H.convex),
            "H convex and k ∉ -0+H",
        )
        b = {"separating cone": f.separation, "variant d1 / d2 / d3": _disj(d1, d2, d3)}
    else:
        raise ValueError(f"unknown rule id {rule!r}; choose from {('R-nec',) + RULE_ORDER}")
    return RuleCheck(rule, TriBool.all_of(h.value for h in b.values()), b)


def check_rule(P: ProblemInstance, rule: str) -> RuleCheck:
    return _check(rule, _Facts(P))


def existence_report(P: ProblemInstance) -> ExistenceReport:
    facts = _Facts(P)
    checks = {"R-nec": _check("R-nec", facts)}
    nec = checks["R-nec"].breakdown
    if nec["(5) feasible"].value is TriBool.FALSE or nec["(6) bounded below"].value is TriBool.FALSE:
        failed = "(5)" if nec["(5) feasible"].value is TriBool.FALSE else "(6)"
        return ExistenceReport(Verdict.NECESSARY_FAILS, failed, checks)
    for rule in RULE_ORDER:
        checks[rule] = _check(rule, facts)
        if checks[rule].value is TriBool.TRUE:
            return ExistenceReport(Verdict.GUARANTEED, rule, checks)
    return ExistenceReport(Verdict.NO_RULE, None, checks)
