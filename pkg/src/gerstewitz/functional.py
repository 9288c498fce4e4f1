"""Evaluation of the Gerstewitz functional ``phi_{a-H,k}(y) = inf{t : y in a - H + t k}``.

Extended reals are plain Python/numpy floats: ``math.inf`` and ``-math.inf``
stand for +inf and -inf.

Polyhedral ``H`` has a closed form. Write ``H = {x : Wx >= b}``; then
``y in a - H + t k`` iff ``W(a - y) + t Wk >= b``. Rows with ``<w,k> = 0``
either hold for every ``t`` or for none, and each row with ``<w,k> > 0``
bounds ``t`` from below. Every other representation is evaluated by
bisection on the monotone membership ``t -> [a + t k - y in H]``.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DimensionMismatch, InvariantViolation, UnsupportedRepresentation
from .geometry import (
    GEOM_RTOL,
    Halfspaces,
    SetRep,
    TriBool,
    as_point,
    as_points,
    geom_tol,
    polyhedral_form,
    row_dots,
)

DEFAULT_TOL = 1e-9
DEFAULT_T_MAX = 1e12
MONOTONE_PROBES = (1.0, 4.0, 64.0, 1024.0)


class Certainty(enum.Enum):
    EXACT = "exact"
    BRACKETED = "bracketed"
    HEURISTIC_INFINITY = "heuristic_infinity"


class Classification(enum.Enum):
    IN_DOMAIN_FINITE = "InDomainFinite"
    NEG_INF_LINE = "NegInfLine"
    NOT_IN_DOMAIN = "NotInDomain"


def format_float(x: float) -> str:
    """Shortest round-trip rendering; infinities as ``+inf`` / ``-inf``."""
    if x == math.inf:
        return "+inf"
    if x == -math.inf:
        return "-inf"
    if x == 0.0:
        return "0"
    return repr(float(x))


def format_tol(x: float) -> str:
    return np.format_float_scientific(x, trim="-", exp_digits=1)


@dataclass(frozen=True)
class PhiStatus:
    value: float
    certainty: Certainty
    bound: float = 0.0

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.value)

    @property
    def certainty_label(self) -> str:
        if self.certainty is Certainty.EXACT:
            return "exact"
        if self.certainty is Certainty.BRACKETED:
            return f"bracketed({format_tol(self.bound)})"
        return f"heuristic_infinity({format_tol(self.bound)})"

    def __str__(self) -> str:
        return f"{format_float(self.value)} [{self.certainty_label}]"


@dataclass(frozen=True, eq=False)
class GerstewitzFunctional:
    """``phi_{a-H,k}`` with ``H`` closed and ``k in 0+H minus {0}``.

    ``tol`` and ``t_max`` only matter for non-polyhedral ``H``.
    """

    a: np.ndarray
    H: SetRep
    k: np.ndarray
    tol: float = DEFAULT_TOL
    t_max: float = DEFAULT_T_MAX
    validated: bool = field(default=False, init=False)

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float).reshape(-1)
        k = np.asarray(self.k, dtype=float).reshape(-1)
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(k))):
            raise ValueError("a and k must be finite")
        if not np.any(k != 0.0):
            raise ValueError("k must be nonzero")
        if a.shape[0] != self.H.dim or k.shape[0] != self.H.dim:
            raise DimensionMismatch(
                f"dimensions disagree: a in R^{a.shape[0]}, k in R^{k.shape[0]}, H in R^{self.H.dim}"
            )
        if not (self.tol > 0 and self.t_max > 0):
            raise ValueError("tol and t_max must be positive")
        verdict = self.H.recession_contains(k)
        if verdict is TriBool.FALSE:
            raise InvariantViolation(f"k={k.tolist()} is not in the recession cone of H")
        if verdict is TriBool.UNKNOWN:
            warnings.warn("recession-cone membership of k is undecided", stacklevel=2)
        if self.H.is_nonempty() is TriBool.FALSE:
            raise InvariantViolation("H is empty")
        a.setflags(write=False)
        k.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "validated", True)

    def __repr__(self) -> str:
        return f"GerstewitzFunctional(a={self.a.tolist()}, H={self.H!r}, k={self.k.tolist()})"

    @property
    def dim(self) -> int:
        return self.H.dim

    @property
    def polyhedral(self) -> bool:
        return self.H.polyhedral

    @property
    def value_tol(self) -> float:
        """Comparison slack downstream of evaluation: 0 if exact, else 2*tol."""
        return 0.0 if self.polyhedral else 2.0 * self.tol

    def with_params(self, a=None, k=None, **kw) -> GerstewitzFunctional:
        return replace(
            self,
            a=self.a if a is None else np.asarray(a, dtype=float),
            k=self.k if k is None else np.asarray(k, dtype=float),
            **kw,
        )

    def __call__(self, y) -> float:
        return phi(self, y).value

    def values(self, Y) -> np.ndarray:
        return phi_values(self, Y)


# -- closed form ------------------------------------------------------------------

def _polyhedral_values(g: GerstewitzFunctional, Y: np.ndarray) -> np.ndarray:
    hs: Halfspaces = polyhedral_form(g.H)
    W, b = hs.normals, hs.offsets
    scale = np.sum(np.abs(W), axis=1)
    wk = W @ g.k
    positive = wk > GEOM_RTOL * (1.0 + np.max(np.abs(g.k))) * scale
    D = g.a[None, :] - Y
    S = row_dots(D, W) - b
    tol = geom_tol(D)[:, None] * scale[None, :]
    out = np.full(len(Y), -math.inf)
    if np.any(~positive):
        blocked = np.any(S[:, ~positive] < -tol[:, ~positive], axis=1)
    else:
        blocked = np.zeros(len(Y), dtype=bool)
    if np.any(positive):
        out = np.max(-S[:, positive] / wk[positive], axis=1)
    out[blocked] = math.inf
    return out


def phi_polyhedral(g: GerstewitzFunctional, y) -> PhiStatus:
    if not g.polyhedral:
        raise UnsupportedRepresentation(f"{g.H!r} is not polyhedral")
    y = as_point(y, g.dim)
    return PhiStatus(float(_polyhedral_values(g, y[None, :])[0]), Certainty.EXACT)


# -- bisection --------------------------------------------------------------------

def _bisection_values(g: GerstewitzFunctional, Y: np.ndarray, tol: float, t_max: float) -> np.ndarray:
    n = len(Y)
    D = g.a[None, :] - Y
    member = g.H.line_oracle(D, g.k)
    t0 = np.clip(-row_dots(D, g.k[None, :])[:, 0] / float(g.k @ g.k), -t_max, t_max)

    out = np.full(n, np.nan)
    lo = t0.copy()
    hi = t0.copy()
    feasible = member(t0)

    # Bracket downward from feasible starts and upward from infeasible ones.
    step = np.ones(n)
    down = feasible.copy()
    up = ~feasible
    while np.any(down) or np.any(up):
        cand = np.where(down, np.maximum(hi - step, -t_max), np.minimum(lo + step, t_max))
        f = member(cand)
        at_edge = np.where(down, cand <= -t_max, cand >= t_max)
        # downward: a feasible candidate moves hi; an infeasible one closes the bracket
        hit_down = down & f
        hi = np.where(hit_down, cand, hi)
        lo = np.where(down & ~f, cand, lo)
        out[hit_down & at_edge] = -math.inf
        # upward: an infeasible candidate moves lo; a feasible one closes the bracket
        miss_up = up & ~f
        lo = np.where(miss_up, cand, lo)
        hi = np.where(up & f, cand, hi)
        out[miss_up & at_edge] = math.inf
        down = hit_down & ~at_edge
        up = miss_up & ~at_edge
        step *= 2.0

    live = np.isnan(out)
    while True:
        width = hi - lo
        mid = lo + 0.5 * width
        active = live & (width > 0.5 * tol) & (mid > lo) & (mid < hi)
        if not np.any(active):
            break
        f = member(mid)
        hi = np.where(active & f, mid, hi)
        lo = np.where(active & ~f, mid, lo)

    if np.any(live):
        # Membership must persist above the returned level.
        for s in MONOTONE_PROBES:
            probe = np.minimum(hi + s * np.maximum(1.0, np.abs(hi)), t_max)
            bad = live & ~member(probe)
            if np.any(bad):
                i = int(np.flatnonzero(bad)[0])
                raise InvariantViolation(
                    f"membership along y + R k is not monotone: feasible at t={hi[i]!r}, "
                    f"infeasible at t={probe[i]!r}"
                )
    out[live] = hi[live]
    return out


def phi_bisection(g: GerstewitzFunctional, y, tol: float | None = None, t_max: float | None = None) -> PhiStatus:
    tol = g.tol if tol is None else tol
    t_max = g.t_max if t_max is None else t_max
    if not (tol > 0 and t_max > 0):
        raise ValueError("tol and t_max must be positive")
    y = as_point(y, g.dim)
    value = float(_bisection_values(g, y[None, :], tol, t_max)[0])
    if math.isfinite(value):
        return PhiStatus(value, Certainty.BRACKETED, tol)
    return PhiStatus(value, Certainty.HEURISTIC_INFINITY, t_max)


def phi_bisection_values(g: GerstewitzFunctional, Y, tol: float | None = None, t_max: float | None = None) -> np.ndarray:
    Y = as_points(Y, g.dim)
    return _bisection_values(g, Y, g.tol if tol is None else tol, g.t_max if t_max is None else t_max)


# -- dispatch ---------------------------------------------------------------------

def phi_values(g: GerstewitzFunctional, Y) -> np.ndarray:
    """Vectorised ``phi`` over the rows of ``Y``."""
    Y = as_points(Y, g.dim)
    if len(Y) == 0:
        return np.zeros(0)
    if g.polyhedral:
        return _polyhedral_values(g, Y)
    return _bisection_values(g, Y, g.tol, g.t_max)


def status_of(g: GerstewitzFunctional, value: float) -> PhiStatus:
    if g.polyhedral:
        return PhiStatus(float(value), Certainty.EXACT)
    if math.isfinite(value):
        return PhiStatus(float(value), Certainty.BRACKETED, g.tol)
    return PhiStatus(float(value), Certainty.HEURISTIC_INFINITY, g.t_max)


def phi(g: GerstewitzFunctional, y) -> PhiStatus:
    if g.polyhedral:
        return phi_polyhedral(g, y)
    return phi_bisection(g, y)


def classify(g: GerstewitzFunctional, y) -> Classification:
    value = phi(g, y).value
    if value == -math.inf:
        return Classification.NEG_INF_LINE
    if value == math.inf:
        return Classification.NOT_IN_DOMAIN
    return Classification.IN_DOMAIN_FINITE


def level_contains(g: GerstewitzFunctional, t: float, y) -> bool:
    """``y in a - H + t k``."""
    return bool(level_contains_many(g, t, as_point(y, g.dim)[None, :])[0])


def level_contains_many(g: GerstewitzFunctional, t, Y) -> np.ndarray:
    """Row-wise ``Y_i in a - H + t_i k``, using the same line oracle as bisection."""
    Y = as_points(Y, g.dim)
    t = np.broadcast_to(np.asarray(t, dtype=float), (len(Y),))
    return g.H.line_oracle(g.a[None, :] - Y, g.k)(t)


def level_interior_contains(g: GerstewitzFunctional, t: float, y) -> TriBool:
    """``y in a - int H + t k``."""
    y = as_point(y, g.dim)
    return g.H.interior_contains(g.a + t * g.k - y)


# -- structural report ------------------------------------------------------------

@dataclass(frozen=True)
class PropernessReport:
    proper: TriBool
    finite_valued: TriBool
    no_real_values: TriBool
    reasons: tuple[str, ...]


def properness_report(g: GerstewitzFunctional) -> PropernessReport:
    H, k = g.H, g.k
    reasons = []
    line = H.contains_line_in_direction(k)
    proper = ~line
    if line is TriBool.TRUE:
        reasons.append(f"H contains a line in direction {k.tolist()}: phi takes the value -inf")
    elif line is TriBool.FALSE:
        reasons.append(f"H contains no line in direction {k.tolist()}: phi never takes -inf")
    if H.convex and proper is TriBool.UNKNOWN:
        minus = H.recession_contains(-k)
        if minus is TriBool.FALSE:
            proper = TriBool.TRUE
            reasons.append("H convex and -k outside the recession cone")

    no_real = H.recession_contains(k) & H.recession_contains(-k) if H.convex else TriBool.UNKNOWN
    if no_real is TriBool.TRUE:
        reasons.append("both k and -k are recession directions: phi attains no real value")

    interior = H.recession_interior_contains(k)
    declared = H.finite_valued_direction(k)
    if declared is not TriBool.UNKNOWN:
        finite = declared
    elif interior is TriBool.TRUE:
        finite = TriBool.TRUE
    elif no_real is TriBool.TRUE:
        finite = TriBool.FALSE
    else:
        finite = TriBool.UNKNOWN
    if interior is TriBool.TRUE:
        reasons.append("k is interior to the recession cone: phi is finite-valued")
    elif finite is TriBool.TRUE:
        reasons.append("k is not interior to the recession cone, yet every line y + R k meets the boundary of H")
    elif finite is TriBool.FALSE:
        reasons.append("some line y + R k misses a - H entirely: phi takes the value +inf")
    return PropernessReport(proper, finite, no_real, tuple(reasons))
