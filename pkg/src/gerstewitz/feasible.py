"""Feasible sets ``F``: finite point lists, boxed grids and named parametric curves.

Continuous sets are handled through a parameter box that can be sampled at
any step and, for unbounded sets, extended by range doublings. Structural
facts that the existence rules need (closedness, compactness, a lower bound,
convexity, an exact polyhedral description) are declared per set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DimensionMismatch, UnsupportedRepresentation
from .geometry import Halfspaces, SetRep, TriBool, as_point, as_points, polyhedral_form


class FeasibleSet:
    dim: int
    description: str = ""
    finite: bool = False
    closed: TriBool = TriBool.UNKNOWN
    compact: TriBool = TriBool.UNKNOWN
    convex: bool = False
    polyhedron: Halfspaces | None = None

    def lower_bound(self) -> np.ndarray | None:
        """Some ``u`` with ``F ⊆ u + R^l_+``, or ``None`` if no such ``u`` is known."""
        return None

    def bounded_below(self) -> TriBool:
        return TriBool.UNKNOWN

    def representative_points(self) -> np.ndarray:
        raise NotImplementedError


class FinitePoints(FeasibleSet):
    finite = True
    closed = TriBool.TRUE
    compact = TriBool.TRUE

    def __init__(self, points, declared_convex: bool = False):
        P = as_points(points)
        if len(P) == 0:
            raise ValueError("a finite feasible set needs at least one point")
        P.setflags(write=False)
        self.points = P
        self.dim = P.shape[1]
        self.convex = bool(declared_convex) or len(np.unique(P, axis=0)) == 1
        self.description = f"{len(P)} points in R^{self.dim}"

    def __repr__(self) -> str:
        return f"FinitePoints(n={len(self.points)}, dim={self.dim})"

    def __len__(self) -> int:
        return len(self.points)

    def lower_bound(self) -> np.ndarray:
        return self.points.min(axis=0)

    def bounded_below(self) -> TriBool:
        return TriBool.TRUE

    def representative_points(self) -> np.ndarray:
        return self.points


@dataclass(frozen=True)
class Axis:
    """One parameter axis; ``log2`` axes store the exponent of a positive quantity."""

    lo: float
    hi: float
    step: float
    log2: bool = False
    grow_lo: bool = False
    grow_hi: bool = False

    def bounds(self, j: int) -> tuple[float, float]:
        """Range after ``j`` doublings of the underlying quantity's extent."""
        if self.log2:
            return self.lo - j * self.grow_lo, self.hi + j * self.grow_hi
        return self.lo * 2.0 ** (j * self.grow_lo), self.hi * 2.0 ** (j * self.grow_hi)


def _axis_values(lo: float, hi: float, step: float) -> np.ndarray:
    n = max(1, int(round((hi - lo) / step)))
    return np.linspace(lo, hi, n + 1)


class ParametricSet(FeasibleSet):
    """``F = {embed(p) : p in box, valid(p)}`` plus finitely many extra points."""

    axes: tuple[Axis, ...]
    extras: np.ndarray

    def embed(self, P: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def valid(self, P: np.ndarray, Y: np.ndarray) -> np.ndarray:
        return np.ones(len(P), dtype=bool)

    @property
    def extendable(self) -> bool:
        return any(ax.grow_lo or ax.grow_hi for ax in self.axes)

    @property
    def steps(self) -> np.ndarray:
        return np.array([ax.step for ax in self.axes])

    def box(self, j: int = 0) -> tuple[np.ndarray, np.ndarray]:
        b = [ax.bounds(j) for ax in self.axes]
        return np.array([x[0] for x in b]), np.array([x[1] for x in b])

    def param_grid(self, j: int = 0) -> np.ndarray:
        lo, hi = self.box(j)
        values = [_axis_values(l, h, ax.step) for l, h, ax in zip(lo, hi, self.axes)]
        mesh = np.meshgrid(*values, indexing="ij")
        return np.column_stack([m.reshape(-1) for m in mesh])

    def local_grid(self, centres: np.ndarray, half_width: np.ndarray, step: np.ndarray, j: int) -> np.ndarray:
        """Parameter grids of the given step spanning ``centre ± half_width``, clipped to the box."""
        lo, hi = self.box(j)
        offsets = [np.linspace(-h, h, int(round(2 * h / s)) + 1) for h, s in zip(half_width, step)]
        mesh = np.meshgrid(*offsets, indexing="ij")
        local = np.column_stack([m.reshape(-1) for m in mesh])
        P = (centres[:, None, :] + local[None, :, :]).reshape(-1, len(self.axes))
        inside = np.all((P >= lo - 1e-12) & (P <= hi + 1e-12), axis=1)
        return np.clip(P[inside], lo, hi)

    def points(self, P: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Valid parameters and their embedded points."""
        if len(P) == 0:
            return P, np.zeros((0, self.dim))
        Y = self.embed(P)
        keep = self.valid(P, Y)
        return P[keep], Y[keep]

    def on_growing_edge(self, P: np.ndarray, j: int) -> np.ndarray:
        lo, hi = self.box(j)
        mask = np.zeros(len(P), dtype=bool)
        for i, ax in enumerate(self.axes):
            tol = 1e-9 * (1.0 + abs(hi[i] - lo[i]))
            if ax.grow_lo:
                mask |= P[:, i] <= lo[i] + tol
            if ax.grow_hi:
                mask |= P[:, i] >= hi[i] - tol
        return mask

    def representative_points(self, j: int = 0) -> np.ndarray:
        _, Y = self.points(self.param_grid(j))
        return np.vstack([Y, self.extras]) if len(self.extras) else Y


class GridRegion(ParametricSet):
    """``box ∩ membership`` sampled on a regular grid with ``resolution`` points per axis."""

    closed = TriBool.TRUE
    compact = TriBool.TRUE

    def __init__(self, lo, hi, resolution: int = 21, membership: SetRep | None = None):
        lo = as_point(lo)
        hi = as_point(hi, len(lo))
        if np.any(hi < lo):
            raise ValueError("grid box needs lo <= hi")
        if int(resolution) < 2:
            raise ValueError("grid resolution must be >= 2")
        if membership is not None and membership.dim != len(lo):
            raise DimensionMismatch(f"membership set in R^{membership.dim}, box in R^{len(lo)}")
        self.lo, self.hi = lo, hi
        self.resolution = int(resolution)
        self.membership = membership
        self.dim = len(lo)
        span = np.where(hi > lo, hi - lo, 1.0)
        self.axes = tuple(Axis(l, h, s / (self.resolution - 1)) for l, h, s in zip(lo, hi, span))
        self.extras = np.zeros((0, self.dim))
        self.convex = membership is None or membership.convex
        box = Halfspaces(np.vstack([np.eye(self.dim), -np.eye(self.dim)]), np.concatenate([lo, -hi]))
        if membership is None:
            self.polyhedron = box
        elif membership.polyhedral:
            m = polyhedral_form(membership)
            self.polyhedron = Halfspaces(np.vstack([box.normals, m.normals]), np.concatenate([box.offsets, m.offsets]))
        self.description = f"grid over [{lo.tolist()}, {hi.tolist()}] at {self.resolution} points per axis"

    def __repr__(self) -> str:
        return f"GridRegion(lo={self.lo.tolist()}, hi={self.hi.tolist()}, resolution={self.resolution})"

    def embed(self, P):
        return P.copy()

    def valid(self, P, Y):
        if self.membership is None:
            return np.ones(len(P), dtype=bool)
        return self.membership.contains_many(Y)

    def lower_bound(self) -> np.ndarray:
        return self.lo.copy()

    def bounded_below(self) -> TriBool:
        return TriBool.TRUE


@dataclass(frozen=True)
class CurveInfo:
    description: str
    dim: int
    axes: tuple[Axis, ...]
    embed: Callable[[np.ndarray], np.ndarray]
    valid: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None
    extras: tuple = ()
    closed: bool = True
    compact: bool = False
    convex: bool = True
    lower_bound: tuple | None = None
    polyhedron: tuple | None = None  # (normals, offsets) when F is exactly a polyhedron


def _plane_curve(third: Callable[[np.ndarray, np.ndarray], np.ndarray]):
    def embed(P):
        y1 = 2.0 ** P[:, 0]
        y2 = -(2.0 ** -P[:, 0]) - P[:, 1]
        return np.column_stack([y1, y2, third(y1, y2)])

    return embed


CURVES: dict[str, CurveInfo] = {
    "triangle_ex311": CurveInfo(
        description="triangle {0 <= y2 <= y1 <= 1}",
        dim=2,
        axes=(Axis(0.0, 1.0, 0.05), Axis(0.0, 1.0, 0.05)),
        embed=lambda P: P.copy(),
        valid=lambda P, Y: Y[:, 1] <= Y[:, 0] + 1e-12,
        compact=True,
        lower_bound=(0.0, 0.0),
        polyhedron=([[0.0, 1.0], [1.0, -1.0], [-1.0, 0.0]], [0.0, 0.0, -1.0]),
    ),
    "hyperbola_branch_ex613": CurveInfo(
        description="branch {y1 > 0, y2 = 1/y1}",
        dim=2,
        axes=(Axis(-2.0, 2.0, 0.125, log2=True, grow_lo=True, grow_hi=True),),
        embed=lambda P: np.column_stack([2.0 ** P[:, 0], 2.0 ** -P[:, 0]]),
        convex=False,
        lower_bound=(0.0, 0.0),
    ),
    "xaxis_ex614": CurveInfo(
        description="horizontal axis {y2 = 0}",
        dim=2,
        axes=(Axis(-4.0, 4.0, 0.05, grow_lo=True, grow_hi=True),),
        embed=lambda P: np.column_stack([P[:, 0], np.zeros(len(P))]),
        polyhedron=([[0.0, 1.0], [0.0, -1.0]], [0.0, 0.0]),
    ),
    "plane_curve_ex615": CurveInfo(
        description="{2y1 + y2 + 2y3 = 0, y1 > 0, y2 <= -1/y1}",
        dim=3,
        axes=(
            Axis(-2.0, 2.0, 0.125, log2=True, grow_lo=True, grow_hi=True),
            Axis(0.0, 4.0, 0.25, grow_hi=True),
        ),
        embed=_plane_curve(lambda y1, y2: -(2.0 * y1 + y2) / 2.0),
    ),
    "plane_curve_ex616": CurveInfo(
        description="{y1 + y3 = 0, y1 > 0, y2 <= -1/y1}",
        dim=3,
        axes=(
            Axis(-2.0, 2.0, 0.125, log2=True, grow_lo=True, grow_hi=True),
            Axis(0.0, 4.0, 0.25, grow_hi=True),
        ),
        embed=_plane_curve(lambda y1, y2: -y1),
    ),
    "parabola_arc_ex617": CurveInfo(
        description="{y1 >= 0, y2 = -y1^2} together with the point (-1, 0)",
        dim=2,
        axes=(Axis(0.0, 128.0, 0.5, grow_hi=True),),
        embed=lambda P: np.column_stack([P[:, 0], -P[:, 0] ** 2]),
        extras=((-1.0, 0.0),),
        convex=False,
    ),
    "orthant_ex618": CurveInfo(
        description="nonnegative quadrant R^2_+",
        dim=2,
        axes=(Axis(0.0, 2.0, 0.125, grow_hi=True), Axis(0.0, 2.0, 0.125, grow_hi=True)),
        embed=lambda P: P.copy(),
        lower_bound=(0.0, 0.0),
        polyhedron=([[1.0, 0.0], [0.0, 1.0]], [0.0, 0.0]),
    ),
    "wedge_sep": CurveInfo(
        description="wedge {y1 >= 0, y2 >= -y1/2}",
        dim=2,
        axes=(Axis(0.0, 2.0, 0.125, grow_hi=True), Axis(0.0, 2.0, 0.125, grow_hi=True)),
        embed=lambda P: np.column_stack([P[:, 0], P[:, 1] - P[:, 0] / 2.0]),
        polyhedron=([[1.0, 0.0], [1.0, 2.0]], [0.0, 0.0]),
    ),
}


class BuiltinCurve(ParametricSet):
    """A named continuous feasible set from :data:`CURVES`.

    ``steps`` overrides the per-axis sampling step.
    """

    def __init__(self, name: str, steps=None):
        if name not in CURVES:
            raise UnsupportedRepresentation(f"unknown curve {name!r}; choose from {sorted(CURVES)}")
        info = CURVES[name]
        self.name = name
        self.info = info
        self.dim = info.dim
        axes = info.axes
        if steps is not None:
            steps = np.broadcast_to(np.asarray(steps, dtype=float), (len(axes),))
            if np.any(steps <= 0):
                raise ValueError("sampling steps must be positive")
            axes = tuple(Axis(ax.lo, ax.hi, float(s), ax.log2, ax.grow_lo, ax.grow_hi) for ax, s in zip(axes, steps))
        self.axes = axes
        self.extras = np.array(info.extras, dtype=float).reshape(-1, self.dim)
        self.closed = TriBool.of(info.closed)
        self.compact = TriBool.of(info.compact)
        self.convex = info.convex
        if info.polyhedron is not None:
            self.polyhedron = Halfspaces(*info.polyhedron)
        self.description = info.description

    def __repr__(self) -> str:
        return f"BuiltinCurve({self.name!r})"

    def embed(self, P):
        return self.info.embed(np.asarray(P, dtype=float))

    def valid(self, P, Y):
        if self.info.valid is None:
            return np.ones(len(P), dtype=bool)
        return self.info.valid(P, Y)

    def lower_bound(self):
        lb = self.info.lower_bound
        if lb is None:
            return None
        lb = np.array(lb, dtype=float)
        if len(self.extras):
            lb = np.minimum(lb, self.extras.min(axis=0))
        return lb

    def bounded_below(self) -> TriBool:
        return TriBool.of(self.info.lower_bound is not None)


class Ray(ParametricSet):
    """``{origin + s * direction : s >= 0}``."""

    closed = TriBool.TRUE
    compact = TriBool.FALSE
    convex = True

    def __init__(self, origin, direction, step: float = 0.05, reach: float = 4.0):
        self.origin = as_point(origin)
        self.direction = as_point(direction, len(self.origin))
        if not np.any(self.direction != 0.0):
            raise ValueError("ray direction must be nonzero")
        self.dim = len(self.origin)
        self.axes = (Axis(0.0, float(reach), float(step), grow_hi=True),)
        self.extras = np.zeros((0, self.dim))
        self.description = f"ray from {self.origin.tolist()} along {self.direction.tolist()}"

    def __repr__(self) -> str:
        return f"Ray({self.origin.tolist()}, {self.direction.tolist()})"

    def embed(self, P):
        return self.origin[None, :] + P[:, :1] * self.direction[None, :]

    def lower_bound(self):
        if np.all(self.direction >= 0):
            return self.origin.copy()
        return None

    def bounded_below(self) -> TriBool:
        return TriBool.of(bool(np.all(self.direction >= 0)))


class LevelRestricted(ParametricSet):
    """``base ∩ (a - H + t0 k)`` for a parametric base set."""

    def __init__(self, base: ParametricSet, g, t0: float):
        from .functional import level_contains_many

        self.base, self.g, self.t0 = base, g, float(t0)
        self._level = level_contains_many
        self.dim = base.dim
        self.axes = base.axes
        extras = base.extras
        self.extras = extras[level_contains_many(g, self.t0, extras)] if len(extras) else extras
        self.closed = base.closed & TriBool.TRUE
        self.compact = base.compact
        self.convex = base.convex and g.H.convex
        self.description = f"{base.description} restricted to level {self.t0!r}"

    def __repr__(self) -> str:
        return f"LevelRestricted({self.base!r}, t0={self.t0!r})"

    def embed(self, P):
        return self.base.embed(P)

    def valid(self, P, Y):
        return self.base.valid(P, Y) & self._level(self.g, self.t0, Y)

    def lower_bound(self):
        return self.base.lower_bound()

    def bounded_below(self) -> TriBool:
        # the cut may bound a set that was unbounded below
        return TriBool.TRUE if self.base.bounded_below() is TriBool.TRUE else TriBool.UNKNOWN
