"""Closed sets in R^l and the predicates the scalarization machinery needs.

Four representations are provided:

* :class:`Halfspaces` -- ``{y : <w_i, y> >= b_i for all i}``, exact predicates.
* :class:`Orthant` -- the nonnegative orthant, a :class:`Halfspaces` special case.
* :class:`GeneratorCone` -- ``cone(g_1, ..., g_m)``; converted to halfspaces
  for l <= 3.
* :class:`BuiltinSet` -- a small registry of analytic sets whose membership,
  interior and recession cone are known in closed form.

The ambient space is always R^l, so core and interior coincide.

Predicates that may be undecidable for a representation return
:class:`TriBool`; plain membership returns ``bool``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np
from scipy.optimize import linprog

from .errors import DegenerateGenerators, DimensionMismatch, InvariantViolation, UnsupportedRepresentation

GEOM_RTOL = 1e-12
LP_TOL = 1e-9


class TriBool(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, flag: bool) -> TriBool:
        return cls.TRUE if flag else cls.FALSE

    @classmethod
    def all_of(cls, values) -> TriBool:
        out = cls.TRUE
        for v in values:
            out = out & v
        return out

    @classmethod
    def any_of(cls, values) -> TriBool:
        out = cls.FALSE
        for v in values:
            out = out | v
        return out

    def __and__(self, other: TriBool) -> TriBool:
        if TriBool.FALSE in (self, other):
            return TriBool.FALSE
        if TriBool.UNKNOWN in (self, other):
            return TriBool.UNKNOWN
        return TriBool.TRUE

    def __or__(self, other: TriBool) -> TriBool:
        if TriBool.TRUE in (self, other):
            return TriBool.TRUE
        if TriBool.UNKNOWN in (self, other):
            return TriBool.UNKNOWN
        return TriBool.FALSE

    def __invert__(self) -> TriBool:
        if self is TriBool.UNKNOWN:
            return self
        return TriBool.FALSE if self is TriBool.TRUE else TriBool.TRUE

    def __bool__(self):
        raise TypeError("TriBool has no implicit truth value; compare against TriBool.TRUE")

    def __str__(self) -> str:
        return self.value


def as_point(y, dim: int | None = None) -> np.ndarray:
    """Coerce ``y`` to a finite 1-D float array, optionally checking its length."""
    arr = np.asarray(y, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionMismatch(f"expected a non-empty 1-D point, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("point coordinates must be finite")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionMismatch(f"expected a point in R^{dim}, got R^{arr.shape[0]}")
    return arr


def as_points(Y, dim: int | None = None) -> np.ndarray:
    """Coerce ``Y`` to an ``(n, l)`` float array of finite rows."""
    arr = np.asarray(Y, dtype=float)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected an (n, l) array of points, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("point coordinates must be finite")
    if dim is not None and arr.shape[1] != dim:
        raise DimensionMismatch(f"expected points in R^{dim}, got R^{arr.shape[1]}")
    return arr


def geom_tol(Y: np.ndarray) -> np.ndarray:
    """Equality tolerance ``1e-12 * (1 + ||y||_inf)`` for each row of ``Y``."""
    Y = np.atleast_2d(Y)
    return GEOM_RTOL * (1.0 + np.max(np.abs(Y), axis=1))


def row_dots(Y: np.ndarray, W: np.ndarray) -> np.ndarray:
    """``Y @ W.T`` reduced row by row, so a value never depends on the batch it sits in."""
    return np.sum(Y[:, None, :] * W[None, :, :], axis=2)


def _lp(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, bounds=(None, None)):
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq, bounds=bounds, method="highs")
    return res.status, res.x, res.fun


class SetRep:
    """Common interface of every set representation.

    Subclasses implement the ``*_many`` vectorised predicates; the scalar
    wrappers here validate dimensions.
    """

    dim: int
    convex: bool = True
    polyhedral: bool = False

    # -- membership ---------------------------------------------------------
    def contains_many(self, Y: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def interior_many(self, Y: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def contains(self, y) -> bool:
        return bool(self.contains_many(as_point(y, self.dim)[None, :])[0])

    def interior_contains(self, y) -> TriBool:
        return TriBool.of(bool(self.interior_many(as_point(y, self.dim)[None, :])[0]))

    def boundary_many(self, Y: np.ndarray) -> np.ndarray:
        Y = as_points(Y, self.dim)
        return self.contains_many(Y) & ~self.interior_many(Y)

    def line_oracle(self, D: np.ndarray, k: np.ndarray) -> Callable[[np.ndarray], np.ndarray]:
        """Return ``t -> [D_i + t_i k in S]`` with the tolerance anchored at ``D``.

        Membership along a line is evaluated without letting a huge ``t``
        inflate the equality tolerance.
        """
        D = as_points(D, self.dim)
        k = as_point(k, self.dim)
        return lambda t: self.contains_many(D + np.asarray(t, dtype=float)[:, None] * k)

    # -- recession cone -----------------------------------------------------
    def recession_contains(self, u) -> TriBool:
        raise NotImplementedError

    def recession_interior_contains(self, u) -> TriBool:
        raise NotImplementedError

    def contains_line_in_direction(self, d) -> TriBool:
        raise NotImplementedError

    # -- structural properties ---------------------------------------------
    def is_nonempty(self) -> TriBool:
        return TriBool.TRUE

    def is_cone(self) -> TriBool:
        return TriBool.UNKNOWN

    def is_pointed(self) -> TriBool:
        """``S ∩ (-S) ⊆ {0}``."""
        return TriBool.UNKNOWN

    def is_additive(self) -> TriBool:
        """``S + S ⊆ S``."""
        return TriBool.UNKNOWN

    def is_nontrivial_cone(self) -> TriBool:
        return TriBool.UNKNOWN

    def shift_interior(self, k) -> TriBool:
        """``S + R_> k ⊆ int S``."""
        return TriBool.UNKNOWN

    def orthant_shift_interior(self) -> TriBool:
        """``S + (R^l_+ minus {0}) ⊆ int S``."""
        return TriBool.UNKNOWN

    def finite_valued_direction(self, k) -> TriBool:
        """Whether ``y -> inf{t : y in a - S + t k}`` is real everywhere."""
        return TriBool.UNKNOWN

    def orthant_in_recession(self) -> TriBool:
        eye = np.eye(self.dim)
        return TriBool.all_of(self.recession_contains(e) for e in eye)

    def _check_dim(self, y) -> np.ndarray:
        return as_point(y, self.dim)


class Halfspaces(SetRep):
    """``{y in R^l : normals @ y >= offsets}``."""

    polyhedral = True

    def __init__(self, normals, offsets=None):
        W = np.asarray(normals, dtype=float)
        if W.ndim == 1:
            W = W[None, :]
        if W.ndim != 2 or W.shape[0] == 0 or W.shape[1] == 0:
            raise ValueError("halfspace intersection needs a non-empty (m, l) normal matrix")
        b = np.zeros(W.shape[0]) if offsets is None else np.asarray(offsets, dtype=float).reshape(-1)
        if b.shape[0] != W.shape[0]:
            raise DimensionMismatch(f"{W.shape[0]} normals but {b.shape[0]} offsets")
        if not (np.all(np.isfinite(W)) and np.all(np.isfinite(b))):
            raise ValueError("halfspace data must be finite")
        if np.any(np.max(np.abs(W), axis=1) == 0.0):
            raise ValueError("halfspace normal must be nonzero")
        W.setflags(write=False)
        b.setflags(write=False)
        self.normals = W
        self.offsets = b
        self.dim = W.shape[1]
        self._row_scale = np.sum(np.abs(W), axis=1)

    def __repr__(self) -> str:
        return f"Halfspaces(normals={self.normals.tolist()}, offsets={self.offsets.tolist()})"

    def _tol(self, Y: np.ndarray) -> np.ndarray:
        return geom_tol(Y)[:, None] * self._row_scale[None, :]

    def slack(self, Y) -> np.ndarray:
        Y = as_points(Y, self.dim)
        return row_dots(Y, self.normals) - self.offsets

    def contains_many(self, Y) -> np.ndarray:
        Y = as_points(Y, self.dim)
        return np.all(self.slack(Y) >= -self._tol(Y), axis=1)

    def interior_many(self, Y) -> np.ndarray:
        Y = as_points(Y, self.dim)
        return np.all(self.slack(Y) > self._tol(Y), axis=1)

    def line_oracle(self, D, k):
        D = as_points(D, self.dim)
        k = as_point(k, self.dim)
        base = row_dots(D, self.normals) - self.offsets
        rate = self.normals @ k
        tol = self._tol(D)
        return lambda t: np.all(base + np.asarray(t, dtype=float)[:, None] * rate >= -tol, axis=1)

    def _direction_products(self, u) -> tuple[np.ndarray, np.ndarray]:
        u = self._check_dim(u)
        return self.normals @ u, geom_tol(u)[0] * self._row_scale

    def recession_contains(self, u) -> TriBool:
        wu, tol = self._direction_products(u)
        return TriBool.of(bool(np.all(wu >= -tol)))

    def recession_interior_contains(self, u) -> TriBool:
        # {u : Wu >= 0} has interior {u : Wu > 0}; a tight row puts u on the boundary.
        wu, tol = self._direction_products(u)
        return TriBool.of(bool(np.all(wu > tol)))

    def contains_line_in_direction(self, d) -> TriBool:
        wd, tol = self._direction_products(d)
        if not np.all(np.abs(wd) <= tol):
            return TriBool.FALSE
        return self.is_nonempty()

    # -- LP-backed structure ------------------------------------------------
    @cached_property
    def _nonempty(self) -> TriBool:
        status, _, _ = _lp(np.zeros(self.dim), A_ub=-self.normals, b_ub=-self.offsets)
        if status == 0:
            return TriBool.TRUE
        if status == 2:
            return TriBool.FALSE
        return TriBool.UNKNOWN

    def is_nonempty(self) -> TriBool:
        return self._nonempty

    def row_minimum(self, i: int) -> tuple[int, float]:
        """LP status and value of ``min <w_i, y>`` over the set."""
        status, _, fun = _lp(self.normals[i], A_ub=-self.normals, b_ub=-self.offsets)
        return status, (fun if status == 0 else -math.inf)

    def _row_never_tight(self, i: int) -> TriBool:
        status, fun = self.row_minimum(i)
        if status == 2:
            return TriBool.TRUE
        if status != 0:
            return TriBool.UNKNOWN
        return TriBool.of(fun > self.offsets[i] + LP_TOL * (1.0 + abs(self.offsets[i])))

    def is_cone(self) -> TriBool:
        if np.any(self.offsets > LP_TOL):
            return TriBool.FALSE
        if np.all(self.offsets == 0.0):
            return TriBool.TRUE
        # 0 in S and S convex: S is a cone iff S ⊆ {Wy >= 0}.
        out = TriBool.TRUE
        for i in np.flatnonzero(self.offsets < 0.0):
            status, fun = self.row_minimum(int(i))
            if status == 0:
                out = out & TriBool.of(fun >= -LP_TOL)
            elif status == 3:
                return TriBool.FALSE
            else:
                out = out & TriBool.UNKNOWN
        return out

    def is_pointed(self) -> TriBool:
        if np.all(self.offsets == 0.0):
            return TriBool.of(np.linalg.matrix_rank(self.normals) == self.dim)
        # S ∩ (-S) = {b <= Wy <= -b}; it lies in {0} iff every coordinate is pinned to 0.
        A_ub = np.vstack([-self.normals, self.normals])
        b_ub = np.concatenate([-self.offsets, -self.offsets])
        out = TriBool.TRUE
        for j in range(self.dim):
            for sign in (1.0, -1.0):
                c = np.zeros(self.dim)
                c[j] = sign
                status, _, fun = _lp(c, A_ub=A_ub, b_ub=b_ub)
                if status == 2:
                    return TriBool.TRUE
                if status == 3:
                    return TriBool.FALSE
                if status != 0:
                    out = out & TriBool.UNKNOWN
                else:
                    out = out & TriBool.of(abs(fun) <= LP_TOL)
        return out

    def is_nontrivial_cone(self) -> TriBool:
        cone = self.is_cone()
        if cone is not TriBool.TRUE:
            return cone
        # Nonzero normals rule out Y; it remains to rule out {0}.
        for j in range(self.dim):
            for sign in (1.0, -1.0):
                c = np.zeros(self.dim)
                c[j] = -sign
                status, _, fun = _lp(c, A_ub=-self.normals, b_ub=-self.offsets, bounds=(-1.0, 1.0))
                if status != 0:
                    return TriBool.UNKNOWN
                if -fun > LP_TOL:
                    return TriBool.TRUE
        return TriBool.FALSE

    def is_additive(self, rng: np.random.Generator | None = None) -> TriBool:
        if self.is_cone() is TriBool.TRUE or np.all(self.offsets >= 0.0):
            return TriBool.TRUE
        rng = np.random.default_rng(0) if rng is None else rng
        pts = self.sample_points(25, rng)
        if len(pts) == 0:
            return TriBool.UNKNOWN
        sums = (pts[:, None, :] + pts[None, :, :]).reshape(-1, self.dim)[:500]
        if not np.all(self.contains_many(sums)):
            return TriBool.FALSE
        return TriBool.UNKNOWN

    def sample_points(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Extreme points of the set hit by random linear objectives, inside a big box."""
        pts = []
        for _ in range(n):
            c = rng.normal(size=self.dim)
            status, x, _ = _lp(c, A_ub=-self.normals, b_ub=-self.offsets, bounds=(-1e3, 1e3))
            if status == 0:
                pts.append(x)
        return np.array(pts).reshape(-1, self.dim)

    def shift_interior(self, k) -> TriBool:
        wk, tol = self._direction_products(k)
        if np.any(wk < -tol):
            return TriBool.FALSE
        out = TriBool.TRUE
        for i in np.flatnonzero(wk <= tol):
            out = out & self._row_never_tight(int(i))
        return out

    def orthant_shift_interior(self) -> TriBool:
        if np.any(self.normals < 0.0):
            return TriBool.FALSE
        out = TriBool.TRUE
        for i in np.flatnonzero(np.any(self.normals == 0.0, axis=1)):
            out = out & self._row_never_tight(int(i))
        return out

    def finite_valued_direction(self, k) -> TriBool:
        # A row orthogonal to k leaves half of Y outside the domain.
        wk, tol = self._direction_products(k)
        return TriBool.of(bool(np.all(wk > tol)))


class Orthant(Halfspaces):
    """The closed nonnegative orthant of R^dim."""

    def __init__(self, dim: int):
        if int(dim) < 1:
            raise ValueError("orthant dimension must be >= 1")
        super().__init__(np.eye(int(dim)), np.zeros(int(dim)))

    def __repr__(self) -> str:
        return f"Orthant({self.dim})"

    def is_nonempty(self) -> TriBool:
        return TriBool.TRUE

    def is_cone(self) -> TriBool:
        return TriBool.TRUE

    def is_pointed(self) -> TriBool:
        return TriBool.TRUE

    def is_nontrivial_cone(self) -> TriBool:
        return TriBool.TRUE

    def is_additive(self, rng=None) -> TriBool:
        return TriBool.TRUE


def generators_to_halfspaces(generators) -> Halfspaces:
    """Facet description of a full-dimensional pointed cone in R^2 or R^3.

    Candidate normals are perpendicular to single generators (l = 2) or to
    cross products of generator pairs (l = 3); a candidate is a facet when all
    generators lie on one side of it.
    """
    G = as_points(generators)
    dim = G.shape[1]
    if dim not in (2, 3):
        raise UnsupportedRepresentation(f"generator cones are supported for l in {{2, 3}}, got l={dim}")
    if np.any(np.max(np.abs(G), axis=1) == 0.0):
        raise DegenerateGenerators("cone generators must be nonzero")
    if np.linalg.matrix_rank(G) < dim:
        raise DegenerateGenerators("generators do not span a full-dimensional cone (coplanar set)")
    scale = np.max(np.abs(G))
    if dim == 2:
        candidates = [np.array([-g[1], g[0]]) for g in G]
    else:
        candidates = [np.cross(G[i], G[j]) for i in range(len(G)) for j in range(i + 1, len(G))]
    normals = []
    for n in candidates:
        nmax = np.max(np.abs(n))
        if nmax <= GEOM_RTOL * scale * scale:
            continue
        n = n / nmax
        s = G @ n
        tol = GEOM_RTOL * scale
        if np.all(s >= -tol):
            normals.append(n)
        elif np.all(s <= tol):
            normals.append(-n)
    if normals:
        normals = np.unique(np.round(np.array(normals), 12), axis=0)
    if len(normals) == 0 or np.linalg.matrix_rank(normals) < dim:
        raise DegenerateGenerators("generators span a cone containing a line (non-pointed)")
    hs = Halfspaces(normals, np.zeros(len(normals)))
    probes = np.vstack([G] + [(G[i] + G[j]) / 2 for i in range(len(G)) for j in range(i + 1, len(G))])
    if not np.all(hs.contains_many(probes)):
        raise InvariantViolation("facet description does not contain all generators")
    return hs


def generators_to_halfspaces_3d(generators) -> Halfspaces:
    G = as_points(generators)
    if G.shape[1] != 3:
        raise DimensionMismatch(f"expected generators in R^3, got R^{G.shape[1]}")
    return generators_to_halfspaces(G)


class GeneratorCone(SetRep):
    """``cone(generators)``: all nonnegative combinations of the generators."""

    polyhedral = True

    def __init__(self, generators):
        G = as_points(generators)
        G.setflags(write=False)
        self.generators = G
        self.dim = G.shape[1]

    def __repr__(self) -> str:
        return f"GeneratorCone({self.generators.tolist()})"

    @cached_property
    def halfspaces(self) -> Halfspaces:
        return generators_to_halfspaces(self.generators)

    def contains_many(self, Y):
        return self.halfspaces.contains_many(Y)

    def interior_many(self, Y):
        return self.halfspaces.interior_many(Y)

    def line_oracle(self, D, k):
        return self.halfspaces.line_oracle(D, k)

    def recession_contains(self, u) -> TriBool:
        return TriBool.of(self.contains(u))

    def recession_interior_contains(self, u) -> TriBool:
        return self.halfspaces.recession_interior_contains(u)

    def contains_line_in_direction(self, d) -> TriBool:
        return self.halfspaces.contains_line_in_direction(d)

    def is_cone(self) -> TriBool:
        return TriBool.TRUE

    def is_pointed(self) -> TriBool:
        return self.halfspaces.is_pointed()

    def is_nontrivial_cone(self) -> TriBool:
        return TriBool.TRUE

    def is_additive(self, rng=None) -> TriBool:
        return TriBool.TRUE

    def shift_interior(self, k) -> TriBool:
        return self.halfspaces.shift_interior(k)

    def orthant_shift_interior(self) -> TriBool:
        return self.halfspaces.orthant_shift_interior()

    def finite_valued_direction(self, k) -> TriBool:
        return self.halfspaces.finite_valued_direction(k)


def polyhedral_form(S: SetRep) -> Halfspaces:
    """The :class:`Halfspaces` describing a polyhedral representation."""
    if isinstance(S, Halfspaces):
        return S
    if isinstance(S, GeneratorCone):
        return S.halfspaces
    raise UnsupportedRepresentation(f"{S!r} has no halfspace description")


# -- analytic sets ---------------------------------------------------------------

_Mask = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class _Builtin:
    description: str
    contains: _Mask
    interior: _Mask
    recession: _Mask
    recession_interior: _Mask
    line: Callable[[np.ndarray, float], bool]
    cone: bool
    pointed: bool
    additive: bool
    shift_interior: Callable[[np.ndarray, float], bool]
    orthant_shift_interior: bool
    finite_valued: Callable[[np.ndarray, float], bool]
    boundary: Callable[[np.ndarray], np.ndarray]
    rays: tuple


# Curved sets compare the two sides of their defining inequality up to a few
# rounding units of the larger side. A tolerance proportional to ||y|| would
# let a point far out on a line y + t k pass a test it fails exactly.
TERM_RTOL = 2 * np.finfo(float).eps


def _ge(lhs, rhs):
    return lhs >= rhs - TERM_RTOL * (1.0 + np.maximum(np.abs(lhs), np.abs(rhs)))


def _gt(lhs, rhs):
    return lhs > rhs + TERM_RTOL * (1.0 + np.maximum(np.abs(lhs), np.abs(rhs)))


def _hyperbola_boundary(s):
    y1 = 2.0 ** s
    return np.column_stack([y1, 1.0 / y1])


def _shifted_boundary(s):
    return _hyperbola_boundary(s) - 1.0


BUILTIN_SETS: dict[str, _Builtin] = {
    "hyperbola_epi_2d": _Builtin(
        description="{y : y1 > 0, y2 >= 1/y1}",
        contains=lambda Y, e: (Y[:, 0] > 0) & _ge(Y[:, 0] * Y[:, 1], 1.0),
        interior=lambda Y, e: (Y[:, 0] > 0) & _gt(Y[:, 0] * Y[:, 1], 1.0),
        recession=lambda U, e: np.all(U >= -e[:, None], axis=1),
        recession_interior=lambda U, e: np.all(U > e[:, None], axis=1),
        line=lambda d, e: False,
        cone=False,
        pointed=True,
        additive=True,
        shift_interior=lambda k, e: bool(np.all(k >= -e) and np.any(k > e)),
        orthant_shift_interior=True,
        finite_valued=lambda k, e: bool(np.all(k > e)),
        boundary=_hyperbola_boundary,
        rays=((1.0, 0.0), (0.0, 1.0)),
    ),
    "parabola_epi_2d": _Builtin(
        description="{y : y2 >= y1^2}",
        contains=lambda Y, e: _ge(Y[:, 1], Y[:, 0] ** 2),
        interior=lambda Y, e: _gt(Y[:, 1], Y[:, 0] ** 2),
        recession=lambda U, e: (np.abs(U[:, 0]) <= e) & (U[:, 1] >= -e),
        recession_interior=lambda U, e: np.zeros(len(U), dtype=bool),
        line=lambda d, e: False,
        cone=False,
        pointed=True,
        additive=False,
        shift_interior=lambda k, e: bool(abs(k[0]) <= e and k[1] > e),
        orthant_shift_interior=False,
        # every vertical line meets the boundary parabola exactly once
        finite_valued=lambda k, e: bool(abs(k[0]) <= e and k[1] > e),
        boundary=lambda s: np.column_stack([s, s * s]),
        rays=((0.0, 1.0),),
    ),
    "shifted_hyperbola_2d": _Builtin(
        description="{y : y1 >= -1, y2 >= -1, (y1 + 1)(y2 + 1) >= 1}",
        contains=lambda Y, e: _ge(Y[:, 0], -1.0) & _ge(Y[:, 1], -1.0)
        & _ge((Y[:, 0] + 1.0) * (Y[:, 1] + 1.0), 1.0),
        interior=lambda Y, e: _gt(Y[:, 0], -1.0) & _gt(Y[:, 1], -1.0)
        & _gt((Y[:, 0] + 1.0) * (Y[:, 1] + 1.0), 1.0),
        recession=lambda U, e: np.all(U >= -e[:, None], axis=1),
        recession_interior=lambda U, e: np.all(U > e[:, None], axis=1),
        line=lambda d, e: False,
        cone=False,
        pointed=True,
        additive=False,
        shift_interior=lambda k, e: bool(np.all(k >= -e) and np.any(k > e)),
        orthant_shift_interior=True,
        finite_valued=lambda k, e: bool(np.all(k > e)),
        boundary=_shifted_boundary,
        rays=((1.0, 0.0), (0.0, 1.0)),
    ),
    "halfplane_x_2d": _Builtin(
        description="{y : y1 >= 0}",
        contains=lambda Y, e: Y[:, 0] >= -e,
        interior=lambda Y, e: Y[:, 0] > e,
        recession=lambda U, e: U[:, 0] >= -e,
        recession_interior=lambda U, e: U[:, 0] > e,
        line=lambda d, e: bool(abs(d[0]) <= e),
        cone=True,
        pointed=False,
        additive=True,
        shift_interior=lambda k, e: bool(k[0] > e),
        orthant_shift_interior=False,
        finite_valued=lambda k, e: bool(k[0] > e),
        boundary=lambda s: np.column_stack([np.zeros_like(s), s]),
        rays=((1.0, 0.0), (0.0, 1.0), (0.0, -1.0)),
    ),
}


class BuiltinSet(SetRep):
    """One of the analytic sets in :data:`BUILTIN_SETS` (all live in R^2)."""

    def __init__(self, name: str):
        if name not in BUILTIN_SETS:
            raise UnsupportedRepresentation(
                f"unknown builtin set {name!r}; choose from {sorted(BUILTIN_SETS)}"
            )
        self.name = name
        self.spec = BUILTIN_SETS[name]
        self.dim = 2

    def __repr__(self) -> str:
        return f"BuiltinSet({self.name!r})"

    def contains_many(self, Y):
        Y = as_points(Y, self.dim)
        return self.spec.contains(Y, geom_tol(Y))

    def interior_many(self, Y):
        Y = as_points(Y, self.dim)
        return self.spec.interior(Y, geom_tol(Y))

    def line_oracle(self, D, k):
        D = as_points(D, self.dim)
        k = as_point(k, self.dim)
        eps = geom_tol(D)
        return lambda t: self.spec.contains(D + np.asarray(t, dtype=float)[:, None] * k, eps)

    def _u(self, u):
        u = self._check_dim(u)
        return u[None, :], geom_tol(u)

    def recession_contains(self, u) -> TriBool:
        U, e = self._u(u)
        return TriBool.of(bool(self.spec.recession(U, e)[0]))

    def recession_interior_contains(self, u) -> TriBool:
        U, e = self._u(u)
        return TriBool.of(bool(self.spec.recession_interior(U, e)[0]))

    def contains_line_in_direction(self, d) -> TriBool:
        U, e = self._u(d)
        return TriBool.of(self.spec.line(U[0], e[0]))

    def is_cone(self) -> TriBool:
        return TriBool.of(self.spec.cone)

    def is_pointed(self) -> TriBool:
        return TriBool.of(self.spec.pointed)

    def is_nontrivial_cone(self) -> TriBool:
        return TriBool.of(self.spec.cone)

    def is_additive(self, rng=None) -> TriBool:
        return TriBool.of(self.spec.additive)

    def shift_interior(self, k) -> TriBool:
        U, e = self._u(k)
        return TriBool.of(self.spec.shift_interior(U[0], e[0]))

    def orthant_shift_interior(self) -> TriBool:
        return TriBool.of(self.spec.orthant_shift_interior)

    def finite_valued_direction(self, k) -> TriBool:
        U, e = self._u(k)
        return TriBool.of(self.spec.finite_valued(U[0], e[0]))

    def boundary_samples(self, n: int = 500) -> np.ndarray:
        return self.spec.boundary(np.linspace(-12.0, 12.0, n))

    def recession_rays(self) -> np.ndarray:
        return np.array(self.spec.rays, dtype=float)


class TranslatedSet(SetRep):
    """``S - shift`` for a non-polyhedral ``S``."""

    def __init__(self, base: SetRep, shift):
        self.base = base
        self.shift = as_point(shift, base.dim)
        self.dim = base.dim
        self.convex = base.convex

    def __repr__(self) -> str:
        return f"TranslatedSet({self.base!r}, {self.shift.tolist()})"

    def contains_many(self, Y):
        return self.base.contains_many(as_points(Y, self.dim) + self.shift)

    def interior_many(self, Y):
        return self.base.interior_many(as_points(Y, self.dim) + self.shift)

    def recession_contains(self, u) -> TriBool:
        return self.base.recession_contains(u)

    def recession_interior_contains(self, u) -> TriBool:
        return self.base.recession_interior_contains(u)

    def contains_line_in_direction(self, d) -> TriBool:
        return self.base.contains_line_in_direction(d)

    def boundary_samples(self, n: int = 500) -> np.ndarray:
        return self.base.boundary_samples(n) - self.shift

    def recession_rays(self) -> np.ndarray:
        return self.base.recession_rays()


def translate(S: SetRep, shift) -> SetRep:
    """The set ``S - shift``; stays polyhedral when ``S`` is."""
    shift = as_point(shift, S.dim)
    if S.polyhedral:
        hs = polyhedral_form(S)
        return Halfspaces(hs.normals, hs.offsets - hs.normals @ shift)
    return TranslatedSet(S, shift)
