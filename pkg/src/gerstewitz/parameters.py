"""Choice of the parameters ``(a, k)`` and what one solve says about another.

Moving ``a`` along ``k`` and rescaling ``k`` leave the minimizer set unchanged,
so a sweep only needs ``a`` on a hyperplane slice and ``k`` on the simplex.
"""

from __future__ import annotations

import enum
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import GerstewitzError, NotNormalizable, PreconditionError
from .existence import necessary_conditions
from .feasible import FeasibleSet, FinitePoints
from .functional import GerstewitzFunctional
from .geometry import SetRep, TriBool, as_point, as_points
from .solver import ProblemInstance, SolveResult, SolveStatus, solve

DEFAULT_SIMPLEX_RESOLUTION = 10


@dataclass(frozen=True, eq=False)
class ParamPair:
    a: np.ndarray
    k: np.ndarray

    def __post_init__(self):
        a = as_point(self.a)
        k = as_point(self.k, len(a))
        if not np.any(k != 0.0):
            raise ValueError("k must be nonzero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "k", k)


def normalize_k(k) -> np.ndarray:
    """``k / sum(k)``; the minimizer set of any instance is unchanged."""
    k = as_point(k)
    s = float(np.sum(k))
    if abs(s) <= 1e-12 * float(np.sum(np.abs(k))):
        raise NotNormalizable(f"components of k = {k.tolist()} sum to zero; keep k as it is")
    return k / s


# -- moving a along k ---------------------------------------------------------------

@dataclass(frozen=True)
class CoordinateZero:
    j: int  # 1-based coordinate index


@dataclass(frozen=True)
class SumZero:
    pass


@dataclass(frozen=True)
class SignNonneg:
    pass


@dataclass(frozen=True)
class SignNonpos:
    pass


ShiftMode = CoordinateZero | SumZero | SignNonneg | SignNonpos


@dataclass(frozen=True, eq=False)
class ShiftResult:
    a_new: np.ndarray
    c: float


def shift_a(a, k, mode: ShiftMode) -> ShiftResult:
    """``a + c k`` with ``c`` chosen so the mode's target property holds."""
    a = as_point(a)
    k = as_point(k, len(a))
    if isinstance(mode, CoordinateZero):
        j = int(mode.j) - 1
        if not 0 <= j < len(a):
            raise PreconditionError(f"coordinate index {mode.j} is outside 1..{len(a)}")
        if k[j] == 0.0:
            raise PreconditionError(f"k_{mode.j} is zero, so coordinate {mode.j} cannot be moved to 0")
        c = -a[j] / k[j]
        a_new = a + c * k
        a_new[j] = 0.0
        return ShiftResult(a_new, float(c))
    if isinstance(mode, SumZero):
        sk = float(np.sum(k))
        if sk == 0.0:
            raise PreconditionError("the components of k sum to zero")
        c = -float(np.sum(a)) / sk
        return ShiftResult(a + c * k, c)
    if isinstance(mode, (SignNonneg, SignNonpos)):
        if np.all(k > 0.0):
            positive = True
        elif np.all(k < 0.0):
            positive = False
        else:
            raise PreconditionError("sign modes need k in int R^l_+ or in -int R^l_+")
        r = a / k
        # a + c k = k (r - r*) with r* the min or max ratio; the sign is then exact
        want_min = positive == isinstance(mode, SignNonneg)
        m = int(np.argmin(r) if want_min else np.argmax(r))
        a_new = k * (r - r[m])
        a_new[m] = 0.0
        return ShiftResult(a_new + 0.0, float(-r[m]))
    raise TypeError(f"unknown shift mode {mode!r}")


def forbidden_direction(H: SetRep, k) -> TriBool:
    """``TRUE`` when ``-k`` is a recession direction of ``H``; no optimum can exist then."""
    k = as_point(k, H.dim)
    return H.recession_contains(-k)


def param_feasible(F: FeasibleSet, H: SetRep, pair: ParamPair, **options) -> bool:
    """Whether ``(P_{F,a,H,k})`` has a feasible point among the examined points of ``F``."""
    g = GerstewitzFunctional(pair.a, H, pair.k, **options)
    return necessary_conditions(ProblemInstance(F, g)).feasible is TriBool.TRUE


def same_minimizers(M1, M2, eps: float) -> bool:
    """Symmetric point matching of two minimizer samples within ``eps`` (max norm)."""
    M1, M2 = np.atleast_2d(np.asarray(M1, float)), np.atleast_2d(np.asarray(M2, float))
    if M1.size == 0 or M2.size == 0:
        return M1.size == M2.size
    d = np.max(np.abs(M1[:, None, :] - M2[None, :, :]), axis=2)
    return bool(np.all(d.min(axis=1) <= eps) and np.all(d.min(axis=0) <= eps))


# -- sensitivity ----------------------------------------------------------------------

class Prediction(enum.Enum):
    ALL_UNBOUNDED_OR_EMPTY = "AllUnboundedOrEmptyFamily"
    TARGET_NONEMPTY_COMPACT = "TargetNonemptyCompact"
    NO_PREDICTION = "NoPrediction"


@dataclass(frozen=True)
class TransferReport:
    prediction: Prediction
    branch: str | None
    reasons: tuple[str, ...] = ()


def _not_neg_recession(H: SetRep, k) -> TriBool:
    return H.recession_contains(k) & ~H.recession_contains(-np.asarray(k))


def sensitivity_transfer(P: ProblemInstance, result: SolveResult, target: ParamPair) -> TransferReport:
    """Predict the target problem ``(P_{F,b,H,k0})`` from a solved source problem."""
    H, F, k = P.g.H, P.F, P.g.k
    b, k0 = target.a, target.k
    if len(b) != P.g.dim:
        raise PreconditionError("target parameters live in a different dimension")
    reasons: list[str] = []
    k_int = H.recession_interior_contains(k)
    k0_int = H.recession_interior_contains(k0)

    def none(*why: str) -> TransferReport:
        lead = f"k in int 0+H is {k_int}, k0 in int 0+H is {k0_int}"
        return TransferReport(Prediction.NO_PREDICTION, None, (lead, *reasons, *why))

    unbounded = result.status is SolveStatus.UNBOUNDED_BELOW
    diverging = result.status is SolveStatus.INFIMUM_NOT_ATTAINED and result.diverging
    if unbounded or diverging:
        if k_int is TriBool.TRUE and k0_int is TriBool.TRUE:
            if diverging:
                reasons.append("source objective judged unbounded below from a diverging sampled infimum")
            reasons.append("k and k0 are interior to 0+H")
            return TransferReport(Prediction.ALL_UNBOUNDED_OR_EMPTY, "unbounded-interior", tuple(reasons))
        return none("source unbounded below, but the interior hypotheses on k and k0 are not both true")

    if not result.has_minimizers:
        return none(f"source status {result.status.value} carries no minimizer information")
    if result.minimizers_bounded is not TriBool.TRUE:
        return none(f"boundedness of the source minimizer set is {result.minimizers_bounded}")
    if not H.convex:
        return none("H is not convex")

    target_feasible = TriBool.of(param_feasible(F, H, target, tol=P.g.tol, t_max=P.g.t_max))
    k0_proper = _not_neg_recession(H, k0)

    if isinstance(F, FinitePoints):
        # a proper objective on a finite feasible set always attains its minimum
        v = k0_proper & target_feasible
        if v is TriBool.TRUE:
            return TransferReport(Prediction.TARGET_NONEMPTY_COMPACT, "finite-F",
                                  ("F is finite, k0 is in 0+H minus (-0+H) and the target is feasible",))
        return none(f"finite F: k0 in 0+H minus (-0+H) is {k0_proper}, target feasible is {target_feasible}")

    F_ok = F.closed & TriBool.of(F.convex)
    if F_ok is not TriBool.TRUE:
        return none("F is not declared closed and convex")

    convex_branch = _not_neg_recession(H, k) & k0_proper & target_feasible
    interior_branch = k_int & k0_int
    if convex_branch is TriBool.TRUE:
        return TransferReport(Prediction.TARGET_NONEMPTY_COMPACT, "convex-recession",
                              ("source minimizers nonempty and bounded; k, k0 in 0+H minus (-0+H); target feasible",))
    if interior_branch is TriBool.TRUE:
        return TransferReport(Prediction.TARGET_NONEMPTY_COMPACT, "convex-interior",
                              ("source minimizers nonempty and bounded; k, k0 interior to 0+H",))
    return none(f"convex branch: {convex_branch}; interior branch: {interior_branch}")


# -- sweeps -----------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SweepSpec:
    """Grid of parameters.

    ``a_mode`` is ``"coordinate"`` (slice ``a_j = 0`` with 1-based ``a_index``),
    ``"sum"`` (slice ``sum(a) = 0``) or ``"explicit"`` (``a_points``). The free
    coordinates of a slice range over ``linspace(a_lo, a_hi, a_count)``.
    ``k_points`` overrides the simplex grid of resolution ``k_resolution``.
    """

    a_mode: str = "coordinate"
    a_index: int = 1
    a_lo: float = -1.0
    a_hi: float = 1.0
    a_count: int = 11
    a_points: tuple = ()
    k_resolution: int = DEFAULT_SIMPLEX_RESOLUTION
    k_points: tuple = ()
    workers: int = 4


@dataclass(frozen=True, eq=False)
class SweepRow:
    index: int
    a: np.ndarray
    k: np.ndarray
    status: str
    t_star: float | None
    minimizers: np.ndarray
    error: str | None = None


def simplex_grid(dim: int, resolution: int) -> np.ndarray:
    """Points of ``{k >= 0, sum k = 1}`` with coordinates in ``(1/r) Z``, lexicographic."""
    r = int(resolution)
    if r < 1:
        raise ValueError("simplex resolution must be >= 1")
    rows = [c for c in itertools.product(range(r + 1), repeat=dim) if sum(c) == r]
    return np.array(rows, dtype=float) / r


def sweep_k_grid(H: SetRep, spec: SweepSpec) -> np.ndarray:
    if spec.k_points:
        K = as_points(spec.k_points, H.dim)
    else:
        K = simplex_grid(H.dim, spec.k_resolution)
    keep = [i for i, k in enumerate(K) if np.any(k != 0.0) and H.recession_contains(k) is TriBool.TRUE]
    return K[keep]


def sweep_a_grid(dim: int, spec: SweepSpec) -> np.ndarray:
    if spec.a_mode == "explicit":
        if not spec.a_points:
            raise PreconditionError("explicit a-grid is empty")
        return as_points(spec.a_points, dim)
    if spec.a_count < 1:
        raise PreconditionError("a_count must be >= 1")
    axis = np.linspace(spec.a_lo, spec.a_hi, int(spec.a_count))
    free = np.array(list(itertools.product(axis, repeat=dim - 1)), dtype=float).reshape(-1, dim - 1)
    if spec.a_mode == "coordinate":
        j = int(spec.a_index) - 1
        if not 0 <= j < dim:
            raise PreconditionError(f"slice index {spec.a_index} is outside 1..{dim}")
        return np.insert(free, j, 0.0, axis=1)
    if spec.a_mode == "sum":
        return np.column_stack([free, -np.sum(free, axis=1)])
    raise PreconditionError(f"unknown a-slice mode {spec.a_mode!r}")


def sweep(F: FeasibleSet, H: SetRep, spec: SweepSpec, **options) -> list[SweepRow]:
    """Solve every ``(a, k)`` cell of the grid; rows follow grid order."""
    K = sweep_k_grid(H, spec)
    if len(K) == 0:
        raise PreconditionError("the k-grid holds no recession direction of H")
    A = sweep_a_grid(H.dim, spec)
    cells = [(a, k) for a in A for k in K]

    def run(item):
        i, (a, k) = item
        try:
            g = GerstewitzFunctional(a, H, k, **options)
            r = solve(ProblemInstance(F, g))
        except (GerstewitzError, ValueError) as exc:
            return SweepRow(i, a, k, "Error", None, np.zeros((0, H.dim)), str(exc))
        mins = r.minimizers if r.has_minimizers else np.zeros((0, H.dim))
        return SweepRow(i, a, k, r.status.value, r.t_star, mins)

    with ThreadPoolExecutor(max_workers=max(1, int(spec.workers))) as pool:
        return list(pool.map(run, enumerate(cells)))


def minimizer_union(rows: list[SweepRow]) -> np.ndarray:
    mins = [r.minimizers for r in rows if len(r.minimizers)]
    if not mins:
        return np.zeros((0, rows[0].a.shape[0] if rows else 0))
    return np.unique(np.vstack(mins), axis=0)

