"""JSON instance files.

A document has the fields ``dim``, ``H``, ``F``, ``a``, ``k`` and optionally
``options`` (``tol``, ``t_max``, ``grid``) and ``separation`` (``C``, ``z``, ``u``)::

    {"dim": 2, "H": {"kind": "orthant"},
     "F": {"kind": "points", "points": [[0, 0], [1, 0]]},
     "a": [-1, 0], "k": [1, 1]}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import GerstewitzError
from .feasible import BuiltinCurve, FeasibleSet, FinitePoints, GridRegion
from .functional import DEFAULT_T_MAX, DEFAULT_TOL, GerstewitzFunctional
from .geometry import BuiltinSet, GeneratorCone, Halfspaces, Orthant, SetRep
from .solver import ProblemInstance, Separation


class InstanceError(GerstewitzError, ValueError):
    """An instance document is malformed; the message names the field."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


@dataclass(frozen=True)
class Options:
    tol: float = DEFAULT_TOL
    t_max: float = DEFAULT_T_MAX
    grid: int | None = None


def _require(doc: dict, key: str, where: str):
    if not isinstance(doc, dict):
        raise InstanceError(where, "expected an object")
    if key not in doc:
        raise InstanceError(f"{where}.{key}" if where else key, "missing field")
    return doc[key]


def _vector(value, field: str, dim: int | None = None) -> np.ndarray:
    try:
        v = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise InstanceError(field, "expected a list of numbers") from None
    if v.ndim != 1:
        raise InstanceError(field, "expected a flat list of numbers")
    if dim is not None and len(v) != dim:
        raise InstanceError(field, f"expected {dim} entries, got {len(v)}")
    if not np.all(np.isfinite(v)):
        raise InstanceError(field, "entries must be finite")
    return v


def _matrix(value, field: str, dim: int | None = None) -> np.ndarray:
    try:
        M = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise InstanceError(field, "expected a list of equal-length number lists") from None
    if M.ndim != 2 or M.shape[0] == 0:
        raise InstanceError(field, "expected a nonempty list of equal-length number lists")
    if dim is not None and M.shape[1] != dim:
        raise InstanceError(field, f"rows must have {dim} entries, got {M.shape[1]}")
    if not np.all(np.isfinite(M)):
        raise InstanceError(field, "entries must be finite")
    return M


def parse_set(spec: dict, dim: int, where: str = "H") -> SetRep:
    kind = _require(spec, "kind", where)
    try:
        if kind == "orthant":
            return Orthant(dim)
        if kind == "halfspaces":
            W = _matrix(_require(spec, "normals", where), f"{where}.normals", dim)
            b = _vector(_require(spec, "offsets", where), f"{where}.offsets", len(W))
            return Halfspaces(W, b)
        if kind in ("generators3d", "generators"):
            G = _matrix(_require(spec, "generators", where), f"{where}.generators", dim)
            return GeneratorCone(G)
        if kind == "builtin":
            S = BuiltinSet(str(_require(spec, "name", where)))
            if S.dim != dim:
                raise InstanceError(f"{where}.name", f"builtin set lives in R^{S.dim}, instance in R^{dim}")
            return S
    except InstanceError:
        raise
    except (GerstewitzError, ValueError) as exc:
        raise InstanceError(where, str(exc)) from None
    raise InstanceError(f"{where}.kind", f"unknown kind {kind!r}; use orthant, halfspaces, generators3d or builtin")


def parse_feasible(spec: dict, dim: int, grid: int | None = None) -> FeasibleSet:
    kind = _require(spec, "kind", "F")
    try:
        if kind == "points":
            return FinitePoints(_matrix(_require(spec, "points", "F"), "F.points", dim),
                                declared_convex=bool(spec.get("convex", False)))
        if kind == "grid":
            lo = _vector(_require(spec, "lo", "F"), "F.lo", dim)
            hi = _vector(_require(spec, "hi", "F"), "F.hi", dim)
            res = int(grid if grid is not None else spec.get("resolution", 21))
            member = parse_set(spec["membership"], dim, "F.membership") if "membership" in spec else None
            return GridRegion(lo, hi, res, member)
        if kind == "curve":
            F = BuiltinCurve(str(_require(spec, "name", "F")), steps=spec.get("steps"))
            if F.dim != dim:
                raise InstanceError("F.name", f"curve lives in R^{F.dim}, instance in R^{dim}")
            return F
    except InstanceError:
        raise
    except (GerstewitzError, ValueError) as exc:
        raise InstanceError("F", str(exc)) from None
    raise InstanceError("F.kind", f"unknown kind {kind!r}; use points, grid or curve")


def parse_options(doc: dict) -> Options:
    raw = doc.get("options", {}) or {}
    if not isinstance(raw, dict):
        raise InstanceError("options", "expected an object")
    try:
        tol = float(raw.get("tol", DEFAULT_TOL))
        t_max = float(raw.get("t_max", DEFAULT_T_MAX))
        grid = raw.get("grid")
        grid = None if grid is None else int(grid)
    except (TypeError, ValueError) as exc:
        raise InstanceError("options", str(exc)) from None
    if not tol > 0:
        raise InstanceError("options.tol", "must be positive")
    if not t_max > 0:
        raise InstanceError("options.t_max", "must be positive")
    return Options(tol, t_max, grid)


def parse_instance(doc: dict, *, tol: float | None = None, t_max: float | None = None,
                   resolution: int | None = None, name: str = "") -> ProblemInstance:
    """Build a :class:`ProblemInstance`; keyword overrides beat ``options``."""
    if not isinstance(doc, dict):
        raise InstanceError("", "an instance document must be a JSON object")
    dim = _require(doc, "dim", "")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InstanceError("dim", "must be a positive integer")
    opts = parse_options(doc)
    tol = opts.tol if tol is None else tol
    t_max = opts.t_max if t_max is None else t_max
    grid = opts.grid if resolution is None else resolution
    H = parse_set(_require(doc, "H", ""), dim, "H")
    F = parse_feasible(_require(doc, "F", ""), dim, grid)
    a = _vector(_require(doc, "a", ""), "a", dim)
    k = _vector(_require(doc, "k", ""), "k", dim)
    if not np.any(k != 0.0):
        raise InstanceError("k", "k must be nonzero")
    try:
        g = GerstewitzFunctional(a, H, k, tol=tol, t_max=t_max)
    except (GerstewitzError, ValueError) as exc:
        raise InstanceError("k", str(exc)) from None
    sep = None
    if "separation" in doc:
        s = doc["separation"]
        C = parse_set(_require(s, "C", "separation"), dim, "separation.C")
        if not isinstance(C, Halfspaces):
            raise InstanceError("separation.C", "must be given as halfspaces")
        sep = Separation(C, _vector(_require(s, "z", "separation"), "separation.z", dim),
                         _vector(_require(s, "u", "separation"), "separation.u", dim))
    return ProblemInstance(F, g, separation=sep, name=name)


def load_json(path: str | Path):
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None


def load_instance(path: str | Path, **overrides) -> ProblemInstance:
    return parse_instance(load_json(path), name=Path(path).stem, **overrides)


def load_points(path: str | Path, dim: int | None = None) -> np.ndarray:
    """Points from a JSON list of lists or a CSV file with one point per line."""
    p = Path(path)
    text = p.read_text()
    if text.lstrip().startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
        return _matrix(data, str(path), dim)
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([float(x) for x in line.split(",")])
        except ValueError:
            raise InstanceError(f"{path}:{lineno}", f"cannot read {line!r} as comma-separated numbers") from None
    return _matrix(rows, str(path), dim)


def parse_point(text: str, dim: int | None = None) -> np.ndarray:
    try:
        v = [float(x) for x in text.strip("() ").split(",")]
    except ValueError:
        raise InstanceError("--point", f"cannot read {text!r} as comma-separated numbers") from None
    return _vector(v, "--point", dim)
