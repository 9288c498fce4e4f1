"""Efficient elements of finite sets.

``y0`` is efficient in ``F`` with respect to ``D`` when ``F ∩ (y0 - D) ⊆ {y0}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DimensionMismatch, PreconditionError
from .feasible import FinitePoints
from .geometry import SetRep, TriBool, as_points
from .solver import ProblemInstance, SolveResult


class DominationSet:
    """A domination set ``D`` built on a geometry set.

    ``exclude_zero`` selects ``D minus {0}`` for the algebraic flags. The
    pairwise test ignores it, since ``y = y0`` is never a competitor.
    """

    def __init__(self, base: SetRep, exclude_zero: bool = False):
        self.base = base
        self.exclude_zero = bool(exclude_zero)
        self.dim = base.dim

    def dominated_by_many(self, y0: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """Rows ``y`` of ``Y`` with ``y != y0`` and ``y ∈ y0 - D``."""
        return self.base.contains_many(y0[None, :] - Y) & np.any(Y != y0[None, :], axis=1)

    def contains_many(self, X: np.ndarray) -> np.ndarray:
        inside = self.base.contains_many(X)
        if self.exclude_zero:
            inside &= np.any(X != 0.0, axis=1)
        return inside

    @cached_property
    def contains_zero(self) -> TriBool:
        return TriBool.FALSE if self.exclude_zero else TriBool.of(self.base.contains(np.zeros(self.dim)))

    @cached_property
    def pointed(self) -> TriBool:
        """``D ∩ (-D) ⊆ {0}``; removing the origin does not change it."""
        return self.base.is_pointed()

    @cached_property
    def additive(self) -> TriBool:
        """``D + D ⊆ D``. Without the origin this also needs pointedness."""
        v = self.base.is_additive()
        return v & self.pointed if self.exclude_zero else v


def _as_dom(D) -> DominationSet:
    return D if isinstance(D, DominationSet) else DominationSet(D)


def eff_mask(F, D) -> np.ndarray:
    D = _as_dom(D)
    Y = as_points(F)
    if len(Y) == 0:
        raise PreconditionError("efficiency needs a nonempty point list")
    if Y.shape[1] != D.dim:
        raise DimensionMismatch(f"points live in R^{Y.shape[1]} but D in R^{D.dim}")
    return np.array([not np.any(D.dominated_by_many(y0, Y)) for y0 in Y], dtype=bool)


def eff_finite(F, D) -> np.ndarray:
    """Efficient points of ``F`` in input order."""
    Y = as_points(F)
    return Y[eff_mask(Y, D)]


def _same_point_sets(A: np.ndarray, B: np.ndarray) -> bool:
    return {tuple(r) for r in A.tolist()} == {tuple(r) for r in B.tolist()}


def _subset(A: np.ndarray, B: np.ndarray) -> bool:
    return {tuple(r) for r in A.tolist()} <= {tuple(r) for r in B.tolist()}


@dataclass(frozen=True, eq=False)
class ExtensionReport:
    subset_holds: bool
    equality_holds: bool
    equality_expected: TriBool
    eff_F: np.ndarray
    eff_F_tilde: np.ndarray


def eff_extension_check(F, H_sample, D) -> ExtensionReport:
    """Compare ``Eff(F~, D)`` and ``Eff(F, D)`` for ``F~ = F + (H_sample ∪ {0})``.

    The inclusion ``Eff(F~) ⊆ Eff(F)`` always holds; equality is expected when
    ``D`` is pointed and additive.
    """
    D = _as_dom(D)
    Y = as_points(F, D.dim)
    S = as_points(H_sample, D.dim) if len(H_sample) else np.zeros((0, D.dim))
    nonzero = S[np.any(S != 0.0, axis=1)]
    if len(nonzero) and not np.all(D.base.contains_many(nonzero)):
        raise PreconditionError("H_sample must lie in D ∪ {0}")
    shifts = np.vstack([np.zeros((1, D.dim)), S])
    F_tilde = np.unique((Y[:, None, :] + shifts[None, :, :]).reshape(-1, D.dim), axis=0)
    e_F = eff_finite(Y, D)
    e_T = eff_finite(F_tilde, D)
    return ExtensionReport(
        subset_holds=_subset(e_T, e_F),
        equality_holds=_same_point_sets(e_T, e_F),
        equality_expected=D.pointed & D.additive,
        eff_F=e_F,
        eff_F_tilde=e_T,
    )


@dataclass(frozen=True, eq=False)
class EfficiencyLink:
    eff_of_closure_subset: bool
    equality_expected: TriBool
    equality_holds: bool
    efficient_minimizers: np.ndarray


def minimizer_efficiency_link(P: ProblemInstance, result: SolveResult) -> EfficiencyLink:
    """Efficient elements of the minimizer set with respect to ``H``.

    For finite ``F`` the minimizer set is closed, so ``cl M = M`` and the
    inclusion is an identity; the check still runs both computations.
    """
    if not isinstance(P.F, FinitePoints):
        raise PreconditionError("the efficiency link is checked for finite F only")
    if not result.has_minimizers:
        raise PreconditionError(f"need a solved instance with minimizers, got {result.status.value}")
    D = DominationSet(P.g.H)
    if D.contains_zero is not TriBool.TRUE:
        raise PreconditionError("H must contain the origin")
    if D.additive is not TriBool.TRUE:
        raise PreconditionError(f"H + H ⊆ H is {D.additive}")
    M = result.minimizers
    closure = np.unique(M, axis=0)
    e_M = eff_finite(M, D)
    e_cl = eff_finite(closure, D)
    return EfficiencyLink(
        eff_of_closure_subset=_subset(e_cl, e_M),
        equality_expected=D.pointed,
        equality_holds=_same_point_sets(e_cl, e_M),
        efficient_minimizers=e_M,
    )
