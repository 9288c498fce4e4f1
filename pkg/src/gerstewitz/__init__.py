"""Gerstewitz-functional scalarization: evaluation, minimisation over a
feasible set, existence certificates, parameter control and efficiency."""

from .errors import (
    DegenerateGenerators,
    DimensionMismatch,
    GerstewitzError,
    InvariantViolation,
    NotNormalizable,
    PreconditionError,
    UnsupportedRepresentation,
)
from .existence import ExistenceReport, Verdict, check_rule, existence_report, necessary_conditions
from .feasible import BuiltinCurve, FinitePoints, GridRegion, Ray
from .functional import GerstewitzFunctional, PhiStatus, classify, phi, properness_report
from .geometry import BuiltinSet, GeneratorCone, Halfspaces, Orthant, TriBool
from .solver import ProblemInstance, Separation, SolveResult, SolveStatus, solve

__version__ = "0.1.0"

__all__ = [
    "BuiltinCurve",
    "BuiltinSet",
    "DegenerateGenerators",
    "DimensionMismatch",
    "ExistenceReport",
    "FinitePoints",
    "GeneratorCone",
    "GerstewitzError",
    "GerstewitzFunctional",
    "GridRegion",
    "Halfspaces",
    "InvariantViolation",
    "NotNormalizable",
    "Orthant",
    "PhiStatus",
    "PreconditionError",
    "ProblemInstance",
    "Ray",
    "Separation",
    "SolveResult",
    "SolveStatus",
    "TriBool",
    "UnsupportedRepresentation",
    "Verdict",
    "check_rule",
    "classify",
    "existence_report",
    "necessary_conditions",
    "phi",
    "properness_report",
    "solve",
]
