import numpy as np
import pytest

from gerstewitz.corpus import (
    EXAMPLES,
    SEP_CONE,
    build_example,
    random_cone_instance,
    random_finite_instance,
)
from gerstewitz.existence import (
    RULE_ORDER,
    Verdict,
    check_rule,
    existence_report,
    necessary_conditions,
    separation_boundedness,
    separation_details,
)
from gerstewitz.errors import PreconditionError
from gerstewitz.feasible import FinitePoints
from gerstewitz.functional import GerstewitzFunctional
from gerstewitz.geometry import BuiltinSet, Halfspaces, Orthant, TriBool
from gerstewitz.solver import ProblemInstance, SolveStatus, solve, solve_finite

T, F, U = TriBool.TRUE, TriBool.FALSE, TriBool.UNKNOWN
NEGATIVE = ("ex613", "ex614", "ex615a", "ex616a")


def test_necessary_ex311():
    n = necessary_conditions(build_example("ex311"))
    assert n.feasible is T and n.bounded_below is T


def test_necessary_ex613_hold_without_optimum():
    P = build_example("ex613")
    n = necessary_conditions(P, t_probe_range=(-100, 100))
    assert n.feasible is T and n.bounded_below is T
    assert solve(P).status is SolveStatus.INFIMUM_NOT_ATTAINED


def test_necessary_fails_when_nothing_feasible():
    g = GerstewitzFunctional([0, 0], Halfspaces([[1, 0]], [0]), [0, 1])
    P = ProblemInstance(FinitePoints([(1, 0), (2, 5)]), g)
    assert necessary_conditions(P).feasible is F
    rep = existence_report(P)
    assert rep.verdict is Verdict.NECESSARY_FAILS and rep.rule == "(5)"


def test_necessary_samples_validated():
    with pytest.raises(ValueError):
        necessary_conditions(build_example("ex311"), samples=1)


def test_check_rule_ex311_pointed_cone():
    c = check_rule(build_example("ex311"), "R-pointed-cone")
    assert c.value is T
    assert all(h.value is T for h in c.breakdown.values())


def test_check_rule_ex613_names_line():
    c = check_rule(build_example("ex613"), "R-boundedbelow-lines")
    assert c.value is F
    h = c.breakdown["no axis lines in H"]
    assert h.value is F and "direction (0, 1)" in h.note


def test_check_rule_ex614_unbounded_F():
    c = check_rule(build_example("ex614"), "R-boundedbelow-lines")
    assert c.value is F
    assert c.breakdown["F bounded below"].value is F


def test_unknown_rule():
    with pytest.raises(ValueError, match="unknown rule"):
        check_rule(build_example("ex311"), "R-nope")


def _wedge_points(n=25):
    s = np.linspace(0, 5, n)
    return np.vstack([np.column_stack([s, -s / 2]), np.column_stack([s, np.full(n, 3.0)])])


def test_separation_worked_example():
    D = BuiltinSet("shifted_hyperbola_2d")
    assert separation_boundedness(_wedge_points(), D, SEP_CONE, (0, 0), (0, 0)) is T
    d = separation_details(_wedge_points(), D, SEP_CONE, (0, 0), (0, 0))
    assert d.recession_inside is T and d.points_outside is T


def test_separation_line_inside_cone():
    s = np.linspace(0.1, 5, 20)
    M = np.column_stack([-s, -s])
    assert separation_boundedness(M, BuiltinSet("shifted_hyperbola_2d"), SEP_CONE, (0, 0), (0, 0)) is F


def test_separation_orthant_boundary_rays():
    C = Halfspaces([[-1, 0], [0, -1]], [0, 0])
    assert separation_boundedness(np.ones((1, 2)), Orthant(2), C, (0, 0), (0, 0)) is F


def test_separation_requires_cone():
    with pytest.raises(PreconditionError):
        separation_boundedness(np.ones((1, 2)), Orthant(2), Halfspaces([[-1, -1]], [1]), (0, 0), (0, 0))


@pytest.mark.parametrize("ex_id, rule", [
    ("ex311", "R-pointed-cone"),
    ("ex618a", "R-pointed-cone"),
    ("shifted-hyperbola", "R-polyhedral-sep"),
])
def test_report_certificates(ex_id, rule):
    rep = existence_report(build_example(ex_id))
    assert rep.verdict is Verdict.GUARANTEED and rep.rule == rule


@pytest.mark.parametrize("ex_id", NEGATIVE)
def test_counterexamples_never_certified(ex_id):
    P = build_example(ex_id)
    assert existence_report(P).verdict is not Verdict.GUARANTEED
    assert solve(P).status is not SolveStatus.OPTIMAL


def test_ex615b_solvable_without_certificate():
    P = build_example("ex615b")
    assert existence_report(P).verdict is Verdict.NO_RULE
    assert solve(P).has_minimizers


def test_report_stops_at_first_true_rule():
    rep = existence_report(build_example("ex311"))
    assert list(rep.checks) == ["R-nec", RULE_ORDER[0]]


def test_unknown_never_certifies():
    rep = existence_report(build_example("ex617"))
    for rule, c in rep.checks.items():
        if any(h.value is U for h in c.breakdown.values()):
            assert c.value is not T


def test_soundness_on_random_corpus(rng):
    certified = 0
    for i in range(200):
        P = random_cone_instance(rng) if i % 2 else random_finite_instance(rng)
        rep = existence_report(P)
        r = solve_finite(P)
        if rep.verdict is Verdict.GUARANTEED:
            certified += 1
            assert r.status is SolveStatus.OPTIMAL and len(r.minimizers)
        if r.status is SolveStatus.OPTIMAL:
            n = necessary_conditions(P, t_probe_range=(r.t_star - 2, r.t_star + 2))
            assert n.feasible is T and n.bounded_below is T
    assert certified > 50


def test_pointed_cones_hold_no_axis_lines(rng):
    for _ in range(100):
        H = random_cone_instance(rng).g.H
        assert H.is_pointed() is T
        assert all(H.contains_line_in_direction(e) is F for e in np.eye(H.dim))


def test_shifted_hyperbola_no_axis_lines():
    H = BuiltinSet("shifted_hyperbola_2d")
    assert H.orthant_shift_interior() is T
    assert all(H.contains_line_in_direction(e) is F for e in np.eye(2))


@pytest.mark.parametrize("ex_id", list(EXAMPLES))
def test_certificates_imply_minimizers_on_corpus(ex_id):
    P = build_example(ex_id)
    if existence_report(P).verdict is Verdict.GUARANTEED:
        assert solve(P).has_minimizers
