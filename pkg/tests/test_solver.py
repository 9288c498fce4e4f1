import numpy as np
import pytest

from gerstewitz.corpus import EXAMPLES, build_example, random_finite_instance, triangle_points
from gerstewitz.errors import PreconditionError
from gerstewitz.feasible import BuiltinCurve, FinitePoints, GridRegion
from gerstewitz.functional import GerstewitzFunctional, level_contains_many
from gerstewitz.geometry import BuiltinSet, Halfspaces, Orthant, TriBool
from gerstewitz.solver import (
    ProblemInstance,
    SolveStatus,
    boundary_equivalence_check,
    minkowski_sum_relations,
    restrict_to_level,
    solve,
    solve_finite,
    solve_grid,
)


def ex311():
    return ProblemInstance(FinitePoints(triangle_points(0.05)), GerstewitzFunctional([-1, 0], Orthant(2), [1, 1]))


def seg618():
    F = FinitePoints([(1, 0), (0.5, 0), (0, 0), (1, -1)])
    return ProblemInstance(F, GerstewitzFunctional([1, 0], Orthant(2), [1, 1]))


def test_ex311_finite():
    r = solve_finite(ex311())
    assert r.status is SolveStatus.OPTIMAL and r.exact
    assert r.t_star == 1.0
    np.testing.assert_array_equal(r.minimizers, [[0.0, 0.0]])


def test_singleton_at_apex():
    a = np.array([0.7, -1.2])
    r = solve_finite(ProblemInstance(FinitePoints([a]), GerstewitzFunctional(a, Orthant(2), [2, 1])))
    assert r.t_star == 0.0
    np.testing.assert_array_equal(r.minimizers, [a])


def test_segment_all_minimize():
    r = solve_finite(seg618())
    assert r.t_star == 0.0
    # phi((1,-1)) = max(1 - 1, -1 - 0) = 0, so (1,-1) ties with the segment
    assert {tuple(m) for m in r.minimizers} == {(1.0, 0.0), (0.5, 0.0), (0.0, 0.0), (1.0, -1.0)}


def test_infeasible_and_unbounded():
    H = Halfspaces([[1, 0]], [0])
    g = GerstewitzFunctional([0, 0], H, [0, 1])
    assert solve_finite(ProblemInstance(FinitePoints([(1, 0), (2, 3)]), g)).status is SolveStatus.INFEASIBLE
    r = solve_finite(ProblemInstance(FinitePoints([(1, 0), (-1, 3)]), g))
    assert r.status is SolveStatus.UNBOUNDED_BELOW
    np.testing.assert_array_equal(r.witness, [-1, 3])


def test_ex613_not_attained():
    r = solve(build_example("ex613"))
    assert r.status is SolveStatus.INFIMUM_NOT_ATTAINED
    assert 0.0 < r.inf_estimate < 0.1
    ts = [t for _, t in r.evidence]
    assert all(b < a for a, b in zip(ts, ts[1:]))


def test_ex614_not_attained():
    assert solve(build_example("ex614")).status is SolveStatus.INFIMUM_NOT_ATTAINED


def test_triangle_grid_approximate():
    F = GridRegion([0, 0], [1, 1], 101, Halfspaces([[1, -1]], [0]))
    r = solve_grid(ProblemInstance(F, GerstewitzFunctional([-1, 0], Orthant(2), [1, 1])))
    assert r.status is SolveStatus.APPROXIMATE_OPTIMAL
    assert abs(r.t_star - 1.0) <= 0.02
    assert r.cell_size is not None


def test_curve_declared_compact():
    F = BuiltinCurve("triangle_ex311")
    assert F.closed is TriBool.TRUE and F.compact is TriBool.TRUE
    assert BuiltinCurve("hyperbola_branch_ex613").compact is TriBool.FALSE


@pytest.mark.parametrize("make", [ex311, seg618])
def test_boundary_equivalence(make):
    c = boundary_equivalence_check(make())
    assert c.agrees
    assert c.t_full == c.t_boundary


def test_boundary_equivalence_singleton():
    a = [1.0, 2.0]
    c = boundary_equivalence_check(ProblemInstance(FinitePoints([a]), GerstewitzFunctional(a, Orthant(2), [1, 1])))
    assert c.agrees and c.t_full == 0.0


@pytest.mark.parametrize("ex_id", list(EXAMPLES))
def test_boundary_equivalence_corpus(ex_id):
    assert boundary_equivalence_check(build_example(ex_id)).agrees


@pytest.mark.parametrize("t0, n_kept", [(2.0, len(triangle_points(0.05))), (1.0, 1)])
def test_restrict_to_level(t0, n_kept):
    P = ex311()
    R = restrict_to_level(P, t0)
    assert len(R.F.points) == n_kept
    r0, r1 = solve(P), solve(R)
    assert r1.t_star == r0.t_star
    np.testing.assert_array_equal(r1.minimizers, r0.minimizers)


def test_restrict_below_optimum_fails():
    with pytest.raises(PreconditionError):
        restrict_to_level(ex311(), 0.5)


def test_minkowski_relations():
    P = ProblemInstance(FinitePoints([(0, 0)]), GerstewitzFunctional([-1, 0], Orthant(2), [1, 1]))
    rep = minkowski_sum_relations(P, [(0, 0), (1, 0), (0, 1), (2, 2)])
    assert rep.same_value and rep.inclusion_chain_holds
    assert rep.t_F == rep.t_sum == 1.0

    rep = minkowski_sum_relations(seg618(), [(1, 0), (0, 1), (0.5, 0.5)])
    assert rep.same_value and rep.inclusion_chain_holds

    with pytest.raises(PreconditionError):
        minkowski_sum_relations(P, [(-1, 0)])


def test_minimizers_are_level_filter(rng):
    for _ in range(100):
        P = random_finite_instance(rng)
        r = solve_finite(P)
        if r.status is not SolveStatus.OPTIMAL:
            continue
        Y = P.F.points
        # M = F ∩ (a - H + t* k), up to the tie tolerance
        lo = level_contains_many(P.g, r.t_star, Y)
        hi = level_contains_many(P.g, r.t_star + r.eps_tie, Y)
        M = {tuple(m) for m in r.minimizers}
        assert {tuple(y) for y in Y[lo]} <= M <= {tuple(y) for y in Y[hi]}


def test_level_restriction_on_random_instances(rng):
    for _ in range(100):
        P = random_finite_instance(rng)
        r = solve_finite(P)
        if r.status is not SolveStatus.OPTIMAL:
            continue
        t0 = r.t_star + rng.uniform(0, 3)
        r2 = solve_finite(restrict_to_level(P, t0))
        assert r2.t_star == r.t_star
        np.testing.assert_array_equal(r2.minimizers, r.minimizers)


def test_minimizer_midpoints_convex(rng):
    # convex F sample (grid of a box) and convex polyhedral H
    for _ in range(30):
        H = Halfspaces(rng.uniform(0, 1, size=(3, 2)).round(2) + 0.01, rng.uniform(-1, 1, 3))
        g = GerstewitzFunctional(rng.uniform(-1, 1, 2), H, [1, 1])
        xs = np.linspace(-1, 1, 9)
        P = ProblemInstance(FinitePoints(np.array([(x, y) for x in xs for y in xs])), g)
        r = solve_finite(P)
        M = r.minimizers
        mids = (M[:, None, :] + M[None, :, :]).reshape(-1, 2) / 2
        assert np.all(g.values(mids) <= r.t_star + 2 * r.eps_tie)


def test_shifted_hyperbola_curve():
    r = solve(build_example("shifted-hyperbola"))
    assert r.has_minimizers
    g = GerstewitzFunctional([0, 0], BuiltinSet("shifted_hyperbola_2d"), [1, 1])
    assert np.all(np.abs(g.values(r.minimizers) - r.t_star) <= r.eps_tie)
