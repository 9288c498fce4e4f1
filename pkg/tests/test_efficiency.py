import numpy as np
import pytest

from gerstewitz.corpus import build_example
from gerstewitz.efficiency import (
    DominationSet,
    eff_extension_check,
    eff_finite,
    minimizer_efficiency_link,
)
from gerstewitz.errors import PreconditionError
from gerstewitz.feasible import FinitePoints
from gerstewitz.functional import GerstewitzFunctional
from gerstewitz.geometry import Halfspaces, Orthant, TriBool
from gerstewitz.solver import ProblemInstance, solve_finite


def brute_eff(points, W, b):
    """Efficient points for D = {d : W d >= b}, by plain loops over ordered pairs."""
    out = []
    for y0 in points:
        dominated = False
        for y in points:
            if list(y) == list(y0):
                continue
            d = [p - q for p, q in zip(y0, y)]
            if all(sum(wi * di for wi, di in zip(w, d)) >= bi for w, bi in zip(W, b)):
                dominated = True
                break
        if not dominated:
            out.append(tuple(y0))
    return out


def test_square_corners():
    E = eff_finite([(0, 0), (1, 0), (0, 1), (1, 1)], Orthant(2))
    np.testing.assert_array_equal(E, [[0, 0]])


def test_singleton():
    np.testing.assert_array_equal(eff_finite([(3, -1)], Orthant(2)), [[3, -1]])


def test_segment_only_origin():
    s = np.linspace(0, 1, 11)
    E = eff_finite(np.column_stack([s, np.zeros_like(s)]), Orthant(2))
    np.testing.assert_array_equal(E, [[0, 0]])


def test_duplicates_do_not_dominate_each_other():
    E = eff_finite([(0, 0), (0, 0), (1, 1)], Orthant(2))
    np.testing.assert_array_equal(E, [[0, 0], [0, 0]])


def test_matches_brute_force(rng):
    for _ in range(200):
        l = int(rng.choice([2, 3]))
        n = int(rng.integers(1, 31))
        Y = rng.integers(-4, 5, size=(n, l)).astype(float)
        if rng.random() < 0.5:
            W, b = np.eye(l), np.zeros(l)
        else:
            W = rng.integers(-2, 3, size=(int(rng.integers(1, 4)), l)).astype(float)
            W[np.all(W == 0, axis=1)] = 1.0
            b = np.zeros(len(W))
        got = [tuple(y) for y in eff_finite(Y, Halfspaces(W, b))]
        assert got == brute_eff(Y.tolist(), W.tolist(), b.tolist())


def test_idempotent_and_subset(rng):
    for _ in range(50):
        Y = rng.integers(-3, 4, size=(20, 2)).astype(float)
        E = eff_finite(Y, Orthant(2))
        np.testing.assert_array_equal(eff_finite(E, Orthant(2)), E)
        assert {tuple(e) for e in E} <= {tuple(y) for y in Y}
        loser = [y for y in Y if not any((y == e).all() for e in E)]
        if loser:
            rest = np.array([y for y in Y if not (y == loser[0]).all()])
            np.testing.assert_array_equal(eff_finite(rest, Orthant(2)), E)


def test_extension_orthant():
    rep = eff_extension_check([(0, 0), (2, 1)], [(1, 0), (0, 1)], DominationSet(Orthant(2), exclude_zero=True))
    assert rep.subset_holds and rep.equality_holds
    assert rep.equality_expected is TriBool.TRUE


def test_extension_empty_sample():
    rep = eff_extension_check([(0, 1), (1, 0)], [], Orthant(2))
    assert rep.equality_holds


def test_extension_halfspace_not_pointed():
    D = DominationSet(Halfspaces([[1, 1]], [0]))
    assert D.pointed is TriBool.FALSE
    rep = eff_extension_check([(0, 0), (1, -1)], [(1, -1)], D)
    assert rep.subset_holds
    assert rep.equality_expected is TriBool.FALSE


def test_extension_rejects_outside_sample():
    with pytest.raises(PreconditionError):
        eff_extension_check([(0, 0)], [(-1, 0)], Orthant(2))


def test_extension_flags_on_random_sets(rng):
    for _ in range(200):
        l = int(rng.choice([2, 3]))
        F = rng.integers(-3, 4, size=(int(rng.integers(1, 31)), l)).astype(float)
        S = rng.integers(0, 3, size=(3, l)).astype(float)
        rep = eff_extension_check(F, S, DominationSet(Orthant(l), exclude_zero=True))
        assert rep.subset_holds
        assert rep.equality_expected is TriBool.TRUE and rep.equality_holds


def test_domination_flags():
    D = DominationSet(Orthant(2), exclude_zero=True)
    assert D.contains_zero is TriBool.FALSE
    assert D.pointed is TriBool.TRUE and D.additive is TriBool.TRUE
    assert DominationSet(Orthant(2)).contains_zero is TriBool.TRUE


def test_minimizer_link_segment():
    F = FinitePoints(np.column_stack([np.linspace(0, 1, 11), np.zeros(11)]))
    P = ProblemInstance(F, GerstewitzFunctional([1, 0], Orthant(2), [1, 1]))
    link = minimizer_efficiency_link(P, solve_finite(P))
    np.testing.assert_array_equal(link.efficient_minimizers, [[0, 0]])
    assert link.eff_of_closure_subset and link.equality_holds


@pytest.mark.parametrize("pts", [[(0.0, 0.0)], [(1.0, 0.0), (0.0, 1.0)]])
def test_minimizer_link_nondominated(pts):
    P = ProblemInstance(FinitePoints(pts), GerstewitzFunctional([1, 1], Orthant(2), [1, 1]))
    link = minimizer_efficiency_link(P, solve_finite(P))
    np.testing.assert_array_equal(link.efficient_minimizers, pts)


def test_minimizer_link_needs_finite_F():
    P = build_example("ex618b")
    with pytest.raises(PreconditionError):
        minimizer_efficiency_link(P, solve_finite(build_example("ex311")))
