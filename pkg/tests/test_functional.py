import math

import numpy as np
import pytest

from gerstewitz.corpus import random_polyhedral_functional
from gerstewitz.errors import InvariantViolation, UnsupportedRepresentation
from gerstewitz.functional import (
    Certainty,
    Classification,
    GerstewitzFunctional,
    classify,
    format_float,
    level_contains,
    level_interior_contains,
    phi,
    phi_bisection,
    phi_polyhedral,
    properness_report,
)
from gerstewitz.geometry import BuiltinSet, Halfspaces, Orthant, SetRep, TriBool

HALF = Halfspaces([[1, 0]], [0])


def g_(a, H, k, **kw):
    return GerstewitzFunctional(a, H, k, **kw)


@pytest.mark.parametrize("g, y, expected", [
    (g_([-1, 0], Orthant(2), [1, 1]), (0, 0), 1.0),
    (g_([0.3, -2, 5], Orthant(3), [1, 1, 1]), (0.3, -2, 5), 0.0),
    (g_([0, 0], HALF, [1, 1]), (3, -2), 3.0),
])
def test_phi_polyhedral_examples(g, y, expected):
    s = phi_polyhedral(g, y)
    assert s.value == expected
    assert s.certainty is Certainty.EXACT


def test_zero_normal_rejected():
    with pytest.raises(ValueError):
        Halfspaces([[1, 0], [0, 1], [0, 0]], [0, 0, 0])


def test_k_must_be_nonzero_and_recession():
    with pytest.raises(ValueError, match="k must be nonzero"):
        g_([0, 0], Orthant(2), [0, 0])
    with pytest.raises(InvariantViolation):
        g_([0, 0], Orthant(2), [1, -1])


def test_phi_polyhedral_refuses_oracle_sets():
    with pytest.raises(UnsupportedRepresentation):
        phi_polyhedral(g_([0, 0], BuiltinSet("parabola_epi_2d"), [0, 1]), (0, 0))


def test_bisection_parabola():
    s = phi_bisection(g_([0, 0], BuiltinSet("parabola_epi_2d"), [0, 1]), (2, 0))
    assert s.certainty is Certainty.BRACKETED
    assert 4.0 <= s.value <= 4.0 + 1e-9


def test_bisection_hyperbola():
    s = phi_bisection(g_([0, 0], BuiltinSet("hyperbola_epi_2d"), [1, 1]), (0, 0))
    assert 1.0 <= s.value <= 1.0 + 1e-9


def test_bisection_feasible_level_bounds_value(rng):
    H = BuiltinSet("shifted_hyperbola_2d")
    g = g_([0.5, -1], H, [1, 2])
    for _ in range(50):
        h = H.boundary_samples(50)[rng.integers(50)] + rng.uniform(0, 1, 2)
        t0 = rng.uniform(-5, 5)
        y = g.a - h + t0 * g.k
        assert phi(g, y).value <= t0 + 1e-12


def test_bisection_infinities_are_heuristic():
    g = g_([0, 0], BuiltinSet("halfplane_x_2d"), [0, 1])
    up = phi(g, (1, 0))
    down = phi(g, (-1, 0))
    assert up.value == math.inf and down.value == -math.inf
    assert up.certainty is down.certainty is Certainty.HEURISTIC_INFINITY
    assert up.bound == 1e12


def test_nonmonotone_oracle_is_reported():
    class Liar(SetRep):
        """A bounded box that claims every direction recedes."""

        dim = 2

        def contains_many(self, Y):
            return np.all(np.abs(np.asarray(Y)) <= 1, axis=1)

        def interior_many(self, Y):
            return np.all(np.abs(np.asarray(Y)) < 1, axis=1)

        def recession_contains(self, u):
            return TriBool.TRUE

    g = g_([0, 0], Liar(), [1, 0])
    with pytest.raises(InvariantViolation, match="not monotone"):
        phi_bisection(g, (0, 0))


def test_scaling_and_shift_instances():
    g = g_([-1, 0], Orthant(2), [1, 1])
    y = (0.25, 0.75)
    assert phi(g.with_params(k=[2, 2]), y).value == phi(g, y).value / 2
    assert phi(g.with_params(a=g.a + 3 * g.k), y).value == phi(g, y).value - 3


@pytest.mark.parametrize("H, k, y, expected", [
    (HALF, (0, 1), (-1, 0), Classification.NEG_INF_LINE),
    (Orthant(2), (1, 1), (5, 5), Classification.IN_DOMAIN_FINITE),
    (HALF, (0, 1), (1, 0), Classification.NOT_IN_DOMAIN),
])
def test_classify(H, k, y, expected):
    assert classify(g_([0, 0], H, k), y) is expected


def test_properness():
    r = properness_report(g_([0, 0, 0], Orthant(3), [1, 1, 1]))
    assert r.finite_valued is TriBool.TRUE and r.proper is TriBool.TRUE

    r = properness_report(g_([0, 0], BuiltinSet("halfplane_x_2d"), [0, 1]))
    assert r.proper is TriBool.FALSE
    assert r.no_real_values is TriBool.TRUE

    r = properness_report(g_([0, 0], BuiltinSet("parabola_epi_2d"), [0, 1]))
    assert r.proper is TriBool.TRUE
    # every vertical line meets the parabola, so phi is real everywhere even
    # though k is not interior to the recession cone
    assert r.finite_valued is TriBool.TRUE
    assert any("not interior" in why for why in r.reasons)


def test_properness_convex_fallback():
    # wedge {y2 >= |y1|}: -k outside the recession cone settles properness
    H = Halfspaces([[1, 1], [-1, 1]], [0, 0])
    r = properness_report(g_([0, 0], H, [0, 1]))
    assert r.proper is TriBool.TRUE and r.finite_valued is TriBool.TRUE


def test_sublevel_identity_and_attainment(rng):
    for _ in range(40):
        g = random_polyhedral_functional(rng)
        for y in rng.uniform(-4, 4, size=(30, g.dim)):
            v = phi(g, y).value
            for t in rng.uniform(-6, 6, size=4):
                assert (v <= t) == level_contains(g, t, y)
            if math.isfinite(v):
                assert level_contains(g, v, y)
                assert level_interior_contains(g, v - 1e-9, y) is TriBool.FALSE


def test_translation_covariance(rng):
    for _ in range(40):
        g = random_polyhedral_functional(rng)
        g0 = g.with_params(a=np.zeros(g.dim))
        Y = rng.uniform(-4, 4, size=(50, g.dim))
        v = g.values(Y)
        w = g0.values(Y - g.a)
        np.testing.assert_allclose(v, w, rtol=1e-12, atol=1e-12)


def test_format_float():
    assert [format_float(x) for x in (math.inf, -math.inf, 0.0, -0.0, 1.5)] == ["+inf", "-inf", "0", "0", "1.5"]
    assert phi_bisection(g_([0, 0], BuiltinSet("parabola_epi_2d"), [0, 1]), (2, 0)).certainty_label == "bracketed(1e-9)"
