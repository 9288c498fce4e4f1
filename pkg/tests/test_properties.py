import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gerstewitz.efficiency import eff_finite
from gerstewitz.functional import GerstewitzFunctional, phi_bisection
from gerstewitz.geometry import BuiltinSet, Halfspaces, Orthant
from gerstewitz.parameters import CoordinateZero, SignNonneg, SumZero, shift_a

coord = st.floats(-50, 50, allow_nan=False, allow_infinity=False)
pos = st.floats(0.05, 20, allow_nan=False, allow_infinity=False)
point2 = st.tuples(coord, coord)

BUILTINS = ["hyperbola_epi_2d", "shifted_hyperbola_2d", "parabola_epi_2d"]
BUILTIN_K = {"hyperbola_epi_2d": (1.0, 1.0), "shifted_hyperbola_2d": (1.0, 2.0), "parabola_epi_2d": (0.0, 1.0)}


@st.composite
def polyhedral(draw):
    l = draw(st.sampled_from([2, 3]))
    k = np.array(draw(st.lists(st.integers(0, 3), min_size=l, max_size=l)), float)
    if not k.any():
        k[0] = 1.0
    m = draw(st.integers(1, 6))
    W = np.array(draw(st.lists(st.lists(st.integers(-3, 3), min_size=l, max_size=l), min_size=m, max_size=m)), float)
    W[W @ k < 0] *= -1
    W[np.all(W == 0, axis=1)] = k
    x0 = np.array(draw(st.lists(st.integers(-3, 3), min_size=l, max_size=l)), float)
    b = W @ x0 - np.array(draw(st.lists(st.integers(0, 3), min_size=m, max_size=m)), float)
    a = np.array(draw(st.lists(coord, min_size=l, max_size=l)))
    return GerstewitzFunctional(a, Halfspaces(W, b), k)


@settings(max_examples=150, deadline=None)
@given(g=polyhedral(), data=st.data())
def test_polyhedral_scale_and_shift(g, data):
    y = np.array(data.draw(st.lists(coord, min_size=g.dim, max_size=g.dim)))
    v = g(y)
    lam = data.draw(st.sampled_from([0.5, 2.0, 10.0]))
    c = data.draw(st.sampled_from([-3.0, 0.25, 7.0]))
    vs = g.with_params(k=lam * g.k)(y)
    vc = g.with_params(a=g.a + c * g.k)(y)
    if math.isfinite(v):
        assert math.isclose(vs, v / lam, rel_tol=1e-12, abs_tol=1e-12 * (1 + abs(v)))
        assert math.isclose(vc, v - c, rel_tol=1e-12, abs_tol=1e-12 * (1 + abs(v) + abs(c)))
    else:
        assert vs == v and vc == v


@settings(max_examples=150, deadline=None)
@given(g=polyhedral(), data=st.data())
def test_polyhedral_matches_bisection(g, data):
    y = np.array(data.draw(st.lists(coord, min_size=g.dim, max_size=g.dim)))
    exact = g(y)
    approx = phi_bisection(g, y, tol=1e-9, t_max=1e6).value
    if math.isfinite(exact):
        # scaled to the data: the bisection tolerance is anchored at a - y
        assert abs(exact - approx) <= 2e-9 * max(1.0, abs(exact))
    else:
        assert approx == exact


@settings(max_examples=100, deadline=None)
@given(name=st.sampled_from(BUILTINS), a=point2, y=point2)
def test_builtin_sublevel_monotone(name, a, y):
    g = GerstewitzFunctional(a, BuiltinSet(name), BUILTIN_K[name])
    v = g(y)
    assert math.isfinite(v)
    yv = np.asarray(y)
    # y is in a - H + t k for t just above v, and for every larger t
    for t in (v + 2e-9, v + 1, v + 100):
        assert g.H.contains(g.a + t * g.k - yv)
    if v - 1e-6 > -1e12:
        assert not g.H.contains(g.a + (v - 1e-6) * g.k - yv)


@settings(max_examples=100, deadline=None)
@given(a=point2, k=st.tuples(pos, pos), y=point2, lam=st.sampled_from([0.5, 2.0, 10.0]))
def test_bisection_scaling(a, k, y, lam):
    H = BuiltinSet("hyperbola_epi_2d")
    v = GerstewitzFunctional(a, H, k)(y)
    w = GerstewitzFunctional(a, H, np.multiply(k, lam))(y)
    assert abs(w - v / lam) <= 2e-9 * (1 + 1 / lam) * max(1.0, abs(v))


@settings(max_examples=100, deadline=None)
@given(Y=arrays(float, st.tuples(st.integers(1, 25), st.sampled_from([2, 3])),
                elements=st.integers(-5, 5).map(float)))
def test_eff_idempotent(Y):
    D = Orthant(Y.shape[1])
    E = eff_finite(Y, D)
    assert len(E) >= 1
    np.testing.assert_array_equal(eff_finite(E, D), E)


@settings(max_examples=200, deadline=None)
@given(a=st.tuples(coord, coord, coord), k=st.tuples(pos, pos, pos), j=st.integers(1, 3))
def test_shift_targets_hold_exactly(a, k, j):
    assert shift_a(a, k, CoordinateZero(j)).a_new[j - 1] == 0.0
    assert np.all(shift_a(a, k, SignNonneg()).a_new >= 0.0)
    s = shift_a(a, k, SumZero())
    assert abs(s.a_new.sum()) <= 1e-12 * (1 + np.abs(a).sum() + abs(s.c) * np.sum(k))
