import numpy as np
import pytest

from gerstewitz.errors import DegenerateGenerators, DimensionMismatch, UnsupportedRepresentation
from gerstewitz.geometry import (
    BuiltinSet,
    GeneratorCone,
    Halfspaces,
    Orthant,
    TriBool,
    generators_to_halfspaces_3d,
    translate,
)

T, F, U = TriBool.TRUE, TriBool.FALSE, TriBool.UNKNOWN
EX615 = [(2, 0, -1), (0, 2, -1), (-1, 0, 2)]


def test_tribool_refuses_truthiness():
    with pytest.raises(TypeError):
        bool(U)
    assert (T & U) is U and (F & U) is F and (T | U) is T and ~U is U


@pytest.mark.parametrize("S, y, expected", [
    (Orthant(2), (0, 0), True),
    (BuiltinSet("halfplane_x_2d"), (-1, 5), False),
    (BuiltinSet("hyperbola_epi_2d"), (2, 0.5), True),
    (BuiltinSet("hyperbola_epi_2d"), (0, 5), False),
    (BuiltinSet("shifted_hyperbola_2d"), (0, 0), True),
    (BuiltinSet("parabola_epi_2d"), (2, 3.9), False),
])
def test_contains(S, y, expected):
    assert S.contains(y) is expected


def test_contains_rejects_wrong_dimension():
    with pytest.raises(DimensionMismatch):
        Orthant(2).contains((1, 2, 3))


@pytest.mark.parametrize("S, u, expected", [
    (Orthant(2), (1, 1), T),
    (BuiltinSet("parabola_epi_2d"), (0, 1), T),
    (BuiltinSet("parabola_epi_2d"), (1, 0), F),
    (BuiltinSet("hyperbola_epi_2d"), (1, 0), T),
    (BuiltinSet("hyperbola_epi_2d"), (-1, 1), F),
    (BuiltinSet("halfplane_x_2d"), (0, -1), T),
    (Orthant(2), (0, 0), T),
])
def test_recession_contains(S, u, expected):
    assert S.recession_contains(u) is expected


@pytest.mark.parametrize("S, y, expected", [
    (Orthant(2), (1, 1), T),
    (Orthant(2), (0, 1), F),
    (BuiltinSet("shifted_hyperbola_2d"), (0, 0), F),
    (BuiltinSet("shifted_hyperbola_2d"), (1, 1), T),
])
def test_interior_contains(S, y, expected):
    assert S.interior_contains(y) is expected


def test_interior_of_flat_polyhedron_is_empty():
    # {y1 = 0} written as two inequalities: no point is interior
    S = Halfspaces([[1, 0], [-1, 0]], [0, 0])
    assert S.contains((0, 3))
    assert S.interior_contains((0, 3)) is F


@pytest.mark.parametrize("S, u, expected", [
    (Orthant(3), (1, 1, 1), T),
    (Orthant(2), (1, 0), F),
    (BuiltinSet("parabola_epi_2d"), (0, 1), F),
    (BuiltinSet("hyperbola_epi_2d"), (1, 1), T),
])
def test_recession_interior_contains(S, u, expected):
    assert S.recession_interior_contains(u) is expected


@pytest.mark.parametrize("S, d, expected", [
    (BuiltinSet("halfplane_x_2d"), (0, 1), T),
    (Orthant(2), (1, 0), F),
    (BuiltinSet("hyperbola_epi_2d"), (1, 0), F),
    (BuiltinSet("parabola_epi_2d"), (0, 1), F),
    (Halfspaces([[1, 0]], [0]), (0, 1), T),
    (Halfspaces([[1, 0], [-1, 0]], [1, 0]), (0, 1), F),  # empty set holds no line
])
def test_contains_line_in_direction(S, d, expected):
    assert S.contains_line_in_direction(d) is expected
    assert S.contains_line_in_direction(np.negative(d)) is expected


def test_generators_of_orthant_give_orthant():
    H = generators_to_halfspaces_3d(np.eye(3))
    rows = {tuple(r) for r in (H.normals / np.abs(H.normals).max(axis=1, keepdims=True)).round(12) + 0.0}
    assert rows == {(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)}
    assert np.all(H.offsets == 0)


def test_generators_ex615_cone():
    H = generators_to_halfspaces_3d(EX615)
    assert len(H.normals) == 3
    assert all(H.contains(g) for g in EX615)
    assert H.interior_contains((1, 1, 1)) is T


def test_coplanar_generators_rejected():
    with pytest.raises(DegenerateGenerators):
        generators_to_halfspaces_3d([(1, 0, 0), (2, 0, 0), (0, 1, 0)])


def test_generator_cone_above_three_dims_unsupported():
    with pytest.raises(UnsupportedRepresentation):
        GeneratorCone(np.eye(4)).contains(np.ones(4))


def test_generator_round_trip(rng):
    G = np.array(EX615, float)
    H = GeneratorCone(G)
    C = rng.uniform(0, 5, size=(1000, 3)) @ G
    assert np.all(H.contains_many(C))
    mids = [(G[i] + G[j]) / 2 for i in range(3) for j in range(i + 1, 3)]
    assert np.all(H.contains_many(np.array(mids)))
    # the generator cone excludes the negated generators
    assert not np.any(H.contains_many(-G))


def _samples(S, rng, n=200):
    if isinstance(S, BuiltinSet):
        B = S.boundary_samples(n)
        return np.vstack([B, B + rng.uniform(0, 2, size=B.shape)])
    return S.sample_points(n, rng)


SETS = [
    Orthant(2),
    Orthant(3),
    Halfspaces([[1, 2], [2, -1]], [-1, 0.5]),
    BuiltinSet("hyperbola_epi_2d"),
    BuiltinSet("parabola_epi_2d"),
    BuiltinSet("shifted_hyperbola_2d"),
    BuiltinSet("halfplane_x_2d"),
]


@pytest.mark.parametrize("S", SETS, ids=repr)
def test_recession_directions_keep_points_inside(S, rng):
    Y = _samples(S, rng)
    Y = Y[S.contains_many(Y)]
    cand = np.vstack([rng.normal(size=(40, S.dim)), np.eye(S.dim), -np.eye(S.dim)])
    dirs = [u for u in cand if S.recession_contains(u) is T]
    assert dirs
    for u in dirs:
        for t in (0.5, 1.0, 7.0):
            assert np.all(S.contains_many(Y + t * u))


@pytest.mark.parametrize("S", [s for s in SETS if isinstance(s, Halfspaces)], ids=repr)
def test_interior_implies_contains_and_boundary_is_tight(S, rng):
    Y = rng.uniform(-3, 3, size=(2000, S.dim))
    Y = np.vstack([Y, S.sample_points(200, rng)])
    inside = S.contains_many(Y)
    interior = S.interior_many(Y)
    assert np.all(inside[interior])
    edge = Y[inside & ~interior]
    slack = np.min(np.abs(S.slack(edge)), axis=1)
    assert np.all(slack <= 1e-12 * (1 + np.max(np.abs(edge), axis=1)) * np.sum(np.abs(S.normals), axis=1).max())


def test_translate_is_set_minus_shift():
    # translate(S, z) = S - z
    S = translate(BuiltinSet("hyperbola_epi_2d"), (1, 1))
    assert S.contains((0.5, 0.5))
    assert not S.contains((-0.5, 0))
    assert S.contains((-0.5, 1))
    assert S.recession_contains((1, 0)) is T


@pytest.mark.parametrize("S, pointed, additive", [
    (Orthant(2), T, T),
    (BuiltinSet("halfplane_x_2d"), F, T),
    (GeneratorCone(EX615), T, T),
])
def test_cone_properties(S, pointed, additive):
    assert S.is_pointed() is pointed
    assert S.is_additive() is additive
