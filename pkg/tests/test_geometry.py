import random
from fractions import Fraction

import pytest

from sympolar.geometry import (
    DimensionDeficiencyError,
    GeometryError,
    PolarityDomainError,
    apply_linear,
    convex_hull,
    f_vector,
    gauge_norm,
    polar_dual,
    shadow_area,
    volume,
)
from sympolar.linalg import SingularMatrixError, vneg
from sympolar.suspension import PIVOT

from conftest import random_point, random_symmetric_polytope

F = Fraction


def vecs(*points):
    return tuple(tuple(F(c) for c in p) for p in points)


# --- convex hull ----------------------------------------------------------


def test_hull_drops_interior_point():
    poly = convex_hull([(1, 0), (-1, 0), (0, 1), (0, -1), (0, 0)])
    assert poly.vertices == vecs((-1, 0), (0, -1), (0, 1), (1, 0))


def test_hull_hexagon_keeps_all_six(hexa):
    assert len(hexa.vertices) == 6
    assert set(hexa.vertices) == set(vecs((1, 1), (1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1)))


def test_hull_of_suspension_point_family():
    # the 4 + 2*6 suspension points of the hexagon are in convex position
    points = [(1, 0, 0, 0), (-1, 0, 0, 0), (0, 1, 0, 0), (0, -1, 0, 0)]
    hexagon_points = [(1, 1), (1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1)]
    for v in hexagon_points:
        points.append((1, 1) + v)
        points.append((-1, -1) + v)
    poly = convex_hull(points)
    assert len(poly.vertices) == 16
    assert len(poly.facets) == 16


def test_hull_idempotence(hexa, square, octagon):
    for poly in (hexa, square, octagon):
        again = convex_hull(poly.vertices)
        assert again == poly
        assert again.facets == poly.facets


def test_hull_rejects_degenerate_input():
    with pytest.raises(DimensionDeficiencyError) as err:
        convex_hull([(0, 0), (1, 1), (2, 2), (-1, -1)])
    assert err.value.affine_dim == 1
    assert err.value.ambient_dim == 2


def test_hull_rejects_mixed_dimensions():
    with pytest.raises(GeometryError):
        convex_hull([(0, 0), (1, 0, 0)])


# --- polar dual -----------------------------------------------------------


def test_polar_square_is_cross(square, cross2):
    assert polar_dual(square) == cross2


def test_polar_hexagon_frozen(hexa):
    # facet normals of the hexagon, computed by hand from its six edges
    expected = vecs((-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0))
    assert polar_dual(hexa).vertices == expected


def test_polar_involution(hexa, square, octagon):
    for poly in (hexa, square, octagon):
        assert polar_dual(polar_dual(poly)) == poly


def test_polar_requires_interior_origin():
    shifted = convex_hull([(1, 0), (2, 0), (1, 1), (2, 1)])
    with pytest.raises(PolarityDomainError):
        polar_dual(shifted)


def test_polar_reverses_inclusion(square, cross2):
    inner, outer = cross2, square
    assert all(outer.contains(v) for v in inner.vertices)
    dual_outer, dual_inner = polar_dual(outer), polar_dual(inner)
    assert all(dual_inner.contains(v) for v in dual_outer.vertices)


# --- volume ---------------------------------------------------------------


def test_volume_hexagon(hexa):
    assert volume(hexa) == 3


def test_volume_cross_polytope_dim4():
    cross = convex_hull(
        [tuple(F(int(i == j)) * s for i in range(4)) for j in range(4) for s in (1, -1)]
    )
    assert volume(cross) == F(2, 3)  # 2^4 / 4!


def test_volume_square(square):
    assert volume(square) == 4


def test_volume_octagon_matches_shoelace(octagon):
    assert volume(octagon) == 14  # shoelace sum 28 halved, computed by hand


def test_volume_unimodular_invariance(hexa):
    stretched = apply_linear([[F(2), 0], [0, F(1, 2)]], hexa)
    assert volume(stretched) == volume(hexa)


# --- gauge ----------------------------------------------------------------


def test_gauge_examples(hexa):
    assert gauge_norm(hexa, (1, 1)) == 1
    assert gauge_norm(hexa, (2, 0)) == 2
    assert gauge_norm(hexa, (1, -1)) == 2
    assert gauge_norm(hexa, (0, 0)) == 0


def _ray_boundary_scale(poly, x):
    """2D oracle: smallest t with x/t inside, by intersecting the ray with
    every edge segment."""
    verts = poly.vertices
    edge_pairs = []
    for i, v in enumerate(verts):
        for w in verts[i + 1 :]:
            shared = [
                f for f in poly.facets if f.is_tight(v) and f.is_tight(w)
            ]
            if shared:
                edge_pairs.append((v, w))
    best = None
    for v, w in edge_pairs:
        # solve t*x = v + s*(w - v)
        a, b = x
        det = a * (v[1] - w[1]) - b * (v[0] - w[0])
        if det == 0:
            continue
        s = (a * v[1] - b * v[0]) / det
        if not 0 <= s <= 1:
            continue
        point = (v[0] + s * (w[0] - v[0]), v[1] + s * (w[1] - v[1]))
        if a != 0:
            t = point[0] / a
        else:
            t = point[1] / b
        if t > 0 and (best is None or t < best):
            best = t
    return 1 / best


def test_gauge_against_ray_oracle(hexa, octagon):
    rng = random.Random(5)
    for poly in (hexa, octagon):
        for _ in range(50):
            x = random_point(rng, 2)
            if x == (0, 0):
                continue
            assert gauge_norm(poly, x) == _ray_boundary_scale(poly, x)


def test_gauge_support_duality(hexa, square, octagon):
    rng = random.Random(6)
    for poly in (hexa, square, octagon):
        dual = polar_dual(poly)
        for _ in range(100):
            x = random_point(rng, 2)
            assert gauge_norm(poly, x) == max(
                sum(a * b for a, b in zip(w, x)) for w in dual.vertices
            )


def test_gauge_needs_symmetry():
    triangle = convex_hull([(1, 0), (-1, 1), (-1, -2)])
    with pytest.raises(GeometryError):
        gauge_norm(triangle, (1, 0))


# --- linear images --------------------------------------------------------


def test_apply_identity(hexa):
    assert apply_linear([[1, 0], [0, 1]], hexa) == hexa


def test_apply_rotation_preserves_square(square):
    assert apply_linear([[0, -1], [1, 0]], square) == square


def test_apply_singular_rejected(square):
    with pytest.raises(SingularMatrixError):
        apply_linear([[1, 1], [1, 1]], square)


def test_apply_linear_transforms_facets(hexa):
    image = apply_linear([[1, 1], [0, 1]], hexa)
    recomputed = convex_hull(image.vertices)
    assert image.facets == recomputed.facets


# --- shadows --------------------------------------------------------------


def test_shadow_of_plane_polytope_is_area(hexa):
    assert shadow_area(hexa) == 3


def test_shadow_of_suspension(p2, p3):
    assert shadow_area(p2) == 3
    assert shadow_area(p3) == 3


# --- f-vector -------------------------------------------------------------


def test_f_vector_square(square):
    assert f_vector(square) == (4, 4)


def test_f_vector_cross_dim4():
    cross = convex_hull(
        [tuple(F(int(i == j)) * s for i in range(4)) for j in range(4) for s in (1, -1)]
    )
    assert f_vector(cross) == (8, 24, 32, 16)


# --- randomized properties ------------------------------------------------


def test_random_involution_and_idempotence():
    rng = random.Random(42)
    for _ in range(25):
        dim = rng.choice((2, 2, 4))
        poly = random_symmetric_polytope(rng, dim)
        assert convex_hull(poly.vertices) == poly
        assert polar_dual(polar_dual(poly)) == poly


def test_random_volume_positive_and_symmetry():
    rng = random.Random(43)
    for _ in range(10):
        poly = random_symmetric_polytope(rng, 2)
        assert volume(poly) > 0
        assert poly.symmetric
        assert set(poly.vertices) == {vneg(v) for v in poly.vertices}


def _brute_force_vertices(halfspaces, dim):
    """Oracle: intersect every dim-subset of boundary hyperplanes and keep
    the feasible solutions; exhaustive and independent of the incremental
    engine."""
    from itertools import combinations

    from sympolar.linalg import solve

    points = set()
    for subset in combinations(halfspaces, dim):
        matrix = [hs[0] for hs in subset]
        rhs = [hs[1] for hs in subset]
        point = solve(matrix, rhs)
        if point is None:
            continue
        if all(
            sum(a * b for a, b in zip(normal, point)) <= offset
            for normal, offset in halfspaces
        ):
            points.add(point)
    return points


def test_vertex_enumeration_rejects_unbounded():
    from sympolar.geometry import UnboundedRegionError, vertex_enumeration

    halfspaces = [((F(-1), F(0)), F(1)), ((F(0), F(-1)), F(1))]
    with pytest.raises(UnboundedRegionError):
        vertex_enumeration(halfspaces, 2)


def test_vertex_enumeration_rejects_empty():
    from sympolar.geometry import vertex_enumeration

    halfspaces = [
        ((F(1), F(0)), F(-1)),
        ((F(-1), F(0)), F(-1)),
        ((F(0), F(1)), F(1)),
        ((F(0), F(-1)), F(1)),
    ]
    with pytest.raises(GeometryError):
        vertex_enumeration(halfspaces, 2)


def test_vertex_enumeration_against_brute_force():
    from sympolar.geometry import vertex_enumeration

    rng = random.Random(44)
    produced = 0
    while produced < 12:
        dim = rng.choice((2, 3))
        halfspaces = []
        for _ in range(rng.randint(dim + 2, dim + 6)):
            normal = random_point(rng, dim, span=2)
            if all(c == 0 for c in normal):
                continue
            halfspaces.append((normal, F(rng.randint(1, 8), 4)))
        # symmetrize so the region is bounded with the origin interior
        halfspaces += [(vneg(a), b) for a, b in halfspaces]
        try:
            found = set(vertex_enumeration(halfspaces, dim))
        except GeometryError:
            continue
        produced += 1
        # a feasible point with dim independent tight constraints is exactly
        # a vertex, so the exhaustive oracle yields the full vertex set
        assert found == _brute_force_vertices(halfspaces, dim)
