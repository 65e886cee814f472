import random
from fractions import Fraction

import pytest

from sympolar.geometry import GeometryError, convex_hull, gauge_norm, polar_dual
from sympolar.linalg import vneg
from sympolar.symplectic import (
    ExpansionError,
    c_j,
    check_subset_sympolar,
    expand_step,
    is_self_polar,
    omega,
    polar_to_sympolar_matrix,
    symplectic_polar,
)

from conftest import random_point, random_symmetric_polytope

F = Fraction


def vecs(*points):
    return tuple(tuple(F(c) for c in p) for p in points)


# --- the form --------------------------------------------------------------


def test_omega_basic_values():
    assert omega((1, 1), (1, 0)) == -1
    assert omega((1, 0), (0, 1)) == 1
    assert omega((1, 1, 1, 0), (1, 1, 1, 1)) == 1


def test_omega_block_additivity():
    rng = random.Random(1)
    for _ in range(200):
        v, w = random_point(rng, 2), random_point(rng, 2)
        x, y = random_point(rng, 4), random_point(rng, 4)
        assert omega(v + x, w + y) == omega(v, w) + omega(x, y)


def test_omega_antisymmetric_bilinear():
    rng = random.Random(2)
    for _ in range(200):
        x, y = random_point(rng, 4), random_point(rng, 4)
        assert omega(x, y) == -omega(y, x)
        assert omega(x, x) == 0
        c = F(rng.randint(-5, 5), rng.randint(1, 4))
        scaled = tuple(c * t for t in x)
        assert omega(scaled, y) == c * omega(x, y)


def test_omega_rejects_bad_dimensions():
    with pytest.raises(ValueError):
        omega((1, 0, 0), (0, 1, 0))
    with pytest.raises(ValueError):
        omega((1, 0), (0, 1, 0, 0))


# --- symplectic polarity ----------------------------------------------------


def test_sympolar_square_is_cross(square, cross2):
    assert symplectic_polar(square) == cross2


def test_sympolar_hexagon_fixed(hexa):
    assert symplectic_polar(hexa) == hexa
    assert is_self_polar(hexa)


def test_sympolar_suspension_fixed(p2):
    assert symplectic_polar(p2) == p2
    assert is_self_polar(p2)


def test_square_not_self_polar(square):
    assert not is_self_polar(square)


def test_sympolar_matches_definition(hexa, square):
    # every vertex pair (x of P, y of P^omega) satisfies the defining bound,
    # and each polar vertex is tight against some vertex of P
    for poly in (hexa, square):
        polar = symplectic_polar(poly)
        for y in polar.vertices:
            values = [omega(x, y) for x in poly.vertices]
            assert all(v <= 1 for v in values)
            assert max(values) == 1


def test_sympolar_involution_random():
    rng = random.Random(3)
    for _ in range(20):
        poly = random_symmetric_polytope(rng, rng.choice((2, 4)))
        assert symplectic_polar(symplectic_polar(poly)) == poly


def test_sympolar_rejects_asymmetric():
    triangle = convex_hull([(1, 0), (-1, 1), (-1, -2)])
    with pytest.raises(GeometryError):
        symplectic_polar(triangle)


def test_polar_map_shape():
    rows = polar_to_sympolar_matrix(4)
    assert rows == (
        (0, -1, 0, 0),
        (1, 0, 0, 0),
        (0, 0, 0, -1),
        (0, 0, 1, 0),
    )


# --- containment check ------------------------------------------------------


def test_check_hexagon_inside_its_polar(hexa):
    assert check_subset_sympolar(hexa) == (True, None)


def test_check_square_witness(square):
    ok, witness = check_subset_sympolar(square)
    assert not ok
    v, w, value = witness
    assert value == omega(v, w) == 2
    assert v in square.vertices and w in square.vertices


def test_check_cross_inside(cross2):
    assert check_subset_sympolar(cross2) == (True, None)


def test_self_polar_implies_consistency(hexa, p2):
    for poly in (hexa, p2):
        assert is_self_polar(poly)
        assert check_subset_sympolar(poly) == (True, None)
        assert c_j(poly) == 1


# --- c_J ---------------------------------------------------------------------


def test_cj_values(hexa, square, p2):
    assert c_j(hexa) == 1
    assert c_j(square) == 1
    assert c_j(p2) == 1


# --- bilinear gauge bound ----------------------------------------------------


def test_gauge_bound_and_vertex_maximizer(hexa, square, p2):
    rng = random.Random(4)
    for poly in (hexa, square, p2):
        polar = symplectic_polar(poly)
        for _ in range(60):
            x = random_point(rng, poly.dim, span=2)
            y = random_point(rng, poly.dim, span=2)
            bound = gauge_norm(poly, x) * gauge_norm(polar, y)
            assert abs(omega(x, y)) <= bound
            if any(c != 0 for c in x):
                peak = max(abs(omega(x, w)) for w in polar.vertices)
                assert peak == gauge_norm(poly, x)


def test_hexagon_pair_bound(hexa):
    # for v, w in the hexagon with t = |omega(u,v)|, s = |omega(u,w)|:
    # |omega(v,w)| <= t + s - t*s
    rng = random.Random(7)
    u = (F(1), F(1))
    verts = hexa.vertices
    for _ in range(300):
        weights_v = [rng.randint(0, 4) for _ in verts]
        weights_w = [rng.randint(0, 4) for _ in verts]
        if sum(weights_v) == 0 or sum(weights_w) == 0:
            continue
        v = tuple(
            sum(F(a) * coord[k] for a, coord in zip(weights_v, verts)) / sum(weights_v)
            for k in range(2)
        )
        w = tuple(
            sum(F(a) * coord[k] for a, coord in zip(weights_w, verts)) / sum(weights_w)
            for k in range(2)
        )
        t, s = abs(omega(u, v)), abs(omega(u, w))
        assert abs(omega(v, w)) <= t + s - t * s


# --- expansion ---------------------------------------------------------------


def test_expand_cross_to_hexagon(hexa, cross2):
    grown = expand_step(cross2, [(1, 1), (-1, -1)])
    assert grown == hexa


def test_expand_empty_set_is_identity(hexa):
    assert expand_step(hexa, []) == hexa


def test_expand_full_polar_vertex_set_halts(hexa):
    grown = expand_step(hexa, list(symplectic_polar(hexa).vertices))
    assert grown == hexa


def test_expand_rejects_asymmetric_set(cross2):
    with pytest.raises(ExpansionError):
        expand_step(cross2, [(1, 1)])


def test_expand_rejects_non_polar_vertex(cross2):
    with pytest.raises(ExpansionError):
        expand_step(cross2, [(2, 2), (-2, -2)])


def test_expand_rejects_incompatible_pairs(square, cross2):
    # (1,1) and (1,-1) are polar vertices of the cross but omega = -2
    polar = symplectic_polar(cross2)
    assert set(vecs((1, 1), (1, -1), (-1, -1), (-1, 1))) <= set(polar.vertices)
    with pytest.raises(ExpansionError):
        expand_step(cross2, vecs((1, 1), (-1, -1), (1, -1), (-1, 1)))


def test_expand_output_stays_inside_polar_fuzz():
    rng = random.Random(8)
    for _ in range(15):
        poly = random_symmetric_polytope(rng, 2)
        # shrink until the body is contained in its own polar
        shrink = F(1, 2)
        while True:
            scaled = convex_hull([tuple(shrink * c for c in v) for v in poly.vertices])
            if check_subset_sympolar(scaled)[0]:
                break
            shrink /= 2
        polar = symplectic_polar(scaled)
        reps = sorted({v if v > vneg(v) else vneg(v) for v in polar.vertices})
        rng.shuffle(reps)
        chosen = []
        for rep in reps:
            if all(abs(omega(rep, other)) <= 1 for other in chosen):
                chosen.append(rep)
        grown = expand_step(scaled, chosen + [vneg(c) for c in chosen])
        assert check_subset_sympolar(grown) == (True, None)
