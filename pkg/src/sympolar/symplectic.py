"""Standard symplectic form, symplectic polarity, and the expansion step.

Coordinates are interleaved position/momentum pairs (q1, p1, ..., qn, pn),
so on R^2 the form is omega((a, b), (c, d)) = a*d - b*c and the form of a
direct sum splits blockwise.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympolar.geometry import (
    GeometryError,
    Polytope,
    apply_linear,
    convex_hull,
    polar_dual,
)
from sympolar.linalg import Vec, as_vec

ONE = Fraction(1)

Witness = tuple[Vec, Vec, Fraction]


class ExpansionError(GeometryError):
    """An expansion step was attempted with an invalid vertex subset."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def omega(x: Sequence, y: Sequence) -> Fraction:
    """The standard symplectic form of two vectors in R^{2n}."""
    xv, yv = as_vec(x), as_vec(y)
    if len(xv) != len(yv):
        raise ValueError(f"dimension mismatch: {len(xv)} vs {len(yv)}")
    if len(xv) % 2 != 0:
        raise ValueError(f"symplectic form needs even dimension, got {len(xv)}")
    total = Fraction(0)
    for i in range(0, len(xv), 2):
        total += xv[i] * yv[i + 1] - xv[i + 1] * yv[i]
    return total


def polar_to_sympolar_matrix(dim: int) -> tuple[Vec, ...]:
    """The linear map carrying the classical polar body onto the symplectic
    polar: blockwise (y1, y2) -> (-y2, y1).  It satisfies
    omega(x, M y) = <x, y>, and is locked in by the involution tests."""
    if dim % 2 != 0:
        raise ValueError(f"need even dimension, got {dim}")
    rows = []
    for i in range(dim):
        row = [Fraction(0)] * dim
        if i % 2 == 0:
            row[i + 1] = Fraction(-1)
        else:
            row[i - 1] = Fraction(1)
        rows.append(tuple(row))
    return tuple(rows)


def symplectic_polar(P: Polytope) -> Polytope:
    """The body {y : omega(x, y) <= 1 for all x in P}, for symmetric P with
    the origin interior; computed as a fixed linear image of the polar dual."""
    if P.dim % 2 != 0:
        raise GeometryError("symplectic polarity needs even dimension")
    if not P.symmetric:
        raise GeometryError(
            "symplectic polarity is only provided for centrally symmetric bodies"
        )
    return apply_linear(polar_to_sympolar_matrix(P.dim), polar_dual(P))


def check_subset_sympolar(P: Polytope) -> tuple[bool, Witness | None]:
    """Whether P is contained in its symplectic polar.

    Containment is equivalent to omega(v, w) <= 1 for every ordered pair of
    vertices; on failure the lexicographically first violating pair and its
    form value are returned as a witness.
    """
    verts = P.vertices
    for i, v in enumerate(verts):
        for w in verts[i + 1 :]:
            value = omega(v, w)
            if value > 1:
                return False, (v, w, value)
            if -value > 1:
                return False, (w, v, -value)
    return True, None


def is_self_polar(P: Polytope) -> bool:
    """Whether P equals its symplectic polar, as canonical vertex lists."""
    return symplectic_polar(P) == P


def c_j(P: Polytope) -> Fraction:
    """Reciprocal of the largest |omega| over pairs of points of the
    symplectic polar; the bilinear maximum is attained at vertex pairs."""
    Q = symplectic_polar(P)
    verts = Q.vertices
    best = Fraction(0)
    for i, v in enumerate(verts):
        for w in verts[i + 1 :]:
            value = abs(omega(v, w))
            if value > best:
                best = value
    if best == 0:
        raise GeometryError("degenerate body: the form vanishes on the polar")
    return 1 / best


def expand_step(K: Polytope, S: Sequence[Sequence]) -> Polytope:
    """Grow K, which must satisfy K subseteq K^omega, by a centrally
    symmetric subset S of the vertices of K^omega whose pairs all satisfy
    omega(v, w) <= 1.  The result again lies inside its own symplectic polar,
    which is asserted after construction."""
    ok, witness = check_subset_sympolar(K)
    if not ok:
        raise ExpansionError(
            f"polytope is not inside its symplectic polar, witness {witness}", witness
        )
    points = [as_vec(p) for p in S]
    point_set = set(points)
    if {tuple(-c for c in p) for p in points} != point_set:
        raise ExpansionError("expansion set is not centrally symmetric")
    polar_vertices = set(symplectic_polar(K).vertices)
    for p in points:
        if p not in polar_vertices:
            raise ExpansionError(
                f"expansion point {p} is not a vertex of the symplectic polar",
                (p,),
            )
    ordered = sorted(point_set)
    for i, v in enumerate(ordered):
        for w in ordered[i:]:
            value = omega(v, w)
            if value > 1:
                raise ExpansionError(
                    f"expansion pair violates the form bound: {(v, w, value)}",
                    (v, w, value),
                )
    if not points:
        return K
    grown = convex_hull(list(K.vertices) + ordered)
    ok, witness = check_subset_sympolar(grown)
    if not ok:
        raise ExpansionError(
            f"expansion produced a body outside its symplectic polar: {witness}",
            witness,
        )
    return grown
