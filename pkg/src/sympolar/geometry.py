"""Exact rational polyhedral kernel.

Provides full-dimensional polytopes with canonical vertex and facet
representations, convex hulls, polar duals, exact volumes, gauges, shadows,
and linear images.  Everything is computed over ``Fraction``; there is no
floating-point fallback anywhere in this module.

Facet enumeration uses incremental insertion of halfspaces in the
double-description style on the homogenization cone, which is robust under
the heavy degeneracies of the symmetric polytopes this kernel targets
(dimension <= 8, a few hundred vertices).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from sympolar.linalg import (
    Vec,
    affine_rank,
    as_vec,
    det,
    dot,
    fraction_vec_to_int,
    int_dot,
    invert,
    is_zero_vec,
    primitive,
    rank,
    transpose,
    vneg,
    vsub,
)

ZERO = Fraction(0)
ONE = Fraction(1)


class GeometryError(ValueError):
    """Base class for polyhedral precondition and domain failures."""


class DimensionDeficiencyError(GeometryError):
    """The input points do not affinely span the ambient space."""

    def __init__(self, ambient_dim: int, affine_dim: int):
        super().__init__(
            f"hull is not full-dimensional: affine hull has dimension "
            f"{affine_dim} inside R^{ambient_dim}"
        )
        self.ambient_dim = ambient_dim
        self.affine_dim = affine_dim


class PolarityDomainError(GeometryError):
    """Polarity was requested for a body without the origin in its interior."""


class UnboundedRegionError(GeometryError):
    """A halfspace system describes an unbounded or empty region."""


@dataclass(frozen=True)
class HalfSpace:
    """The set {x : <normal, x> <= offset}."""

    normal: Vec
    offset: Fraction

    def __post_init__(self):
        if is_zero_vec(self.normal):
            raise GeometryError("halfspace normal must be nonzero")

    def contains(self, point: Vec) -> bool:
        return dot(self.normal, point) <= self.offset

    def is_tight(self, point: Vec) -> bool:
        return dot(self.normal, point) == self.offset


class Polytope:
    """Immutable full-dimensional convex polytope with exact rational data.

    ``vertices`` holds exactly the extreme points, each reduced to lowest
    terms and sorted lexicographically; polytope equality is equality of
    these canonical lists.  The facet list is computed lazily and cached;
    recomputation under concurrent access yields an identical value, so the
    cache is race-free.
    """

    __slots__ = ("dim", "vertices", "symmetric", "_facets")

    def __init__(self, dim: int, vertices: tuple[Vec, ...], facets=None):
        self.dim = dim
        self.vertices = vertices
        self.symmetric = set(vertices) == {vneg(v) for v in vertices}
        self._facets = facets

    @property
    def facets(self) -> tuple[HalfSpace, ...]:
        if self._facets is None:
            self._facets = _facets_from_vertices(self.vertices, self.dim)
        return self._facets

    def contains(self, point: Vec) -> bool:
        return all(f.contains(point) for f in self.facets)

    def origin_interior(self) -> bool:
        return all(f.offset > 0 for f in self.facets)

    def facet_vertex_sets(self) -> tuple[frozenset[int], ...]:
        """For each facet, the indices of the vertices lying on it."""
        return tuple(
            frozenset(i for i, v in enumerate(self.vertices) if f.is_tight(v))
            for f in self.facets
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.dim == other.dim and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash((self.dim, self.vertices))

    def __repr__(self) -> str:
        return f"Polytope(dim={self.dim}, vertices={len(self.vertices)})"


# ---------------------------------------------------------------------------
# Double description: vertex enumeration of a bounded halfspace intersection.


def vertex_enumeration(
    halfspaces: Sequence[tuple[Vec, Fraction]], dim: int
) -> list[Vec]:
    """Vertices of {x : <a_i, x> <= b_i}, which must be a bounded full-dimensional
    polytope.

    Works on the homogenization cone {(x, t) : b_i t - <a_i, x> >= 0, t >= 0},
    inserting constraints incrementally and maintaining the extreme rays with
    exact integer arithmetic.  Raises UnboundedRegionError when a ray at
    infinity survives and GeometryError when the system cannot describe a
    full-dimensional bounded body.
    """
    rows: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for normal, offset in halfspaces:
        if is_zero_vec(normal):
            raise GeometryError("halfspace normal must be nonzero")
        row = fraction_vec_to_int(tuple(-c for c in normal) + (Fraction(offset),))
        if row not in seen:
            seen.add(row)
            rows.append(row)
    rows.append((0,) * dim + (1,))  # homogenization: t >= 0

    n = dim + 1
    basis = _independent_rows(rows, n)
    if len(basis) < n:
        raise GeometryError(
            "halfspace normals do not span the ambient space (region is "
            "unbounded or lower-dimensional)"
        )
    order = basis + [i for i in range(len(rows)) if i not in set(basis)]
    ordered = [rows[i] for i in order]

    inverse = invert([[Fraction(c) for c in ordered[i]] for i in range(n)])
    columns = transpose(inverse)
    rays: list[tuple[int, ...]] = [fraction_vec_to_int(col) for col in columns]
    full_mask = (1 << n) - 1
    masks: list[int] = [full_mask & ~(1 << j) for j in range(n)]

    for idx in range(n, len(ordered)):
        row = ordered[idx]
        bit = 1 << idx
        vals = [int_dot(row, ray) for ray in rays]
        if all(v >= 0 for v in vals):
            masks = [m | bit if v == 0 else m for m, v in zip(masks, vals)]
            continue
        plus = [i for i, v in enumerate(vals) if v > 0]
        minus = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        fresh: list[tuple[int, ...]] = []
        fresh_masks: list[int] = []
        for p in plus:
            zp = masks[p]
            for m in minus:
                zpn = zp & masks[m]
                if _popcount(zpn) < dim - 1:
                    continue
                adjacent = True
                for k, zk in enumerate(masks):
                    if k != p and k != m and (zk & zpn) == zpn:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                combo = primitive(
                    [vals[p] * rm - vals[m] * rp for rp, rm in zip(rays[p], rays[m])]
                )
                fresh.append(combo)
                fresh_masks.append(zpn | bit)
        keep = plus + zero
        rays = [rays[i] for i in keep] + fresh
        masks = [
            masks[i] | bit if vals[i] == 0 else masks[i] for i in keep
        ] + fresh_masks
        if not rays:
            raise GeometryError("halfspace system has empty interior")

    points: list[Vec] = []
    for ray in rays:
        t = ray[dim]
        if t == 0:
            raise UnboundedRegionError("region is unbounded")
        if t < 0:
            raise GeometryError("inconsistent homogenization ray")
        points.append(tuple(Fraction(c, t) for c in ray[:dim]))
    return points


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _independent_rows(rows: Sequence[Sequence[int]], needed: int) -> list[int]:
    chosen: list[int] = []
    reduced: list[list[Fraction]] = []
    pivots: list[int] = []
    for i, row in enumerate(rows):
        work = [Fraction(c) for c in row]
        for base, p in zip(reduced, pivots):
            if work[p] != 0:
                factor = work[p] / base[p]
                for k in range(len(work)):
                    work[k] -= factor * base[k]
        pivot = next((k for k, c in enumerate(work) if c != 0), None)
        if pivot is not None:
            chosen.append(i)
            reduced.append(work)
            pivots.append(pivot)
            if len(chosen) == needed:
                break
    return chosen


# ---------------------------------------------------------------------------
# Canonical construction.


def _canonical_facets(
    halfspaces: Iterable[tuple[Vec, Fraction]]
) -> tuple[HalfSpace, ...]:
    """Scale facets canonically: to offset 1 when the origin is interior,
    otherwise to a primitive integer normal (orientation preserved)."""
    pairs = [(as_vec(a), Fraction(b)) for a, b in halfspaces]
    if all(b > 0 for _, b in pairs):
        scaled = [HalfSpace(tuple(c / b for c in a), ONE) for a, b in pairs]
    else:
        scaled = []
        for a, b in pairs:
            ints = fraction_vec_to_int(a + (b,))
            scaled.append(
                HalfSpace(tuple(Fraction(c) for c in ints[:-1]), Fraction(ints[-1]))
            )
    return tuple(sorted(scaled, key=lambda h: (h.normal, h.offset)))


def _check_consistency(dim, vertices, facets):
    for v in vertices:
        for f in facets:
            if not f.contains(v):
                raise GeometryError(
                    f"vertex {v} violates facet {f.normal} <= {f.offset}"
                )
    for f in facets:
        tight = [v for v in vertices if f.is_tight(v)]
        if affine_rank(tight) != dim - 1:
            raise GeometryError(
                f"facet {f.normal} <= {f.offset} is not supported by a "
                f"(dim-1)-dimensional vertex set"
            )


def convex_hull(points: Iterable[Sequence]) -> Polytope:
    """Canonical polytope spanned by the given points.

    The result's vertex list is exactly the set of extreme points; the facet
    cache is populated.  Raises DimensionDeficiencyError when the points do
    not affinely span the ambient space.
    """
    pts: list[Vec] = []
    seen: set[Vec] = set()
    for p in points:
        v = as_vec(p)
        if v not in seen:
            seen.add(v)
            pts.append(v)
    if not pts:
        raise GeometryError("no points given")
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise GeometryError("points have mixed dimensions")
    adim = affine_rank(pts)
    if adim != dim:
        raise DimensionDeficiencyError(dim, adim)

    center = tuple(sum(p[k] for p in pts) * Fraction(1, len(pts)) for k in range(dim))
    # a point equal to the centroid is interior; its polar constraint is vacuous
    shifted = [q for q in (vsub(p, center) for p in pts) if not is_zero_vec(q)]
    normals = vertex_enumeration([(q, ONE) for q in shifted], dim)
    facets = _canonical_facets(
        [(a, ONE + dot(a, center)) for a in normals]
    )

    vertices = []
    for p in pts:
        tight = [f.normal for f in facets if f.is_tight(p)]
        if len(tight) >= dim and rank(tight) == dim:
            vertices.append(p)
    vertices.sort()
    poly = Polytope(dim, tuple(vertices), facets)
    _check_consistency(dim, poly.vertices, facets)
    return poly


def _facets_from_vertices(vertices: tuple[Vec, ...], dim: int) -> tuple[HalfSpace, ...]:
    center = tuple(
        sum(v[k] for v in vertices) * Fraction(1, len(vertices)) for k in range(dim)
    )
    shifted = [q for q in (vsub(v, center) for v in vertices) if not is_zero_vec(q)]
    normals = vertex_enumeration([(q, ONE) for q in shifted], dim)
    return _canonical_facets([(a, ONE + dot(a, center)) for a in normals])


def from_halfspaces(
    halfspaces: Sequence[tuple[Vec, Fraction]], dim: int
) -> Polytope:
    """Canonical polytope for a bounded halfspace system; redundant
    halfspaces are pruned by an exact tightness-rank test."""
    points = vertex_enumeration(halfspaces, dim)
    if affine_rank(points) != dim:
        raise DimensionDeficiencyError(dim, affine_rank(points))
    vertices = tuple(sorted(points))
    kept = []
    for a, b in halfspaces:
        av = as_vec(a)
        tight = [v for v in vertices if dot(av, v) == b]
        if len(tight) >= dim and affine_rank(tight) == dim - 1:
            kept.append((av, Fraction(b)))
    facets = _canonical_facets(kept)
    poly = Polytope(dim, vertices, facets)
    _check_consistency(dim, vertices, facets)
    return poly


# ---------------------------------------------------------------------------
# Operations.


def polar_dual(P: Polytope) -> Polytope:
    """The polar body {y : <x, y> <= 1 for all x in P}.

    Needs the origin strictly inside P.  Both representations come for free:
    the dual's vertices are P's canonical facet normals and its facets are
    P's vertices at offset 1.
    """
    if not P.origin_interior():
        raise PolarityDomainError("origin is not interior to the polytope")
    vertices = tuple(sorted(f.normal for f in P.facets))
    facets = _canonical_facets([(v, ONE) for v in P.vertices])
    return Polytope(P.dim, vertices, facets)


def apply_linear(matrix: Sequence[Sequence], P: Polytope) -> Polytope:
    """Image of P under an invertible linear map, re-canonicalized."""
    M = tuple(as_vec(row) for row in matrix)
    if len(M) != P.dim or any(len(row) != P.dim for row in M):
        raise GeometryError("matrix shape does not match the polytope dimension")
    inv = invert(M)  # SingularMatrixError for singular input
    vertices = tuple(sorted(tuple(dot(row, v) for row in M) for v in P.vertices))
    facets = None
    if P._facets is not None:
        inv_t = transpose(inv)
        facets = _canonical_facets(
            [(tuple(dot(row, f.normal) for row in inv_t), f.offset) for f in P.facets]
        )
    return Polytope(P.dim, vertices, facets)


def gauge_norm(P: Polytope, x: Sequence) -> Fraction:
    """Minkowski gauge min{t >= 0 : x in tP} of a symmetric body with the
    origin interior; equals the support function of the polar body."""
    if not P.symmetric:
        raise GeometryError("gauge is only defined here for symmetric bodies")
    if not P.origin_interior():
        raise PolarityDomainError("origin is not interior to the polytope")
    xv = as_vec(x)
    return max(dot(f.normal, xv) for f in P.facets)


def volume(P: Polytope) -> Fraction:
    """Exact Lebesgue volume, by a pulling triangulation: fan from the
    lexicographically smallest vertex of every face over its recursively
    triangulated facets, one determinant per simplex."""
    verts = P.vertices
    d = P.dim
    if d == 1:
        return verts[-1][0] - verts[0][0]
    total = ZERO
    for simplex in _pulling_triangulation(P):
        base = verts[simplex[0]]
        mat = [vsub(verts[i], base) for i in simplex[1:]]
        total += abs(det(mat))
    return total / factorial(d)


def face_lattice(P: Polytope) -> dict[int, list[frozenset[int]]]:
    """Faces of each dimension 1..dim-1 as frozensets of vertex indices.

    Level k-1 is generated from pairwise intersections of level-k faces,
    which is exhaustive because every (k-1)-face of a polytope is the
    intersection of two k-faces.
    """
    verts = P.vertices
    levels: dict[int, list[frozenset[int]]] = {}
    facet_sets = sorted(set(P.facet_vertex_sets()), key=sorted)
    levels[P.dim - 1] = list(facet_sets)
    for k in range(P.dim - 1, 1, -1):
        faces = levels[k]
        found: set[frozenset[int]] = set()
        ordered: list[frozenset[int]] = []
        for i in range(len(faces)):
            for j in range(i + 1, len(faces)):
                g = faces[i] & faces[j]
                if len(g) < k or g in found:
                    continue
                if affine_rank([verts[t] for t in g]) == k - 1:
                    found.add(g)
                    ordered.append(g)
        levels[k - 1] = sorted(ordered, key=sorted)
    return levels


def f_vector(P: Polytope) -> tuple[int, ...]:
    """Face counts (f_0, ..., f_{dim-1})."""
    if P.dim == 1:
        return (len(P.vertices),)
    levels = face_lattice(P)
    return (len(P.vertices),) + tuple(len(levels[k]) for k in range(1, P.dim))


def _pulling_triangulation(P: Polytope):
    """Simplices of the fan triangulation as (dim+1)-tuples of vertex indices."""
    d = P.dim
    levels = face_lattice(P) if d >= 2 else {}
    children_of: dict[frozenset[int], list[frozenset[int]]] = {}
    for k in range(2, d):
        lower = levels[k - 1]
        for face in levels[k]:
            children_of[face] = [g for g in lower if g <= face]
    memo: dict[frozenset[int], list[tuple[int, ...]]] = {}

    def tri(face: frozenset[int], k: int) -> list[tuple[int, ...]]:
        if k == 1:
            lo, hi = sorted(face)
            return [(lo, hi)]
        cached = memo.get(face)
        if cached is not None:
            return cached
        apex = min(face)
        out: list[tuple[int, ...]] = []
        for child in children_of[face]:
            if apex in child:
                continue
            for s in tri(child, k - 1):
                out.append((apex,) + s)
        memo[face] = out
        return out

    apex = 0  # vertices are sorted, so index 0 is the lex-smallest vertex
    result: list[tuple[int, ...]] = []
    for facet in levels[d - 1]:
        if apex in facet:
            continue
        if d - 1 >= 2:
            children_of.setdefault(facet, [g for g in levels[d - 2] if g <= facet])
        for s in tri(facet, d - 1):
            result.append((apex,) + s)
    return result


def shadow_area(P: Polytope) -> Fraction:
    """Area of the orthogonal projection onto the first two coordinates."""
    if P.dim < 2:
        raise GeometryError("shadow needs ambient dimension >= 2")
    if P.dim == 2:
        return volume(P)
    projected = {(v[0], v[1]) for v in P.vertices}
    return volume(convex_hull(projected))
