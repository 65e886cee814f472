"""Enumeration of symplectically self-polar polytopes with -1/0/1 vertices.

Antipodal pairs of nonzero sign vectors form a compatibility graph with an
edge where |omega| <= 1; every inclusion-maximal clique spans a candidate
polytope that already sits inside its symplectic polar, and the reverse
inclusion is decided by the pairwise check on the polar's vertices.  The
surviving polytopes are classified by vertex count and exact volume.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from sympolar.geometry import Polytope, convex_hull, volume
from sympolar.linalg import Vec, vneg
from sympolar.symplectic import check_subset_sympolar, omega, symplectic_polar

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CliqueClass:
    vertex_count: int
    volume: Fraction
    count: int
    representative: Polytope


@dataclass(frozen=True)
class Pm1Result:
    dim: int
    classes: tuple[CliqueClass, ...]
    cliques_seen: int
    rejected: int  # maximal cliques whose polytope failed self-polarity
    complete: bool


def sign_vector_pairs(dim: int) -> list[Vec]:
    """One representative (first nonzero coordinate positive) per antipodal
    pair of {-1,0,1}^dim minus the origin, sorted lexicographically."""
    reps = []
    for coords in product((-1, 0, 1), repeat=dim):
        if all(c == 0 for c in coords):
            continue
        vec = tuple(Fraction(c) for c in coords)
        if vec > vneg(vec):
            reps.append(vec)
    return sorted(reps)


def compatibility_adjacency(reps: list[Vec]) -> list[int]:
    """Bitmask adjacency; the edge relation |omega(v, w)| <= 1 is well
    defined on antipodal pairs."""
    n = len(reps)
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if abs(omega(reps[i], reps[j])) <= 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def maximal_cliques(adj: list[int], budget: int | None = None):
    """Pivoting Bron-Kerbosch over bitmask sets, in deterministic order;
    stops after ``budget`` cliques when a budget is given."""
    n = len(adj)
    emitted = 0

    def bits(x: int):
        while x:
            low = x & -x
            yield low.bit_length() - 1
            x ^= low

    def expand(r: int, p: int, x: int):
        nonlocal emitted
        if budget is not None and emitted >= budget:
            return
        if p == 0 and x == 0:
            emitted += 1
            yield r
            return
        pivot = -1
        best = -1
        for u in bits(p | x):
            size = bin(p & adj[u]).count("1")
            if size > best:
                best = size
                pivot = u
        for v in bits(p & ~adj[pivot]):
            yield from expand(r | (1 << v), p & adj[v], x & adj[v])
            if budget is not None and emitted >= budget:
                return
            p &= ~(1 << v)
            x |= 1 << v

    yield from expand(0, (1 << n) - 1, 0)


def _clique_polytope(reps: list[Vec], clique: int) -> Polytope:
    points = []
    mask = clique
    while mask:
        low = mask & -mask
        rep = reps[low.bit_length() - 1]
        points.append(rep)
        points.append(vneg(rep))
        mask ^= low
    return convex_hull(points)


def enumerate_pm1(dim: int, budget: int | None = None) -> Pm1Result:
    """Classify the symplectically self-polar -1/0/1 polytopes of the given
    dimension by (vertex count, exact volume).

    Dimension 6 needs an explicit clique budget and is marked partial when
    it is hit; dimensions 2 and 4 enumerate completely.
    """
    if dim not in (2, 4, 6):
        raise ValueError(f"enumeration supports dimensions 2, 4, 6; got {dim}")
    if dim == 6 and budget is None:
        raise ValueError("dimension 6 enumeration requires an explicit budget")
    reps = sign_vector_pairs(dim)
    adj = compatibility_adjacency(reps)

    seen_polytopes: dict[tuple, tuple[bool, int, Fraction, Polytope]] = {}
    classes: dict[tuple[int, Fraction], list] = {}
    cliques_seen = 0
    rejected = 0
    for clique in maximal_cliques(adj, budget):
        cliques_seen += 1
        poly = _clique_polytope(reps, clique)
        key = poly.vertices
        cached = seen_polytopes.get(key)
        if cached is None:
            ok, witness = check_subset_sympolar(poly)
            if not ok:
                raise RuntimeError(
                    f"clique polytope escaped its symplectic polar: {witness}"
                )
            polar = symplectic_polar(poly)
            self_polar = check_subset_sympolar(polar)[0]
            vol = volume(poly) if self_polar else Fraction(0)
            cached = (self_polar, len(poly.vertices), vol, poly)
            seen_polytopes[key] = cached
        self_polar, vcount, vol, poly = cached
        if not self_polar:
            rejected += 1
            continue
        entry = classes.get((vcount, vol))
        if entry is None:
            classes[(vcount, vol)] = [1, poly]
        else:
            entry[0] += 1

    complete = budget is None or cliques_seen < budget
    ordered = tuple(
        CliqueClass(vcount, vol, count, rep)
        for (vcount, vol), (count, rep) in sorted(classes.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    )
    if not complete:
        log.info("clique enumeration stopped at the budget of %d; output is partial", budget)
    return Pm1Result(
        dim=dim,
        classes=ordered,
        cliques_seen=cliques_seen,
        rejected=rejected,
        complete=complete,
    )
