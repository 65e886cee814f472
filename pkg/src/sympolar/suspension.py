"""The hexagon, its symplectic suspension, and the iterated family.

The suspension of a symmetric body X in R^{2n} is the body in R^{2+2n}
consisting of the pairs (v, x) with v in the hexagon and
|omega(u, v)| + ||x||_X <= 1, where u = (1, 1) is the distinguished hexagon
vertex.  Two construction routes are provided: a vertex route that is valid
for symplectically self-polar X, and a halfspace route valid for every
symmetric X with the origin interior.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Sequence

from sympolar.geometry import (
    GeometryError,
    HalfSpace,
    Polytope,
    convex_hull,
    from_halfspaces,
    gauge_norm,
)
from sympolar.linalg import Vec, as_vec
from sympolar.symplectic import is_self_polar, omega

ONE = Fraction(1)

#: The distinguished hexagon vertex the suspension pivots around.
PIVOT: Vec = (Fraction(1), Fraction(1))

_HEXAGON_POINTS = ((1, 1), (1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1))

_hexagon_cache: Polytope | None = None


def hexagon() -> Polytope:
    """conv{±(1,1), ±(1,0), ±(0,1)}: the minimal-volume symplectically
    self-polar body of the plane, and the base of every suspension here."""
    global _hexagon_cache
    if _hexagon_cache is None:
        _hexagon_cache = convex_hull(_HEXAGON_POINTS)
    return _hexagon_cache


def suspend_vertices(X: Polytope) -> Polytope:
    """Suspension via its vertex description, valid when X is symplectically
    self-polar: the hull of the four short hexagon vertices at level zero and
    of {±u} x V(X)."""
    if not is_self_polar(X):
        raise GeometryError(
            "vertex-route suspension needs a symplectically self-polar body; "
            "use suspend_halfspaces for general symmetric input"
        )
    zeros = (Fraction(0),) * X.dim
    points: list[Vec] = [
        (ONE, Fraction(0)) + zeros,
        (-ONE, Fraction(0)) + zeros,
        (Fraction(0), ONE) + zeros,
        (Fraction(0), -ONE) + zeros,
    ]
    for v in X.vertices:
        points.append(PIVOT + v)
        points.append((-ONE, -ONE) + v)
    result = convex_hull(points)
    if set(result.vertices) != set(points):
        raise GeometryError("suspension points failed to be in convex position")
    return result


def suspend_halfspaces(X: Polytope) -> Polytope:
    """Suspension via its facet description, for any symmetric X with the
    origin interior.

    Each facet <a, x> <= 1 of X contributes the two halfspaces
    ±omega(u, v) + <a, x> <= 1 on R^2 x R^{2n}; together with the lifted
    hexagon facets these cut out exactly the suspension (the two hexagon
    edges parallel to the omega(u, .) level sets come out redundant and are
    pruned).
    """
    if not X.symmetric:
        raise GeometryError("suspension needs a centrally symmetric body")
    if not X.origin_interior():
        raise GeometryError("suspension needs the origin interior to the body")
    dim = X.dim + 2
    halfspaces: list[tuple[Vec, Fraction]] = []
    for hs in hexagon().facets:
        halfspaces.append((hs.normal + (Fraction(0),) * X.dim, hs.offset))
    for hs in X.facets:
        # omega(u, v) = v2 - v1 for u = (1, 1)
        for eps in (1, -1):
            normal = (Fraction(-eps), Fraction(eps)) + hs.normal
            halfspaces.append((normal, hs.offset))
    return from_halfspaces(halfspaces, dim)


def suspension_membership(v: Sequence, x: Sequence, X: Polytope) -> bool:
    """Definition-level membership test: v in the hexagon and
    |omega(u, v)| + ||x||_X <= 1."""
    vv, xv = as_vec(v), as_vec(x)
    if len(vv) != 2 or len(xv) != X.dim:
        raise GeometryError("membership point has wrong block dimensions")
    if not hexagon().contains(vv):
        return False
    return abs(omega(PIVOT, vv)) + gauge_norm(X, xv) <= 1


def vertex_count_formula(n: int) -> int:
    """Closed-form vertex count 10 (2^{n-1} - 1) + 6 of the n-fold suspension."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 10 * (2 ** (n - 1) - 1) + 6


def volume_closed_form(n: int) -> Fraction:
    """Exact volume of the n-fold suspension, as the telescoped rational
    product 2^n/n! * prod_{k=0}^{n-1} (4k+3)/(4k+2).

    The product telescopes the Gamma-function quotient
    Gamma(n+3/4) Gamma(1/2) / (Gamma(n+1/2) Gamma(3/4)) through the
    recurrence Gamma(z+1) = z Gamma(z), so no irrational value is needed.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    value = Fraction(2**n, factorial(n))
    for k in range(n):
        value *= Fraction(4 * k + 3, 4 * k + 2)
    return value


_power_cache: dict[int, Polytope] = {}


def _default_cache_dir() -> Path:
    env = os.environ.get("SYMPOLAR_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "sympolar"


def power_suspend(n: int, cache_dir: Path | str | None = None) -> Polytope:
    """The n-fold iterated suspension of the hexagon.

    Levels are cached in memory and on disk (shared polytope JSON format,
    one file per level, written atomically); a cached file failing the
    vertex-count check is recomputed and rewritten.
    """
    if n < 1:
        raise ValueError("suspension power must be >= 1")
    directory = Path(cache_dir) if cache_dir is not None else _default_cache_dir()
    result = hexagon()
    for level in range(2, n + 1):
        if level in _power_cache:
            result = _power_cache[level]
            continue
        result = _load_cached_level(directory, level) or _build_level(
            directory, level, result
        )
        _power_cache[level] = result
    return result


def _level_path(directory: Path, level: int) -> Path:
    return directory / f"p_suspension_{level}.json"


def _load_cached_level(directory: Path, level: int) -> Polytope | None:
    from sympolar.io import MalformedInputError, read_polytope

    path = _level_path(directory, level)
    if not path.exists():
        return None
    try:
        poly = read_polytope(path)
    except MalformedInputError:
        return None
    if poly.dim != 2 * level or len(poly.vertices) != vertex_count_formula(level):
        return None
    return poly


def _build_level(directory: Path, level: int, base: Polytope) -> Polytope:
    from sympolar.io import write_polytope

    poly = suspend_vertices(base)
    try:
        write_polytope(_level_path(directory, level), poly)
    except OSError:
        pass  # caching is best-effort; the computed polytope is still returned
    return poly


@dataclass(frozen=True)
class InductionCertificate:
    """2n+1 pairwise distinct, non-antipodal vertices of the n-fold
    suspension with omega(v_i, v_j) = 1 for every i < j."""

    n: int
    vertices: tuple[Vec, ...]

    def __post_init__(self):
        if len(self.vertices) != 2 * self.n + 1:
            raise ValueError("certificate needs exactly 2n+1 vectors")
        seen = set(self.vertices)
        if len(seen) != len(self.vertices):
            raise ValueError("certificate vectors are not pairwise distinct")
        for v in self.vertices:
            if tuple(-c for c in v) in seen:
                raise ValueError("certificate contains an antipodal pair")
        for i, v in enumerate(self.vertices):
            for w in self.vertices[i + 1 :]:
                if omega(v, w) != 1:
                    raise ValueError(
                        f"certificate pair {(v, w)} has form value {omega(v, w)} != 1"
                    )


def induction_certificate(n: int) -> InductionCertificate:
    """Recursive witness family: the base triple (1,0), (1,1), (0,1) on the
    hexagon; each step prepends the pivot to the previous vectors and appends
    (0,1) + 0 and (-1,0) + 0."""
    if n < 1:
        raise ValueError("n must be >= 1")
    vectors: list[Vec] = [
        (ONE, Fraction(0)),
        (ONE, ONE),
        (Fraction(0), ONE),
    ]
    for level in range(2, n + 1):
        zeros = (Fraction(0),) * (2 * level - 2)
        vectors = [PIVOT + v for v in vectors]
        vectors.append((Fraction(0), ONE) + zeros)
        vectors.append((-ONE, Fraction(0)) + zeros)
    return InductionCertificate(n, tuple(vectors))
