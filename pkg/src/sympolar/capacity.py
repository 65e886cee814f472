"""Ekeland-Hofer-Zehnder capacity of centrally symmetric polytopes.

The reciprocal capacity of a symmetric polytope is the maximum of
sum_{i<j} beta_i beta_j omega(g_i, g_j) over orderings and signings of its
facet-normal generators with sum beta_i h(g_i) = 1, beta >= 0; for a
symplectically self-polar polytope the generators may equivalently be taken
to be one representative per antipodal vertex pair with sum beta_i = 1.

The search enumerates supports, orderings, and sign patterns exactly; the
inner maximization over coefficients on each face of the normalized simplex
is the stationary point of the Lagrange system, solved in exact rational
arithmetic.  An optional floating-point prepass only orders and prunes
candidate configurations; every reported value is re-derived exactly.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial
from typing import Sequence

from sympolar.geometry import GeometryError, Polytope
from sympolar.linalg import Vec, as_vec, dot, solve, vneg
from sympolar.suspension import PIVOT, induction_certificate
from sympolar.symplectic import is_self_polar, omega

log = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)

VERTICES = "vertices"
FACET_NORMALS = "facet-normals"

#: Hard ceiling on (support, ordering, signing) configurations per search.
DEFAULT_MAX_CONFIGS = 5_000_000

_PREPASS_THRESHOLD = 20_000
_FLOAT_MARGIN = 1e-6


class CapacityError(ValueError):
    """Base class for capacity-search and certificate failures."""


class SearchBudgetError(CapacityError):
    """The exact search would exceed the configured configuration budget."""

    def __init__(self, configurations: int, budget: int):
        super().__init__(
            f"search needs {configurations} configurations, over the budget "
            f"of {budget}; raise max_configs or lower support_bound"
        )
        self.configurations = configurations
        self.budget = budget


class CertificateError(CapacityError):
    """A capacity certificate violates its invariants."""


@dataclass(frozen=True)
class CapacityCertificate:
    """A signed ordering of generators with normalized nonnegative
    coefficients; its objective value witnesses c_EHZ <= 1/objective.

    ``indices`` lists (position in ``generators``, sign) in objective order;
    coefficients are aligned with it and absorb no signs.
    """

    kind: str
    indices: tuple[tuple[int, int], ...]
    coeffs: tuple[Fraction, ...]
    objective: Fraction
    generators: tuple[Vec, ...]

    def __post_init__(self):
        if self.kind not in (VERTICES, FACET_NORMALS):
            raise CertificateError(f"unknown certificate kind {self.kind!r}")
        if len(self.indices) != len(self.coeffs):
            raise CertificateError("indices and coefficients differ in length")
        if any(c < 0 for c in self.coeffs):
            raise CertificateError("certificate coefficients must be nonnegative")
        for i, s in self.indices:
            if not 0 <= i < len(self.generators) or s not in (-1, 1):
                raise CertificateError(f"invalid generator reference ({i}, {s})")

    def support_vectors(self) -> tuple[Vec, ...]:
        out = []
        for i, s in self.indices:
            g = self.generators[i]
            out.append(g if s == 1 else vneg(g))
        return tuple(out)


def _pair_rep(v: Vec) -> Vec:
    neg = vneg(v)
    return v if v > neg else neg


def generator_base(P: Polytope, kind: str) -> tuple[Vec, ...]:
    """One canonical representative per antipodal generator pair."""
    if not P.symmetric:
        raise CapacityError("capacity generators need a centrally symmetric body")
    if kind == VERTICES:
        items = P.vertices
    elif kind == FACET_NORMALS:
        items = tuple(f.normal for f in P.facets)
    else:
        raise CapacityError(f"unknown generator kind {kind!r}")
    return tuple(sorted({_pair_rep(v) for v in items}))


def support_value(P: Polytope, direction: Vec) -> Fraction:
    return max(dot(v, direction) for v in P.vertices)


def _double_sum(vectors: Sequence[Vec], coeffs: Sequence[Fraction]) -> Fraction:
    total = ZERO
    for i in range(len(vectors)):
        if coeffs[i] == 0:
            continue
        for j in range(i + 1, len(vectors)):
            if coeffs[j] == 0:
                continue
            total += coeffs[i] * coeffs[j] * omega(vectors[i], vectors[j])
    return total


def evaluate_certificate(P: Polytope, cert: CapacityCertificate) -> Fraction:
    """Re-evaluate a certificate against a polytope.

    Checks that the signed generators are genuine vertices (vertices mode,
    which also needs a symplectically self-polar polytope) or outer facet
    normals (facet-normals mode), and that the normalization invariant
    holds; returns the recomputed objective.
    """
    vectors = cert.support_vectors()
    if cert.kind == VERTICES:
        if not is_self_polar(P):
            raise CertificateError(
                "vertex-generator certificates need a symplectically self-polar body"
            )
        vertex_set = set(P.vertices)
        for g in vectors:
            if g not in vertex_set:
                raise CertificateError(f"{g} is not a vertex of the polytope")
        normalization = sum(cert.coeffs, ZERO)
    else:
        from sympolar.linalg import fraction_vec_to_int

        directions = {fraction_vec_to_int(f.normal) for f in P.facets}
        for g in vectors:
            if fraction_vec_to_int(g) not in directions:
                raise CertificateError(f"{g} is not an outer facet normal")
        normalization = sum(
            (c * support_value(P, g) for c, g in zip(cert.coeffs, vectors)), ZERO
        )
    if normalization != 1:
        raise CertificateError(
            f"certificate normalization is {normalization}, expected 1"
        )
    return _double_sum(vectors, cert.coeffs)


def _base_and_indices(vectors: Sequence[Vec]):
    base = tuple(sorted({_pair_rep(v) for v in vectors}))
    position = {g: i for i, g in enumerate(base)}
    indices = []
    for v in vectors:
        rep = _pair_rep(v)
        indices.append((position[rep], 1 if v == rep else -1))
    return base, tuple(indices)


def equal_weight_certificate(n: int) -> CapacityCertificate:
    """Uniform weights 1/(2n+1) on the induction witness family; the
    objective is n/(2n+1), so the certified bound is c_EHZ <= 2 + 1/n."""
    witness = induction_certificate(n)
    vectors = witness.vertices
    weight = Fraction(1, 2 * n + 1)
    coeffs = (weight,) * len(vectors)
    base, indices = _base_and_indices(vectors)
    objective = _double_sum(vectors, coeffs)
    return CapacityCertificate(VERTICES, indices, coeffs, objective, base)


def make_suspension_certificate(
    cert_K: CapacityCertificate, c_K
) -> CapacityCertificate:
    """Push a vertex certificate of a self-polar body K with capacity c_K > 2
    through the suspension.

    The suspension generators are u + v_i together with (0,1) + 0 and
    (-1,0) + 0; with alpha = (c_K - 2)/(3 c_K - 4) the weights
    (1 - 2 alpha) beta_i, alpha, alpha give objective
    (c_K - 1)/(3 c_K - 4), certifying c_EHZ <= 3 - 1/(c_K - 1).
    """
    c_K = Fraction(c_K)
    if cert_K.kind != VERTICES:
        raise CertificateError("suspension lift needs a vertex-generator certificate")
    if c_K <= 2:
        raise CapacityError(
            f"suspension bound needs capacity > 2, got {c_K}"
        )
    if cert_K.objective * c_K != 1:
        raise CertificateError(
            f"certificate objective {cert_K.objective} does not match 1/{c_K}"
        )
    betas = cert_K.coeffs
    if sum(betas, ZERO) != 1:
        raise CertificateError("certificate weights must sum to 1")
    vs = cert_K.support_vectors()
    inner_dim = len(vs[0])
    zeros = (ZERO,) * inner_dim
    vectors = [PIVOT + v for v in vs]
    vectors.append((ZERO, ONE) + zeros)
    vectors.append((-ONE, ZERO) + zeros)
    alpha = (c_K - 2) / (3 * c_K - 4)
    coeffs = tuple((1 - 2 * alpha) * b for b in betas) + (alpha, alpha)
    objective = _double_sum(vectors, coeffs)
    expected = (c_K - 1) / (3 * c_K - 4)
    if objective != expected:
        raise CertificateError(
            f"suspension certificate evaluates to {objective}, expected {expected}"
        )
    base, indices = _base_and_indices(vectors)
    return CapacityCertificate(VERTICES, indices, coeffs, objective, base)


# ---------------------------------------------------------------------------
# Exact brute-force search.


def _configuration_count(m: int, bound: int) -> int:
    return sum(comb(m, k) * factorial(k - 1) * 2 ** (k - 1) for k in range(2, bound + 1))


def _signs_from_bits(bits: int, k: int) -> tuple[int, ...]:
    # first sign fixed positive: the objective is invariant under global negation
    return (1,) + tuple(1 if not (bits >> i) & 1 else -1 for i in range(k - 1))


def _exact_kkt(order, signs, W, h):
    """Stationary coefficients of the objective on the face spanned by the
    ordered signed support; returns (coeffs, value) or None when the Lagrange
    system is singular or leaves the open face."""
    k = len(order)
    mat = [[ZERO] * (k + 1) for _ in range(k + 1)]
    for a in range(k):
        for b in range(a + 1, k):
            val = signs[a] * signs[b] * W[order[a]][order[b]]
            mat[a][b] = val
            mat[b][a] = val
    for a in range(k):
        mat[a][k] = -h[order[a]]
        mat[k][a] = h[order[a]]
    rhs = [ZERO] * k + [ONE]
    sol = solve(mat, rhs)
    if sol is None:
        return None
    coeffs = sol[:k]
    if any(c <= 0 for c in coeffs):
        return "infeasible"
    lam = sol[k]
    value = lam / 2
    check = ZERO
    for a in range(k):
        for b in range(a + 1, k):
            check += coeffs[a] * coeffs[b] * mat[a][b]
    if check != value:
        raise CapacityError("stationary value mismatch; please report this input")
    return coeffs, value


def _search_supports_exact(supports, m, W, h):
    best = (ZERO, None, None)  # value, key, coeffs
    degenerate = 0
    for support in supports:
        k = len(support)
        for rest in permutations(support[1:]):
            order = (support[0],) + rest
            for bits in range(1 << (k - 1)):
                signs = _signs_from_bits(bits, k)
                outcome = _exact_kkt(order, signs, W, h)
                if outcome is None:
                    degenerate += 1
                    continue
                if outcome == "infeasible":
                    continue
                coeffs, value = outcome
                key = (support, order, signs)
                if value > best[0] or (value == best[0] and (best[1] is None or key < best[1])):
                    best = (value, key, coeffs)
    return best, degenerate


def _search_supports_float(supports, m, W_int, h_int):
    """Float prepass over integer generator data.

    KKT matrices are integral, so a determinant below 1/2 in absolute value
    is exactly zero (degenerate system); all other systems solve accurately
    enough that a 1e-6 value margin cannot drop the exact maximizer.
    """
    import numpy as np

    W = np.array(W_int, dtype=float)
    h = np.array(h_int, dtype=float)
    best_float = 0.0
    degenerate = 0
    candidates: list[tuple[float, tuple]] = []

    def prune(threshold):
        nonlocal candidates
        candidates = [c for c in candidates if c[0] >= threshold]

    for support in supports:
        k = len(support)
        nbits = 1 << (k - 1)
        signs_mat = np.ones((nbits, k))
        for i in range(k - 1):
            signs_mat[:, i + 1] = np.where(
                (np.arange(nbits) >> i) & 1, -1.0, 1.0
            )
        rhs = np.zeros(k + 1)
        rhs[k] = 1.0
        for rest in permutations(support[1:]):
            order = (support[0],) + rest
            sub = W[np.ix_(order, order)]
            upper = np.triu(sub, 1)
            base = upper + upper.T
            mats = signs_mat[:, :, None] * signs_mat[:, None, :] * base[None]
            kkt = np.zeros((nbits, k + 1, k + 1))
            kkt[:, :k, :k] = mats
            kkt[:, :k, k] = -h[list(order)]
            kkt[:, k, :k] = h[list(order)]
            dets = np.linalg.det(kkt)
            regular = np.abs(dets) > 0.5
            degenerate += int(nbits - regular.sum())
            if not regular.any():
                continue
            nreg = int(regular.sum())
            rhs_block = np.broadcast_to(rhs[:, None], (nreg, k + 1, 1))
            sols = np.linalg.solve(kkt[regular], rhs_block)[:, :, 0]
            coeff_block = sols[:, :k]
            values = sols[:, k] / 2.0
            loose = (coeff_block > -1e-9).all(axis=1)
            strict = (coeff_block > 1e-9).all(axis=1)
            bit_ids = np.flatnonzero(regular)
            for row, bits in enumerate(bit_ids):
                if not loose[row]:
                    continue
                value = float(values[row])
                if strict[row] and value > best_float:
                    best_float = value
                    prune(best_float - _FLOAT_MARGIN)
                if value >= best_float - _FLOAT_MARGIN:
                    candidates.append((value, (support, order, int(bits))))
    prune(best_float - _FLOAT_MARGIN)
    return candidates, best_float, degenerate


def _partition(items: list, parts: int) -> list[list]:
    return [items[i::parts] for i in range(parts)]


def ehz_brute_force(
    P: Polytope,
    support_bound: int | None = None,
    *,
    mode: str = FACET_NORMALS,
    prepass: bool | None = None,
    threads: int = 1,
    max_configs: int = DEFAULT_MAX_CONFIGS,
) -> tuple[Fraction, CapacityCertificate]:
    """Exact EHZ capacity with an optimal certificate.

    Enumerates generator supports up to ``support_bound``, all orderings with
    the smallest support index first, and all sign patterns with the first
    sign positive.  The default bound min(m, dim+1) matches the support size
    of the optimal certificates of the suspension family; it is a heuristic
    with no general guarantee, so a bounded search yields a certified upper
    bound that can be strict (an octagon already needs all four generator
    pairs).  Pass ``support_bound=m`` for the certified-complete full search.

    Degenerate stationary systems are skipped and counted; the count is
    logged.  Raises SearchBudgetError rather than approximating when the
    configuration count exceeds ``max_configs``.
    """
    if mode not in (VERTICES, FACET_NORMALS):
        raise CapacityError(f"unknown search mode {mode!r}")
    if not P.symmetric:
        raise CapacityError("capacity search needs a centrally symmetric polytope")
    if mode == VERTICES and not is_self_polar(P):
        raise CapacityError(
            "vertex-generator search needs a symplectically self-polar polytope"
        )
    base = generator_base(P, mode)
    m = len(base)
    if m < 2:
        raise CapacityError("need at least two generator pairs")
    bound = min(m, P.dim + 1) if support_bound is None else support_bound
    if bound < 2:
        raise CapacityError("support bound must be at least 2")
    bound = min(bound, m)
    total = _configuration_count(m, bound)
    if total > max_configs:
        raise SearchBudgetError(total, max_configs)

    W = [[omega(a, b) for b in base] for a in base]
    # vertices mode normalizes plain coefficient mass; normals mode weights
    # each coefficient by the support value of its generator direction
    h = [ONE] * m if mode == VERTICES else [support_value(P, g) for g in base]
    integral = all(c.denominator == 1 for row in W for c in row) and all(
        c.denominator == 1 for c in h
    )
    if prepass is None:
        prepass = integral and total >= _PREPASS_THRESHOLD
    if prepass and not integral:
        log.info("generator data is not integral; falling back to the exact path")
        prepass = False

    supports = [
        s for k in range(2, bound + 1) for s in combinations(range(m), k)
    ]
    threads = max(1, threads)
    parts = _partition(supports, threads) if threads > 1 else [supports]

    degenerate = 0
    if prepass:
        W_int = [[int(c) for c in row] for row in W]
        h_int = [int(c) for c in h]
        results = _run_parts(
            parts, lambda chunk: _search_supports_float(chunk, m, W_int, h_int), threads
        )
        merged: list[tuple[float, tuple]] = []
        best_float = 0.0
        for cands, strict_best, dcount in results:
            degenerate += dcount
            merged.extend(cands)
            best_float = max(best_float, strict_best)
        shortlist = sorted(
            (cfg for value, cfg in merged if value >= best_float - _FLOAT_MARGIN),
            key=lambda cfg: (len(cfg[0]), cfg),
        )
        best = (ZERO, None, None)
        for support, order, bits in shortlist:
            signs = _signs_from_bits(bits, len(order))
            outcome = _exact_kkt(order, signs, W, h)
            if outcome is None or outcome == "infeasible":
                continue
            coeffs, value = outcome
            key = (support, order, signs)
            if value > best[0] or (
                value == best[0] and (best[1] is None or key < best[1])
            ):
                best = (value, key, coeffs)
    else:
        results = _run_parts(
            parts, lambda chunk: _search_supports_exact(chunk, m, W, h), threads
        )
        best = (ZERO, None, None)
        for part_best, dcount in results:
            degenerate += dcount
            value, key, coeffs = part_best
            if key is None:
                continue
            if value > best[0] or (
                value == best[0] and (best[1] is None or key < best[1])
            ):
                best = (value, key, coeffs)

    if degenerate:
        log.info("capacity search skipped %d degenerate stationary systems", degenerate)
    value, key, coeffs = best
    if key is None or value <= 0:
        raise CapacityError(
            "search found no positive stationary value; the input is degenerate"
        )
    support, order, signs = key
    cert = CapacityCertificate(
        kind=mode,
        indices=tuple(zip(order, signs)),
        coeffs=tuple(coeffs),
        objective=value,
        generators=base,
    )
    return 1 / value, cert


def _run_parts(parts, worker, threads):
    if threads <= 1 or len(parts) <= 1:
        return [worker(chunk) for chunk in parts]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, parts))
