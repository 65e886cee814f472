"""Seeded random generation of symplectically self-polar polytopes.

One run starts from the symmetrized hull of random rational points strictly
inside the Euclidean unit ball (in general position with the origin), then
repeatedly adjoins a greedy inclusion-maximal centrally symmetric subset of
the symplectic polar's vertices whose pairs stay within the form bound,
until the polar adds nothing new.  Every quantity recorded is exact; floats
appear only as renderings in the CSV and the histogram.
"""

from __future__ import annotations

import csv
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from sympolar.geometry import Polytope, convex_hull, volume
from sympolar.linalg import Vec, rank, vneg
from sympolar.symplectic import expand_step, is_self_polar, omega, symplectic_polar

log = logging.getLogger(__name__)

ROUNDING_DENOMINATOR = 2**16

CSV_COLUMNS = (
    "seed",
    "k",
    "iterations",
    "volume_exact",
    "volume_float",
    "vertex_count",
    "self_polar",
)


@dataclass(frozen=True)
class IterationStep:
    polar_vertex_count: int
    pair_count: int
    selected_pairs: int
    vertex_count_after: int


@dataclass(frozen=True)
class ExperimentRecord:
    seed: int
    dim: int
    k: int
    iterations: int
    final: Polytope
    volume: Fraction
    vertex_count: int
    self_polar: bool
    trace: tuple[IterationStep, ...]


def _round_to_grid(value: float) -> Fraction:
    return Fraction(round(value * ROUNDING_DENOMINATOR), ROUNDING_DENOMINATOR)


def _sample_point(rng: random.Random, dim: int) -> Vec:
    gauss = [rng.gauss(0.0, 1.0) for _ in range(dim)]
    norm = sum(g * g for g in gauss) ** 0.5
    if norm == 0.0:
        return tuple(Fraction(0) for _ in range(dim))
    radius = rng.random() ** (1.0 / dim)
    return tuple(_round_to_grid(g / norm * radius) for g in gauss)


def _general_position_with(accepted: list[Vec], candidate: Vec, dim: int) -> bool:
    """Every dim-subset of the points must be linearly independent, which is
    general position together with the origin."""
    from itertools import combinations

    if rank([candidate]) == 0:
        return False
    for subset in combinations(accepted, dim - 1):
        if rank(list(subset) + [candidate]) < dim:
            return False
    return True


def sample_start_points(rng: random.Random, dim: int, k: int) -> list[Vec]:
    """k rational points strictly inside the unit ball, rounded to the
    2^-16 grid, rejection-sampled into general position."""
    accepted: list[Vec] = []
    while len(accepted) < k:
        candidate = _sample_point(rng, dim)
        if sum(c * c for c in candidate) >= 1:
            continue
        if not _general_position_with(accepted, candidate, dim):
            continue
        accepted.append(candidate)
    return accepted


def _antipodal_pair_reps(P: Polytope) -> list[Vec]:
    reps = {v if v > vneg(v) else vneg(v) for v in P.vertices}
    return sorted(reps)


def random_selfpolar(
    dim: int, k: int, seed: int, max_iter: int = 64
) -> ExperimentRecord:
    """One seeded generation run; re-running with the same arguments
    reproduces the record bit-identically."""
    if dim not in (2, 4, 6):
        raise ValueError(f"generation supports dimensions 2, 4, 6; got {dim}")
    if k < dim:
        raise ValueError(f"need at least dim={dim} start points, got k={k}")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    rng = random.Random(seed)
    points = sample_start_points(rng, dim, k)
    K = convex_hull(points + [vneg(p) for p in points])

    trace: list[IterationStep] = []
    self_polar = False
    iterations = 0
    for _ in range(max_iter):
        iterations += 1
        polar = symplectic_polar(K)
        pairs = _antipodal_pair_reps(polar)
        rng.shuffle(pairs)
        chosen: list[Vec] = []
        for rep in pairs:
            if all(abs(omega(rep, other)) <= 1 for other in chosen):
                chosen.append(rep)
        if len(chosen) == len(pairs):
            self_polar = True
            trace.append(
                IterationStep(
                    polar_vertex_count=len(polar.vertices),
                    pair_count=len(pairs),
                    selected_pairs=len(chosen),
                    vertex_count_after=len(K.vertices),
                )
            )
            break
        K = expand_step(K, chosen + [vneg(p) for p in chosen])
        trace.append(
            IterationStep(
                polar_vertex_count=len(polar.vertices),
                pair_count=len(pairs),
                selected_pairs=len(chosen),
                vertex_count_after=len(K.vertices),
            )
        )

    self_polar = self_polar and is_self_polar(K)
    return ExperimentRecord(
        seed=seed,
        dim=dim,
        k=k,
        iterations=iterations,
        final=K,
        volume=volume(K),
        vertex_count=len(K.vertices),
        self_polar=self_polar,
        trace=tuple(trace),
    )


@dataclass(frozen=True)
class BatchResult:
    dim: int
    k: int
    records: tuple[ExperimentRecord, ...]
    failures: tuple[tuple[int, str], ...]  # (seed, error message)

    @property
    def min_volume(self) -> Fraction | None:
        done = [r.volume for r in self.records if r.self_polar]
        return min(done) if done else None

    @property
    def min_vertex_count(self) -> int | None:
        done = [r.vertex_count for r in self.records if r.self_polar]
        return min(done) if done else None

    @property
    def mean_volume(self) -> Fraction | None:
        done = [r.volume for r in self.records if r.self_polar]
        if not done:
            return None
        return sum(done, Fraction(0)) / len(done)


def batch_generate(
    dim: int,
    k: int,
    runs: int,
    base_seed: int,
    *,
    max_iter: int = 64,
    csv_path=None,
    svg_path=None,
    threads: int = 1,
) -> BatchResult:
    """Seeded batch of generation runs with optional CSV and SVG emission.

    Uses seeds base_seed .. base_seed + runs - 1; a failed run is recorded in
    the CSV with a ``failed`` marker instead of aborting the batch.  When the
    target dimension is 4, observed volumes below 7/2 or vertex counts at or
    below 16 are loudly flagged (they would contradict the conjectured
    minimizers) but not fatal.
    """
    if runs < 1:
        raise ValueError("need at least one run")
    seeds = list(range(base_seed, base_seed + runs))

    def one(seed: int):
        try:
            return seed, random_selfpolar(dim, k, seed, max_iter=max_iter), None
        except Exception as exc:  # noqa: BLE001 - recorded per run
            log.exception("generation run with seed %d failed", seed)
            return seed, None, f"{type(exc).__name__}: {exc}"

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(one, seeds))
    else:
        outcomes = [one(seed) for seed in seeds]

    records = tuple(rec for _, rec, _ in outcomes if rec is not None)
    failures = tuple((seed, msg) for seed, _, msg in outcomes if msg is not None)
    result = BatchResult(dim=dim, k=k, records=records, failures=failures)

    if dim == 4:
        floor = Fraction(7, 2)
        if result.min_volume is not None and result.min_volume < floor:
            log.warning(
                "OBSERVED VOLUME %s BELOW 7/2 in dim-4 batch (seed base %d)",
                result.min_volume,
                base_seed,
            )
        if result.min_vertex_count is not None and result.min_vertex_count <= 16:
            log.warning(
                "OBSERVED VERTEX COUNT %d AT OR BELOW 16 in dim-4 batch (seed base %d)",
                result.min_vertex_count,
                base_seed,
            )

    if csv_path is not None:
        write_batch_csv(csv_path, outcomes)
    if svg_path is not None and runs > 1:
        volumes = [float(r.volume) for r in records if r.self_polar]
        write_histogram_svg(svg_path, volumes)
    return result


def write_batch_csv(path, outcomes):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        for seed, rec, msg in outcomes:
            if rec is None:
                writer.writerow([seed, "", "", "", "", "", "failed"])
            else:
                writer.writerow(
                    [
                        rec.seed,
                        rec.k,
                        rec.iterations,
                        str(rec.volume),
                        repr(float(rec.volume)),
                        rec.vertex_count,
                        "true" if rec.self_polar else "false",
                    ]
                )


BIN_WIDTH = 0.05  # volume histogram resolution


def write_histogram_svg(path, values, width=640, height=360):
    """Fixed-bin-width volume histogram; values are float renderings only."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if not values:
        path.write_text('<svg xmlns="http://www.w3.org/2000/svg"/>\n')
        return
    lo_bin = int(min(values) / BIN_WIDTH)
    hi_bin = int(max(values) / BIN_WIDTH)
    counts = [0] * (hi_bin - lo_bin + 1)
    for v in values:
        counts[int(v / BIN_WIDTH) - lo_bin] += 1
    peak = max(counts)
    margin = 40
    plot_w = width - 2 * margin
    plot_h = height - 2 * margin
    bar_w = plot_w / len(counts)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for i, count in enumerate(counts):
        if count == 0:
            continue
        bar_h = plot_h * count / peak
        x = margin + i * bar_w
        y = height - margin - bar_h
        parts.append(
            f'<rect x="{x:.2f}" y="{y:.2f}" width="{bar_w:.2f}" '
            f'height="{bar_h:.2f}" fill="#4477aa" stroke="white"/>'
        )
    axis_y = height - margin
    parts.append(
        f'<line x1="{margin}" y1="{axis_y}" x2="{width - margin}" y2="{axis_y}" stroke="black"/>'
    )
    for i in range(len(counts) + 1):
        if (lo_bin + i) % 4 == 0:
            x = margin + i * bar_w
            label = f"{(lo_bin + i) * BIN_WIDTH:.2f}"
            parts.append(
                f'<text x="{x:.2f}" y="{axis_y + 16}" font-size="10" '
                f'text-anchor="middle">{label}</text>'
            )
    parts.append(f'<text x="{margin}" y="{margin - 10}" font-size="11">count (peak {peak})</text>')
    parts.append("</svg>")
    path.write_text("\n".join(parts) + "\n")
