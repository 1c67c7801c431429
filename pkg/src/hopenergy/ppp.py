"""Monte Carlo simulator of the 2-D random network.

Point sets live in a circular sector: source at the origin, destination at
``(dest_distance, 0)``, half-angle ``angle/2`` about the x axis.  Routes
are built with the nearest-with-progress rule (Strategy A) and its every
n-th subsample (Strategy B); energies are accounted over realized hop
distances, so the simulator cross-validates the closed forms in
``random_network`` without sharing their expectation algebra.

Determinism contract: every driver takes a master seed, each trial runs on
its own spawned substream, and aggregation is in trial order, so results
are bit-identical for a fixed seed regardless of the thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InfeasibleAtZeroPower
from .line_network import per_hop_failure_short
from .outage import LN2, AntennaConfig, OutageTarget, rate_offset_k

__all__ = [
    "SOURCE",
    "DEST",
    "SectorRegion",
    "PointSet",
    "Route",
    "EnergyStats",
    "SimConfig",
    "CompareResult",
    "generate_ppp",
    "generate_uniform_count",
    "route_strategy_a",
    "route_strategy_b",
    "route_energy",
    "simulate_energies",
    "monte_carlo_compare",
    "write_points_csv",
    "write_route_csv",
]

# Sentinel node indices for the two endpoints, which are not part of the
# generated point set.
SOURCE = -1
DEST = -2


@dataclass(frozen=True)
class SectorRegion:
    """Circular sector with apex at the source and axis toward the destination."""

    dest_distance: float
    angle: float

    def __post_init__(self):
        if not self.dest_distance > 0.0:
            raise DomainError(f"dest_distance must be positive, got {self.dest_distance!r}")
        if not 0.0 < self.angle <= math.pi:
            raise DomainError(f"angle must lie in (0, pi], got {self.angle!r}")

    @property
    def area(self) -> float:
        return 0.5 * self.angle * self.dest_distance**2

    @property
    def destination(self) -> np.ndarray:
        return np.array([self.dest_distance, 0.0])

    def contains(self, points: np.ndarray) -> np.ndarray:
        """Membership mask for an (N, 2) array of coordinates."""
        pts = np.atleast_2d(points)
        radius = np.hypot(pts[:, 0], pts[:, 1])
        theta = np.arctan2(pts[:, 1], pts[:, 0])
        return (radius <= self.dest_distance) & (np.abs(theta) <= self.angle / 2.0)


@dataclass(frozen=True)
class PointSet:
    """Realized relay positions inside a sector."""

    points: np.ndarray
    region: SectorRegion
    seed: int | None


@dataclass(frozen=True)
class Route:
    """A node sequence from source to destination.

    ``node_indices`` starts with SOURCE and ends with DEST; the entries in
    between index into the owning PointSet.  ``positions`` holds the
    coordinates of every route node, ``hop_distances`` the consecutive
    Euclidean distances.
    """

    node_indices: tuple[int, ...]
    positions: np.ndarray
    hop_distances: np.ndarray

    @property
    def hop_count(self) -> int:
        return len(self.hop_distances)


@dataclass(frozen=True)
class EnergyStats:
    mean: float
    stderr: float
    trials: int


@dataclass(frozen=True)
class CompareResult:
    strategy_a: EnergyStats
    strategy_b: EnergyStats
    ratio_a_to_b: EnergyStats


@dataclass(frozen=True)
class SimConfig:
    """Configuration of one Monte Carlo comparison run.

    ``node_count`` set: exactly that many uniform points per trial
    (binomial point process); unset: Poisson counts at ``intensity``.
    ``target_split`` chooses how the end-to-end failure budget is divided:
    ``realized`` splits over each strategy's realized hop count,
    ``per-segment`` gives every Strategy-B hop the full end-to-end target
    and every Strategy-A hop the nominal per-hop target.
    """

    region: SectorRegion
    ant: AntennaConfig
    rate: float
    failure_prob: float
    alpha: float
    n_hops: int
    node_count: int | None = None
    intensity: float = 1.0
    anchor: str = "current"
    target_split: str = "realized"

    def __post_init__(self):
        if self.anchor not in ("current", "source"):
            raise DomainError(f"anchor must be 'current' or 'source', got {self.anchor!r}")
        if self.target_split not in ("realized", "per-segment"):
            raise DomainError(
                f"target_split must be 'realized' or 'per-segment', got {self.target_split!r}"
            )
        if self.n_hops < 1:
            raise DomainError(f"n_hops must be >= 1, got {self.n_hops!r}")


def _uniform_in_sector(region: SectorRegion, count: int, rng: np.random.Generator) -> np.ndarray:
    radius = region.dest_distance * np.sqrt(rng.random(count))
    theta = region.angle * (rng.random(count) - 0.5)
    return np.column_stack((radius * np.cos(theta), radius * np.sin(theta)))


def generate_ppp(region: SectorRegion, intensity: float, seed) -> PointSet:
    """Poisson point process: Poisson(intensity * area) uniform points."""
    if not intensity > 0.0:
        raise DomainError(f"intensity must be positive, got {intensity!r}")
    rng = np.random.default_rng(seed)
    count = int(rng.poisson(intensity * region.area))
    points = _uniform_in_sector(region, count, rng)
    return PointSet(points, region, seed if isinstance(seed, int) else None)


def generate_uniform_count(region: SectorRegion, count: int, seed) -> PointSet:
    """Binomial point process: exactly ``count`` uniform points."""
    if count < 0:
        raise DomainError(f"count must be >= 0, got {count!r}")
    rng = np.random.default_rng(seed)
    points = _uniform_in_sector(region, count, rng)
    return PointSet(points, region, seed if isinstance(seed, int) else None)


def route_strategy_a(
    points: PointSet, phi: float | None = None, anchor: str = "current"
) -> Route:
    """Nearest-neighbor-with-progress route from source to destination.

    From the current node, nodes are eligible if they make strictly
    positive progress (x coordinate strictly increases) and lie inside the
    sector of angle ``phi`` re-centered on the ray from the current node to
    the destination (``anchor='source'`` keeps the original source-anchored
    sector instead, for sensitivity checks).  The nearest eligible node is
    appended; when none exists, or the destination is nearer than all of
    them, the route finishes with a direct hop to the destination.
    """
    region = points.region
    if phi is None:
        phi = region.angle
    dest = region.destination
    pts = points.points
    half_cos = math.cos(phi / 2.0)

    indices = [SOURCE]
    positions = [np.zeros(2)]
    current = np.zeros(2)
    if len(pts) > 0:
        available = np.ones(len(pts), dtype=bool)
        while True:
            progress = pts[:, 0] > current[0]
            eligible = available & progress
            if anchor == "current":
                to_dest = dest - current
                norm_dest = np.hypot(*to_dest)
                offsets = pts - current
                norms = np.hypot(offsets[:, 0], offsets[:, 1])
                with np.errstate(invalid="ignore", divide="ignore"):
                    cos_angle = (offsets @ to_dest) / (norms * norm_dest)
                eligible &= norms > 0.0
                eligible &= cos_angle >= half_cos
            if not eligible.any():
                break
            dist = np.hypot(pts[:, 0] - current[0], pts[:, 1] - current[1])
            dist = np.where(eligible, dist, np.inf)
            best = int(np.argmin(dist))
            if np.hypot(dest[0] - current[0], dest[1] - current[1]) < dist[best]:
                break
            indices.append(best)
            positions.append(pts[best])
            available[best] = False
            current = pts[best]

    indices.append(DEST)
    positions.append(dest)
    pos = np.asarray(positions)
    hops = np.hypot(np.diff(pos[:, 0]), np.diff(pos[:, 1]))
    return Route(tuple(indices), pos, hops)


def route_strategy_b(route_a: Route, n: int) -> Route:
    """Every n-th intermediate of the Strategy-A route, plus the destination."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n!r}")
    inner = route_a.node_indices[1:-1]
    keep = list(inner[n - 1 :: n])
    indices = [SOURCE] + keep + [DEST]
    inner_pos = route_a.positions[1:-1]
    positions = np.vstack(
        [route_a.positions[:1], inner_pos[n - 1 :: n], route_a.positions[-1:]]
    )
    hops = np.hypot(np.diff(positions[:, 0]), np.diff(positions[:, 1]))
    return Route(tuple(indices), positions, hops)


def route_energy(
    route: Route,
    alpha: float,
    ant: AntennaConfig,
    per_hop_failure: float,
    rate: float,
    mode: str = "exact",
) -> float:
    """Sum of d^alpha (2^k - 1) over realized hops, normalized like the
    closed forms (no n0 or n_t/n_r factor)."""
    target = OutageTarget(rate, per_hop_failure)
    k = rate_offset_k(rate, ant, target, mode)
    if k <= 0.0:
        raise InfeasibleAtZeroPower(f"rate offset k = {k!r} <= 0")
    gain = math.expm1(k * LN2)
    return float(np.sum(route.hop_distances**alpha)) * gain


def _trial_energies(config: SimConfig, child: np.random.SeedSequence):
    rng = np.random.default_rng(child)
    if config.node_count is not None:
        count = config.node_count
    else:
        count = int(rng.poisson(config.intensity * config.region.area))
    points = PointSet(_uniform_in_sector(config.region, count, rng), config.region, None)
    route_a = route_strategy_a(points, anchor=config.anchor)
    route_b = route_strategy_b(route_a, config.n_hops)
    eps = config.failure_prob
    if config.target_split == "realized":
        fail_a = per_hop_failure_short(eps, route_a.hop_count)
        fail_b = per_hop_failure_short(eps, route_b.hop_count)
    else:
        fail_a = per_hop_failure_short(eps, config.n_hops)
        fail_b = eps
    energy_a = route_energy(route_a, config.alpha, config.ant, fail_a, config.rate)
    energy_b = route_energy(route_b, config.alpha, config.ant, fail_b, config.rate)
    return energy_a, energy_b, route_a.hop_count, route_b.hop_count


def simulate_energies(
    config: SimConfig, trials: int, seed, threads: int = 1
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Per-trial Strategy A/B energies and hop counts, in trial order."""
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials!r}")
    seed_seq = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    children = seed_seq.spawn(trials)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda c: _trial_energies(config, c), children))
    else:
        rows = [_trial_energies(config, c) for c in children]
    ea, eb, ha, hb = (np.asarray(col) for col in zip(*rows))
    return ea, eb, ha, hb


def _stats(values: np.ndarray) -> EnergyStats:
    n = len(values)
    spread = float(np.std(values, ddof=1)) / math.sqrt(n) if n > 1 else 0.0
    return EnergyStats(float(np.mean(values)), spread, n)


def monte_carlo_compare(config: SimConfig, trials: int, seed, threads: int = 1) -> CompareResult:
    """Mean energies of both strategies plus the per-trial ratio."""
    ea, eb, _, _ = simulate_energies(config, trials, seed, threads)
    return CompareResult(_stats(ea), _stats(eb), _stats(ea / eb))


def write_points_csv(points: PointSet, path) -> None:
    """One row per point: index, x, y."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# dest_distance={points.region.dest_distance!r}\n")
        fh.write(f"# angle={points.region.angle!r}\n")
        fh.write("index,x,y\n")
        for i, (x, y) in enumerate(points.points):
            fh.write(f"{i},{x:.17g},{y:.17g}\n")


def write_route_csv(route: Route, path) -> None:
    """One row per hop: start/end node indices, coordinates, distance."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("hop,from_index,to_index,from_x,from_y,to_x,to_y,distance\n")
        for h in range(route.hop_count):
            a, b = route.node_indices[h], route.node_indices[h + 1]
            xa, ya = route.positions[h]
            xb, yb = route.positions[h + 1]
            fh.write(
                f"{h},{a},{b},{xa:.17g},{ya:.17g},{xb:.17g},{yb:.17g},"
                f"{route.hop_distances[h]:.17g}\n"
            )
