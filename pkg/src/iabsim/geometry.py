"""Planar deployment sampling and the spatial predicates used by path selection.

All coordinates and distances are in meters; densities are in nodes per km^2.
Every sampling routine takes an explicit ``numpy.random.Generator`` so callers
own their streams and repetitions stay reproducible.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Region:
    """Axis-aligned rectangular deployment area."""

    width_m: float = 1000.0
    height_m: float = 1000.0

    def __post_init__(self):
        if self.width_m <= 0 or self.height_m <= 0:
            raise ConfigError(
                f"region sides must be positive, got {self.width_m} x {self.height_m} m"
            )

    @property
    def area_km2(self) -> float:
        return self.width_m * self.height_m / 1e6

    @property
    def center(self) -> "Position":
        return Position(self.width_m / 2.0, self.height_m / 2.0)


@dataclass(frozen=True)
class Position:
    x: float
    y: float


def distance(a: Position, b: Position) -> float:
    return math.hypot(b.x - a.x, b.y - a.y)


def bearing(a: Position, b: Position) -> float:
    """Angle of the a -> b direction, radians in (-pi, pi]."""
    return math.atan2(b.y - a.y, b.x - a.x)


@dataclass
class GnbNode:
    """One base station: a wired donor or a wireless relay.

    ``attached_count`` is the number of terminals currently served by the node;
    it feeds the rate-based selection policy and is filled in after user
    association.
    """

    id: int
    position: Position
    is_wired: bool
    sector_boresights: tuple[float, ...] = (0.0,)
    attached_count: int = 0


@dataclass
class Deployment:
    """One realized topology over a region.

    Node ids are always the contiguous range 0..n-1 (list order is free), so
    they double as row indices into pairwise link matrices.
    """

    region: Region
    gnbs: list[GnbNode]
    origin_id: int
    ue_positions: list[Position] = field(default_factory=list)

    def __post_init__(self):
        if sorted(g.id for g in self.gnbs) != list(range(len(self.gnbs))):
            raise ConfigError("gNB ids must be unique and form the range 0..n-1")
        self._by_id = {g.id: g for g in self.gnbs}
        n_wired = sum(g.is_wired for g in self.gnbs)
        if n_wired == 0 or n_wired == len(self.gnbs):
            raise ConfigError("deployment needs at least one wired and one wireless gNB")
        if self.node(self.origin_id).is_wired:
            raise ConfigError("origin must be a wireless gNB")

    def node(self, node_id: int) -> GnbNode:
        return self._by_id[node_id]

    @property
    def n_gnbs(self) -> int:
        return len(self.gnbs)

    @property
    def wired_ids(self) -> tuple[int, ...]:
        return tuple(sorted(g.id for g in self.gnbs if g.is_wired))

    def positions_by_id(self) -> np.ndarray:
        """(n, 2) array of coordinates, row index == node id."""
        pos = np.empty((self.n_gnbs, 2))
        for g in self.gnbs:
            pos[g.id, 0] = g.position.x
            pos[g.id, 1] = g.position.y
        return pos


def sample_ppp(density_per_km2: float, region: Region, rng: np.random.Generator) -> list[Position]:
    """Homogeneous Poisson scatter: Poisson(density * area) points, i.i.d. uniform."""
    if density_per_km2 <= 0:
        raise ConfigError(f"density must be positive, got {density_per_km2} per km^2")
    count = int(rng.poisson(density_per_km2 * region.area_km2))
    xs = rng.uniform(0.0, region.width_m, count)
    ys = rng.uniform(0.0, region.height_m, count)
    return [Position(float(x), float(y)) for x, y in zip(xs, ys)]


def _sector_boresights(offset: float, sectors: int) -> tuple[float, ...]:
    return tuple((offset + TWO_PI * s / sectors) % TWO_PI for s in range(sectors))


def assign_roles(
    positions: list[Position],
    p_w: float,
    region: Region,
    rng: np.random.Generator,
    sectors: int = 3,
) -> Deployment:
    """Mark each node wired with probability ``p_w`` and pick the origin relay.

    Role vectors are redrawn until both a wired and a wireless node exist.
    Each node gets ``sectors`` evenly spaced boresights sharing one uniform
    random rotation. The origin is the wireless node nearest the region center
    (lowest id on ties), which keeps evaluated paths away from the border.
    """
    if not positions:
        raise ConfigError("cannot assign roles to an empty position list")
    if not 0.0 < p_w < 1.0:
        raise ConfigError(f"p_w must lie strictly in (0, 1), got {p_w}")
    if sectors < 1:
        raise ConfigError(f"sectors must be >= 1, got {sectors}")
    n = len(positions)
    if n < 2:
        raise ConfigError("need at least two gNBs to split into wired and wireless")

    while True:
        wired = rng.random(n) < p_w
        if 0 < int(wired.sum()) < n:
            break
    offsets = rng.uniform(0.0, TWO_PI, n)

    gnbs = [
        GnbNode(i, pos, bool(wired[i]), _sector_boresights(float(offsets[i]), sectors))
        for i, pos in enumerate(positions)
    ]
    center = region.center
    origin = min(
        (g for g in gnbs if not g.is_wired),
        key=lambda g: (distance(g.position, center), g.id),
    )
    return Deployment(region=region, gnbs=gnbs, origin_id=origin.id)


def nearest_wired(node_id: int, deployment: Deployment) -> int:
    """Id of the wired gNB closest to ``node_id`` (lowest id on ties)."""
    src = deployment.node(node_id).position
    wired = [g for g in deployment.gnbs if g.is_wired]
    if not wired:
        raise ValueError("deployment has no wired gNB")
    best = min(wired, key=lambda g: (distance(g.position, src), g.id))
    return best.id


def half_plane_filter(current: Position, wired_target: Position, candidates: list) -> list:
    """Keep candidates strictly on the wired side of the perpendicular at ``current``.

    A candidate j survives iff (p_j - p_current) . (p_wired - p_current) > 0;
    points exactly on the dividing line are dropped. Works on anything with a
    ``position`` attribute.
    """
    ux = wired_target.x - current.x
    uy = wired_target.y - current.y
    if ux == 0.0 and uy == 0.0:
        raise ValueError("wired_target must differ from current position")
    return [
        c
        for c in candidates
        if (c.position.x - current.x) * ux + (c.position.y - current.y) * uy > 0.0
    ]
