"""Monte Carlo campaign driver.

Each repetition regenerates the whole world (gNB deployment, UE association,
channel realization) from a counter-derived random stream, runs every
configured policy on the identical realization (paired comparison), and
optionally computes a centralized max-min-bottleneck benchmark path. The
aggregation step is worker-count independent: per-repetition records are
assembled in repetition order before any statistic is computed.
"""
from __future__ import annotations

import heapq
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelParams, RadioConfig, associate_min_pathloss, link_table
from .errors import ConfigError
from .geometry import Deployment, Region, assign_roles, sample_ppp
from .policy import PathOutcome, PathResult, PolicyKind, WbfConfig, build_path


@dataclass(frozen=True)
class PolicySpec:
    """One policy variant to evaluate, with a label used in outputs."""

    kind: PolicyKind
    wbf: WbfConfig = WbfConfig()
    label: str = ""

    def __post_init__(self):
        if not self.label:
            object.__setattr__(self, "label", self.kind.value)


@dataclass(frozen=True)
class SimConfig:
    """Full experiment parameterization."""

    lambda_g: float = 30.0
    p_w: float = 0.3
    lambda_ue: float = 100.0
    region: Region = Region()
    radio: RadioConfig = RadioConfig()
    channel: ChannelParams = ChannelParams()
    policies: tuple[PolicySpec, ...] = (
        PolicySpec(PolicyKind.HQF),
        PolicySpec(PolicyKind.WF),
        PolicySpec(PolicyKind.PA),
        PolicySpec(PolicyKind.MLR),
    )
    repetitions: int = 1000
    master_seed: int = 1
    max_hops: int = 30
    oracle_enabled: bool = False

    def __post_init__(self):
        if self.repetitions < 1:
            raise ConfigError(f"run.repetitions must be >= 1, got {self.repetitions}")
        if self.lambda_g <= 0:
            raise ConfigError(f"deployment.lambda_g must be positive, got {self.lambda_g}")
        if self.lambda_ue < 0:
            raise ConfigError(f"deployment.lambda_ue must be >= 0, got {self.lambda_ue}")
        if not 0.0 < self.p_w < 1.0:
            raise ConfigError(f"deployment.p_w must lie strictly in (0, 1), got {self.p_w}")
        if self.max_hops < 1:
            raise ConfigError(f"run.max_hops must be >= 1, got {self.max_hops}")
        if not self.policies:
            raise ConfigError("at least one policy must be configured")
        labels = [p.label for p in self.policies]
        if len(set(labels)) != len(labels):
            raise ConfigError(f"policy labels must be unique, got {labels}")
        expected_nodes = self.lambda_g * self.region.area_km2
        if expected_nodes < 3.0:
            warnings.warn(
                f"expected gNB count {expected_nodes:.2f} < 3; deployment resampling "
                "may dominate and edge effects will be severe",
                stacklevel=2,
            )


def repetition_rng(master_seed: int, rep_index: int) -> np.random.Generator:
    """Independent stream for one repetition, derived from (seed, index)."""
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(rep_index,)))


def sample_world(cfg: SimConfig, rng: np.random.Generator):
    """One full realization: deployment, UE association and link table."""
    while True:
        points = sample_ppp(cfg.lambda_g, cfg.region, rng)
        if len(points) >= 2:
            break
    deployment = assign_roles(points, cfg.p_w, cfg.region, rng, sectors=cfg.radio.sectors)
    if cfg.lambda_ue > 0:
        deployment.ue_positions = sample_ppp(cfg.lambda_ue, cfg.region, rng)
        serving = associate_min_pathloss(deployment.ue_positions, deployment, cfg.channel, rng)
        counts = np.bincount(serving[serving >= 0], minlength=deployment.n_gnbs)
        for g in deployment.gnbs:
            g.attached_count = int(counts[g.id])
    links = link_table(deployment, cfg.radio, cfg.channel, rng)
    return deployment, links


def _best_bottleneck_value(
    wired: list[bool], link_snr_db: np.ndarray, origin_id: int, snr_threshold_db: float
) -> float | None:
    """Max-min Dijkstra for the value only; None when no wired node is reachable."""
    n = len(wired)
    heap = [(-math.inf, origin_id)]
    settled = set()
    while heap:
        neg_b, node = heapq.heappop(heap)
        if node in settled:
            continue
        settled.add(node)
        if wired[node]:
            return -neg_b
        row = link_snr_db[node]
        for nxt in range(n):
            if nxt in settled:
                continue
            w = float(row[nxt])
            if w >= snr_threshold_db:
                heapq.heappush(heap, (max(neg_b, -w), nxt))
    return None


def widest_path_oracle(
    deployment: Deployment,
    link_snr_db: np.ndarray,
    origin_id: int,
    snr_threshold_db: float,
) -> PathResult:
    """Centralized max-min-bottleneck path from the origin to any wired donor.

    Among all paths achieving the optimal bottleneck, returns the one with the
    fewest hops and then the lexicographically smallest id sequence. Two
    phases: a max-min Dijkstra fixes the optimal bottleneck value b*, then a
    best-first search over the subgraph of links with SNR >= b* (exactly the
    links usable by optimal paths) minimizes (hop count, id sequence). In that
    second search extending a path strictly worsens its key, so the first
    wired node popped is the tie-broken optimum.
    """
    n = deployment.n_gnbs
    wired = [deployment.node(i).is_wired for i in range(n)]
    best = _best_bottleneck_value(wired, link_snr_db, origin_id, snr_threshold_db)
    if best is None:
        return PathResult(
            origin_id=origin_id,
            hops=(),
            bottleneck_snr_db=math.nan,
            outcome=PathOutcome.NO_CANDIDATE,
            policy=None,
            wbf=None,
        )
    heap = [(0, (origin_id,))]
    settled = set()
    while heap:
        hops, path = heapq.heappop(heap)
        node = path[-1]
        if node in settled:
            continue
        settled.add(node)
        if wired[node]:
            return PathResult(
                origin_id=origin_id,
                hops=path[1:],
                bottleneck_snr_db=best,
                outcome=PathOutcome.SUCCESS,
                policy=None,
                wbf=None,
            )
        row = link_snr_db[node]
        for nxt in range(n):
            if nxt not in settled and float(row[nxt]) >= best:
                heapq.heappush(heap, (hops + 1, path + (nxt,)))
    raise AssertionError("unreachable: phase 1 proved a wired node reachable")


def run_repetition(cfg: SimConfig, rep_index: int) -> dict[str, PathResult]:
    """Run every configured policy (and the oracle) on one fresh realization.

    Returns a mapping from policy label to its PathResult; the oracle result,
    when enabled, is stored under the reserved label ``"oracle"``.
    """
    rng = repetition_rng(cfg.master_seed, rep_index)
    deployment, links = sample_world(cfg, rng)
    results: dict[str, PathResult] = {}
    for spec in cfg.policies:
        results[spec.label] = build_path(
            deployment.origin_id,
            spec.kind,
            spec.wbf,
            deployment,
            links.snr,
            cfg.radio.snr_threshold_db,
            max_hops=cfg.max_hops,
            bandwidth_hz=cfg.radio.bandwidth_hz,
        )
    if cfg.oracle_enabled:
        results["oracle"] = widest_path_oracle(
            deployment, links.snr, deployment.origin_id, cfg.radio.snr_threshold_db
        )
    return results


_OUTCOME_CODE = {PathOutcome.SUCCESS: 0, PathOutcome.NO_CANDIDATE: 1, PathOutcome.MAX_HOPS: 2}


@dataclass
class CampaignResult:
    """Per-repetition records of one campaign, indexed by repetition order."""

    labels: tuple[str, ...]
    repetitions: int
    outcome: dict[str, np.ndarray]
    hop_count: dict[str, np.ndarray]
    bottleneck_db: dict[str, np.ndarray]
    oracle_outcome: np.ndarray | None = None
    oracle_bottleneck_db: np.ndarray | None = None
    paths: dict[str, list[PathResult]] | None = None

    def success_mask(self, label: str) -> np.ndarray:
        return self.outcome[label] == _OUTCOME_CODE[PathOutcome.SUCCESS]


def _run_range(cfg: SimConfig, start: int, stop: int, keep_paths: bool):
    records = []
    for rep in range(start, stop):
        results = run_repetition(cfg, rep)
        row = {}
        for label, res in results.items():
            row[label] = (
                _OUTCOME_CODE[res.outcome],
                res.hop_count,
                res.bottleneck_snr_db,
                res if keep_paths else None,
            )
        records.append(row)
    return records


def run_campaign(cfg: SimConfig, workers: int = 1, keep_paths: bool = False) -> CampaignResult:
    """Execute all repetitions, optionally across processes.

    The per-repetition streams depend only on (master_seed, index), and records
    are reassembled in repetition order, so the result is identical for any
    worker count.
    """
    if workers < 1:
        raise ConfigError(f"workers must be >= 1, got {workers}")
    reps = cfg.repetitions
    if workers == 1 or reps == 1:
        records = _run_range(cfg, 0, reps, keep_paths)
    else:
        bounds = np.linspace(0, reps, min(workers, reps) + 1).astype(int)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_run_range, cfg, int(a), int(b), keep_paths)
                for a, b in zip(bounds[:-1], bounds[1:])
                if b > a
            ]
            records = []
            for fut in futures:
                records.extend(fut.result())

    labels = tuple(spec.label for spec in cfg.policies)
    outcome = {lab: np.empty(reps, dtype=np.int8) for lab in labels}
    hop_count = {lab: np.empty(reps, dtype=np.int32) for lab in labels}
    bottleneck = {lab: np.empty(reps, dtype=np.float64) for lab in labels}
    paths: dict[str, list[PathResult]] | None = (
        {lab: [] for lab in (*labels, *(("oracle",) if cfg.oracle_enabled else ()))}
        if keep_paths
        else None
    )
    oracle_outcome = np.empty(reps, dtype=np.int8) if cfg.oracle_enabled else None
    oracle_bottleneck = np.empty(reps, dtype=np.float64) if cfg.oracle_enabled else None

    for rep, row in enumerate(records):
        for lab in labels:
            code, hops, bot, res = row[lab]
            outcome[lab][rep] = code
            hop_count[lab][rep] = hops
            bottleneck[lab][rep] = bot
            if keep_paths:
                paths[lab].append(res)
        if cfg.oracle_enabled:
            code, hops, bot, res = row["oracle"]
            oracle_outcome[rep] = code
            oracle_bottleneck[rep] = bot
            if keep_paths:
                paths["oracle"].append(res)

    return CampaignResult(
        labels=labels,
        repetitions=reps,
        outcome=outcome,
        hop_count=hop_count,
        bottleneck_db=bottleneck,
        oracle_outcome=oracle_outcome,
        oracle_bottleneck_db=oracle_bottleneck,
        paths=paths,
    )


class EmpiricalCdf:
    """Right-continuous empirical distribution of a finite sample."""

    def __init__(self, values):
        arr = np.sort(np.asarray(values, dtype=float))
        if arr.size == 0:
            raise ValueError("empirical CDF needs at least one sample")
        self.values = arr

    @property
    def n(self) -> int:
        return int(self.values.size)

    def evaluate(self, x):
        """F(x) = (# samples <= x) / n; accepts scalars or arrays."""
        idx = np.searchsorted(self.values, x, side="right")
        out = idx / self.n
        return float(out) if np.isscalar(x) else out

    __call__ = evaluate

    def quantile(self, q: float) -> float:
        """Inverse CDF (type-1): smallest sample v with F(v) >= q."""
        if not 0.0 <= q <= 1.0:
            raise ValueError(f"quantile level must be in [0, 1], got {q}")
        if q == 0.0:
            return float(self.values[0])
        idx = min(self.n - 1, math.ceil(q * self.n) - 1)
        return float(self.values[idx])

    @property
    def mean(self) -> float:
        return float(self.values.mean())

    def steps(self) -> tuple[np.ndarray, np.ndarray]:
        """Unique sample values and the CDF evaluated at each (ends at 1.0)."""
        uniq, counts = np.unique(self.values, return_counts=True)
        return uniq, np.cumsum(counts) / self.n


def empirical_cdf(values) -> EmpiricalCdf:
    if len(values) == 0:
        raise ValueError("cannot build an empirical CDF from an empty sample")
    return EmpiricalCdf(values)


@dataclass
class PolicySummary:
    """Aggregated statistics for one policy over a campaign.

    CDFs and metric statistics cover successful paths only and are ``None``
    when a policy never succeeded. ``mean_oracle_gap_db`` averages
    (oracle bottleneck - policy bottleneck) over repetitions where both
    succeeded.
    """

    label: str
    kind: PolicyKind
    wbf: WbfConfig
    repetitions: int
    successes: int
    failure_probability: float
    hops_cdf: EmpiricalCdf | None
    snr_cdf: EmpiricalCdf | None
    hop_mean: float | None
    hop_median: float | None
    hop_p95: float | None
    snr_mean_db: float | None
    snr_median_db: float | None
    snr_p95_db: float | None
    mean_oracle_gap_db: float | None


@dataclass
class CampaignSummary:
    policies: dict[str, PolicySummary] = field(default_factory=dict)


def aggregate(cfg: SimConfig, result: CampaignResult) -> CampaignSummary:
    """Reduce per-repetition records to per-policy CDFs and summary statistics."""
    if result.repetitions < 1:
        raise ConfigError("cannot aggregate an empty campaign")
    summary = CampaignSummary()
    for spec in cfg.policies:
        lab = spec.label
        ok = result.success_mask(lab)
        successes = int(ok.sum())
        hops_cdf = snr_cdf = None
        hop_stats = (None, None, None)
        snr_stats = (None, None, None)
        gap = None
        if successes > 0:
            hops_cdf = empirical_cdf(result.hop_count[lab][ok])
            snr_cdf = empirical_cdf(result.bottleneck_db[lab][ok])
            hop_stats = (hops_cdf.mean, hops_cdf.quantile(0.5), hops_cdf.quantile(0.95))
            snr_stats = (snr_cdf.mean, snr_cdf.quantile(0.5), snr_cdf.quantile(0.95))
            if result.oracle_outcome is not None:
                both = ok & (result.oracle_outcome == _OUTCOME_CODE[PathOutcome.SUCCESS])
                if both.any():
                    gap = float(
                        np.mean(result.oracle_bottleneck_db[both] - result.bottleneck_db[lab][both])
                    )
        summary.policies[lab] = PolicySummary(
            label=lab,
            kind=spec.kind,
            wbf=spec.wbf,
            repetitions=result.repetitions,
            successes=successes,
            failure_probability=1.0 - successes / result.repetitions,
            hops_cdf=hops_cdf,
            snr_cdf=snr_cdf,
            hop_mean=hop_stats[0],
            hop_median=hop_stats[1],
            hop_p95=hop_stats[2],
            snr_mean_db=snr_stats[0],
            snr_median_db=snr_stats[1],
            snr_p95_db=snr_stats[2],
            mean_oracle_gap_db=gap,
        )
    return summary
