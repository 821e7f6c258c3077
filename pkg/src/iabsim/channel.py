"""Large-scale mmWave link model with planar-array beamforming.

The model is deliberately cluster-free: a three-state visibility draw
(LOS / NLOS / outage), a floating-intercept pathloss with lognormal shadowing,
and a uniform-planar-array gain with perfect beam steering. One channel draw
is shared by both directions of a gNB pair, so the resulting backhaul graph
is undirected.

Conventions: gains and losses in dB, powers in dBm, distances in meters.
An outage link carries -inf dB SNR and is never a selection candidate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .errors import ConfigError
from .geometry import TWO_PI, Deployment, GnbNode, Position, bearing, distance

THERMAL_NOISE_DBM_PER_HZ = -174.0


class LosState(IntEnum):
    LOS = 0
    NLOS = 1
    OUTAGE = 2


@dataclass(frozen=True)
class RadioConfig:
    """Radio front-end parameters shared by every gNB."""

    fc_ghz: float = 28.0
    bandwidth_hz: float = 400e6
    tx_power_dbm: float = 30.0
    noise_figure_db: float = 5.0
    array_elements: int = 64
    sectors: int = 3
    snr_threshold_db: float = 5.0

    def __post_init__(self):
        if self.bandwidth_hz <= 0:
            raise ConfigError(f"radio.B_hz must be positive, got {self.bandwidth_hz}")
        if self.sectors < 1:
            raise ConfigError(f"radio.S must be >= 1, got {self.sectors}")
        root = math.isqrt(int(self.array_elements))
        if self.array_elements < 1 or root * root != self.array_elements:
            raise ConfigError(
                f"radio.M must be a perfect square (planar array), got {self.array_elements}"
            )

    @property
    def sector_halfwidth_rad(self) -> float:
        return math.pi / self.sectors


@dataclass(frozen=True)
class ChannelParams:
    """Large-scale constants for 28 GHz urban links; every field is overridable.

    Pathloss follows alpha + 10*exponent*log10(d) per visibility state, with
    zero-mean Gaussian shadowing of the given sigma. The outage probability is
    max(0, 1 - exp(-slope*d + intercept)) and the LOS share of the remainder
    decays as exp(-los_decay*d). ``fading_sigma_db`` > 0 adds one extra
    lognormal perturbation per link (off by default).
    """

    los_alpha_db: float = 61.4
    los_exponent: float = 2.0
    los_sigma_db: float = 5.8
    nlos_alpha_db: float = 72.0
    nlos_exponent: float = 2.92
    nlos_sigma_db: float = 8.7
    outage_slope_per_m: float = 1.0 / 30.0
    outage_intercept: float = 5.2
    los_decay_per_m: float = 1.0 / 67.1
    floor_gain_dbi: float = -10.0
    fading_sigma_db: float = 0.0


@dataclass(frozen=True)
class LinkState:
    """Directed view of one realized gNB-to-gNB link."""

    src: int
    dst: int
    distance_m: float
    los: LosState
    pathloss_db: float
    shadowing_db: float
    tx_gain_dbi: float
    rx_gain_dbi: float
    snr_db: float


def noise_power_dbm(bandwidth_hz: float, noise_figure_db: float) -> float:
    """Thermal noise floor: -174 dBm/Hz + 10*log10(B) + NF."""
    if bandwidth_hz <= 0:
        raise ConfigError(f"bandwidth must be positive, got {bandwidth_hz}")
    return THERMAL_NOISE_DBM_PER_HZ + 10.0 * math.log10(bandwidth_hz) + noise_figure_db


def los_probabilities(d_m, params: ChannelParams = ChannelParams()):
    """Closed-form (P_LOS, P_NLOS, P_OUTAGE) at distance ``d_m`` (scalar or array)."""
    d = np.asarray(d_m, dtype=float)
    p_out = np.maximum(0.0, 1.0 - np.exp(-params.outage_slope_per_m * d + params.outage_intercept))
    p_los = (1.0 - p_out) * np.exp(-params.los_decay_per_m * d)
    p_nlos = 1.0 - p_out - p_los
    return p_los, p_nlos, p_out


def _sample_los_codes(d: np.ndarray, params: ChannelParams, rng: np.random.Generator) -> np.ndarray:
    """Visibility codes for an array of distances, one uniform draw per link."""
    p_los, _, p_out = los_probabilities(d, params)
    u = rng.random(d.shape)
    return np.where(u < p_out, LosState.OUTAGE, np.where(u < p_out + p_los, LosState.LOS, LosState.NLOS)).astype(np.int8)


def draw_los_state(d_m: float, params: ChannelParams, rng: np.random.Generator) -> LosState:
    if d_m <= 0:
        raise ValueError(f"distance must be positive, got {d_m}")
    code = _sample_los_codes(np.asarray([d_m]), params, rng)[0]
    return LosState(int(code))


def _sample_pathloss_arrays(
    d: np.ndarray, codes: np.ndarray, params: ChannelParams, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """(pathloss, shadowing) arrays; outage entries get +inf loss and zero shadowing.

    Shadowing normals are drawn for every entry regardless of state so the
    stream consumption does not depend on the realized visibility pattern.
    """
    los = codes == LosState.LOS
    out = codes == LosState.OUTAGE
    d_eff = np.maximum(d, 1.0)  # keep the log finite below 1 m
    alpha = np.where(los, params.los_alpha_db, params.nlos_alpha_db)
    exponent = np.where(los, params.los_exponent, params.nlos_exponent)
    sigma = np.where(los, params.los_sigma_db, params.nlos_sigma_db)
    pathloss = alpha + 10.0 * exponent * np.log10(d_eff)
    shadowing = sigma * rng.standard_normal(d.shape)
    if params.fading_sigma_db > 0.0:
        shadowing = shadowing + params.fading_sigma_db * rng.standard_normal(d.shape)
    pathloss = np.where(out, np.inf, pathloss)
    shadowing = np.where(out, 0.0, shadowing)
    return pathloss, shadowing


def pathloss_db(
    d_m: float, los: LosState, params: ChannelParams, rng: np.random.Generator
) -> tuple[float, float]:
    """One (pathloss, shadowing) draw for a single link."""
    if los == LosState.OUTAGE:
        return math.inf, 0.0
    pl, sh = _sample_pathloss_arrays(
        np.asarray([d_m]), np.asarray([int(los)], dtype=np.int8), params, rng
    )
    return float(pl[0]), float(sh[0])


def _wrap_pi(angle):
    """Wrap angle(s) to (-pi, pi]."""
    return -((-np.asarray(angle) + math.pi) % TWO_PI - math.pi)


def upa_gain_db(
    array_elements: int,
    steer_rad: float,
    actual_rad: float,
    sector_halfwidth_rad: float,
    floor_gain_dbi: float = -10.0,
) -> float:
    """Azimuth beamforming gain of a square planar array steered to ``steer_rad``.

    Angles are relative to the serving sector's boresight. Directions outside
    the sector get the floor gain, as does any direction whose array factor
    falls below it (nulls included). At perfect alignment the gain is
    10*log10(M) exactly.
    """
    root = math.isqrt(int(array_elements))
    if root * root != array_elements or array_elements < 1:
        raise ConfigError(f"array_elements must be a perfect square, got {array_elements}")
    if abs(float(_wrap_pi(actual_rad))) > sector_halfwidth_rad:
        return floor_gain_dbi
    psi = math.pi * (math.sin(actual_rad) - math.sin(steer_rad))
    den = root * math.sin(psi / 2.0)
    if abs(den) < 1e-12:
        af = 1.0  # coherent sum (broadside or grating direction)
    else:
        ratio = math.sin(root * psi / 2.0) / den
        af = ratio * ratio
    if af <= 0.0:
        return floor_gain_dbi
    return max(10.0 * math.log10(array_elements * af), floor_gain_dbi)


def _endpoint_gain_db(node: GnbNode, toward_rad: float, radio: RadioConfig, params: ChannelParams) -> float:
    """Gain of ``node`` toward a bearing, using its angularly closest sector."""
    offsets = [abs(float(_wrap_pi(toward_rad - b))) for b in node.sector_boresights]
    best = min(range(len(offsets)), key=lambda i: (offsets[i], i))
    local = float(_wrap_pi(toward_rad - node.sector_boresights[best]))
    return upa_gain_db(
        radio.array_elements, local, local, radio.sector_halfwidth_rad, params.floor_gain_dbi
    )


def link_state(
    i: GnbNode,
    j: GnbNode,
    radio: RadioConfig,
    params: ChannelParams,
    rng: np.random.Generator,
) -> LinkState:
    """Sample one directed link i -> j.

    Both endpoints steer the sector closest to the direct bearing exactly at
    that bearing. Note that Monte Carlo repetitions build links through
    :func:`link_table`, which draws once per node pair and mirrors the result
    so that both directions share the same realization.
    """
    if i.id == j.id:
        raise ValueError("link endpoints must differ")
    d = distance(i.position, j.position)
    los = draw_los_state(d, params, rng)
    pl, sh = pathloss_db(d, los, params, rng)
    fwd = bearing(i.position, j.position)
    tx_gain = _endpoint_gain_db(i, fwd, radio, params)
    rx_gain = _endpoint_gain_db(j, float(_wrap_pi(fwd + math.pi)), radio, params)
    noise = noise_power_dbm(radio.bandwidth_hz, radio.noise_figure_db)
    if los == LosState.OUTAGE:
        snr = -math.inf
    else:
        snr = radio.tx_power_dbm + tx_gain + rx_gain - pl - sh - noise
    return LinkState(i.id, j.id, d, los, pl, sh, tx_gain, rx_gain, snr)


@dataclass
class LinkTable:
    """Shared channel realization for all gNB pairs of one deployment.

    ``snr`` is an (n, n) symmetric matrix in dB with -inf on the diagonal and
    on outage pairs. The flat per-pair arrays (upper triangle, ``src < dst``)
    retain every budget component for auditing the link-budget identity.
    """

    snr: np.ndarray
    src: np.ndarray
    dst: np.ndarray
    distance_m: np.ndarray
    los: np.ndarray
    pathloss_db: np.ndarray
    shadowing_db: np.ndarray
    tx_gain_dbi: np.ndarray
    rx_gain_dbi: np.ndarray
    pair_snr_db: np.ndarray
    noise_dbm: float
    tx_power_dbm: float


def link_table(
    deployment: Deployment,
    radio: RadioConfig,
    params: ChannelParams,
    rng: np.random.Generator,
) -> LinkTable:
    """Draw the full pairwise link realization for one repetition."""
    pos = deployment.positions_by_id()
    n = len(pos)
    src, dst = np.triu_indices(n, k=1)
    d = np.hypot(pos[src, 0] - pos[dst, 0], pos[src, 1] - pos[dst, 1])
    codes = _sample_los_codes(d, params, rng)
    pathloss, shadowing = _sample_pathloss_arrays(d, codes, params, rng)

    # Evenly spaced sectors always cover the direct bearing and steering is
    # ideal, so both endpoint gains sit at the coherent peak.
    gain = 10.0 * math.log10(radio.array_elements)
    tx_gain = np.full(d.shape, gain)
    rx_gain = np.full(d.shape, gain)
    noise = noise_power_dbm(radio.bandwidth_hz, radio.noise_figure_db)
    pair_snr = radio.tx_power_dbm + tx_gain + rx_gain - pathloss - shadowing - noise

    snr = np.full((n, n), -np.inf)
    snr[src, dst] = pair_snr
    snr[dst, src] = pair_snr
    return LinkTable(
        snr=snr,
        src=src,
        dst=dst,
        distance_m=d,
        los=codes,
        pathloss_db=pathloss,
        shadowing_db=shadowing,
        tx_gain_dbi=tx_gain,
        rx_gain_dbi=rx_gain,
        pair_snr_db=pair_snr,
        noise_dbm=noise,
        tx_power_dbm=radio.tx_power_dbm,
    )


def associate_min_pathloss(
    ue_positions: list[Position],
    deployment: Deployment,
    params: ChannelParams,
    rng: np.random.Generator,
) -> np.ndarray:
    """Index of the serving gNB per UE (lowest realized pathloss), -1 if all in outage."""
    if not ue_positions:
        return np.empty(0, dtype=np.int64)
    gnb_pos = deployment.positions_by_id()
    ue = np.array([[p.x, p.y] for p in ue_positions])
    d = np.hypot(
        ue[:, None, 0] - gnb_pos[None, :, 0], ue[:, None, 1] - gnb_pos[None, :, 1]
    )
    codes = _sample_los_codes(d, params, rng)
    pathloss, shadowing = _sample_pathloss_arrays(d, codes, params, rng)
    total = pathloss + shadowing
    serving = np.argmin(total, axis=1)
    serving[~np.isfinite(np.min(total, axis=1))] = -1
    return serving


def shannon_rate(bandwidth_hz: float, snr_db: float, n_attached: int) -> float:
    """Achievable rate in bit/s when the band is split across ``n_attached`` users."""
    if bandwidth_hz <= 0:
        raise ConfigError(f"bandwidth must be positive, got {bandwidth_hz}")
    if snr_db == -math.inf:
        return 0.0
    share = bandwidth_hz / max(n_attached, 1)
    return share * math.log2(1.0 + 10.0 ** (snr_db / 10.0))
