"""Monte Carlo simulator for multi-hop mmWave wireless backhaul path selection.

The package samples random base-station deployments, draws a statistical
mmWave channel between every pair, runs greedy hop-by-hop parent-selection
policies (with optional wired-bias functions) and aggregates hop-count and
bottleneck-SNR distributions, optionally against a centralized max-min
bottleneck benchmark.
"""

__version__ = "0.1.0"

from .channel import (
    ChannelParams,
    LinkState,
    LinkTable,
    LosState,
    RadioConfig,
    associate_min_pathloss,
    draw_los_state,
    link_state,
    link_table,
    los_probabilities,
    noise_power_dbm,
    pathloss_db,
    shannon_rate,
    upa_gain_db,
)
from .config import WBF_PRESETS, config_document, parse_config
from .errors import ConfigError
from .geometry import (
    Deployment,
    GnbNode,
    Position,
    Region,
    assign_roles,
    bearing,
    distance,
    half_plane_filter,
    nearest_wired,
    sample_ppp,
)
from .policy import (
    Candidate,
    PathOutcome,
    PathResult,
    PolicyKind,
    WbfConfig,
    WbfKind,
    biased_metric,
    build_path,
    candidate_set,
    select_hqf,
    select_mlr,
    select_pa,
    select_wf,
    wbf_exp,
    wbf_poly,
    wired_bias_db,
)
from .simulate import (
    CampaignResult,
    CampaignSummary,
    EmpiricalCdf,
    PolicySpec,
    PolicySummary,
    SimConfig,
    aggregate,
    empirical_cdf,
    repetition_rng,
    run_campaign,
    run_repetition,
    sample_world,
    widest_path_oracle,
)

__all__ = [
    "__version__",
    "ConfigError",
    # geometry
    "Region", "Position", "GnbNode", "Deployment",
    "sample_ppp", "assign_roles", "nearest_wired", "half_plane_filter",
    "distance", "bearing",
    # channel
    "RadioConfig", "ChannelParams", "LosState", "LinkState", "LinkTable",
    "noise_power_dbm", "los_probabilities", "draw_los_state", "pathloss_db",
    "upa_gain_db", "link_state", "link_table", "associate_min_pathloss",
    "shannon_rate",
    # policy
    "WbfKind", "WbfConfig", "PolicyKind", "PathOutcome", "Candidate", "PathResult",
    "wbf_poly", "wbf_exp", "wired_bias_db", "biased_metric", "candidate_set",
    "select_hqf", "select_wf", "select_pa", "select_mlr", "build_path",
    # simulate
    "SimConfig", "PolicySpec", "EmpiricalCdf", "CampaignResult",
    "CampaignSummary", "PolicySummary", "repetition_rng", "sample_world",
    "run_repetition", "run_campaign", "widest_path_oracle", "empirical_cdf",
    "aggregate",
    # config
    "parse_config", "config_document", "WBF_PRESETS",
]
