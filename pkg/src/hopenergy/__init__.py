"""Transmit-energy comparison of short-hop vs. long-hop MIMO routing.

Closed-form energy calculators for deterministic line networks and 2-D
random networks, an exact mutual-information sampler for validating the
underlying outage approximation, a sector point-process simulator, and a
harness that realizes the limit claims as finite trend scans.
"""

from .errors import (
    ConfigError,
    DomainError,
    EvalError,
    HopEnergyError,
    InfeasibleAtZeroPower,
    InvalidGeometry,
    PreconditionError,
)
from .line_network import (
    LineNetworkParams,
    RatioWithBound,
    energy_long_hop,
    energy_multi_transmit_long,
    energy_short_hop,
    per_hop_failure_short,
    per_slot_failure_multi,
    ratio_mult_to_short,
    ratio_short_to_long,
)
from .outage import (
    AntennaConfig,
    OutageTarget,
    empirical_success_prob,
    gaussian_success_prob,
    rate_offset_k,
    required_snr,
    sample_mutual_information,
)
from .ppp import (
    CompareResult,
    EnergyStats,
    PointSet,
    Route,
    SectorRegion,
    SimConfig,
    generate_ppp,
    generate_uniform_count,
    monte_carlo_compare,
    route_energy,
    route_strategy_a,
    route_strategy_b,
)
from .random_network import (
    RandomNetworkParams,
    energy_multi_transmit_b,
    energy_strategy_a,
    energy_strategy_b,
    ratio_a_to_b,
)
from .special import erfc, erfc_inv, erfc_inv_philip, gamma
from .theorems import (
    TrendReport,
    check_high_reliability_limit,
    check_large_array_limit,
    check_many_hops_limit,
    check_multi_transmit_limit,
    check_sector_example,
    exponent_gap,
    exponent_gap_series,
    exponent_gap_series_slope,
    sector_example_prefactor,
)

__version__ = "0.1.0"
