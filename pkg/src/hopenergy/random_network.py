"""Expected transmit energies in the 2-D Poisson random network.

Closed forms for routing inside a sector of angle ``phi`` drawn about the
source-destination line, unit node density, all energies normalized by
``n0 * (n_t/n_r)``.  Long-hop routes earn the path-efficiency credit
``1 - alpha phi^2 (n-1)/(24 n)``, a second-order expansion that is only a
valid energy while positive; constructing parameters outside that region
raises InvalidGeometry rather than clamping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import special
from .errors import DomainError, InvalidGeometry
from .line_network import offset_ratio, per_hop_failure_short, per_slot_failure_multi
from .outage import AntennaConfig, OutageTarget, rate_offset_k, required_snr_normalized

__all__ = [
    "RandomNetworkParams",
    "energy_strategy_a",
    "energy_strategy_b",
    "energy_multi_transmit_b",
    "ratio_a_to_b",
]


@dataclass(frozen=True)
class RandomNetworkParams:
    """Sector geometry of the random network."""

    alpha: float
    phi: float
    n_hops: int

    def __post_init__(self):
        if not self.alpha > 1.0:
            raise DomainError(f"alpha must exceed 1, got {self.alpha!r}")
        if not 0.0 < self.phi <= math.pi:
            raise DomainError(f"phi must lie in (0, pi], got {self.phi!r}")
        if self.n_hops < 1:
            raise DomainError(f"n_hops must be >= 1, got {self.n_hops!r}")
        if self.path_efficiency <= 0.0:
            raise InvalidGeometry(
                "path-efficiency factor 1 - alpha*phi^2*(n-1)/(24n) = "
                f"{self.path_efficiency!r} <= 0; the expansion left its "
                "validity region"
            )

    @property
    def path_efficiency(self) -> float:
        n = self.n_hops
        return 1.0 - self.alpha * self.phi**2 * (n - 1) / (24.0 * n)

    @property
    def hop_prefactor(self) -> float:
        """(2/phi)^(alpha/2) Gamma(1 + alpha/2): expected d^alpha per hop."""
        return (2.0 / self.phi) ** (self.alpha / 2.0) * special.gamma(
            1.0 + self.alpha / 2.0
        )


def energy_strategy_b(
    params: RandomNetworkParams,
    ant: AntennaConfig,
    target: OutageTarget,
    mode: str = "exact",
) -> float:
    """Expected long-hop (Strategy B) energy at the end-to-end target."""
    scale = params.n_hops**params.alpha * params.hop_prefactor * params.path_efficiency
    return scale * required_snr_normalized(target.rate, ant, target, mode)


def energy_strategy_a(
    params: RandomNetworkParams,
    ant: AntennaConfig,
    target: OutageTarget,
    mode: str = "exact",
) -> float:
    """Expected short-hop (Strategy A) energy at the per-hop target."""
    per_hop = OutageTarget(
        target.rate, per_hop_failure_short(target.failure_prob, params.n_hops)
    )
    scale = params.n_hops * params.hop_prefactor
    return scale * required_snr_normalized(target.rate, ant, per_hop, mode)


def energy_multi_transmit_b(
    params: RandomNetworkParams,
    ant: AntennaConfig,
    target: OutageTarget,
    mode: str = "exact",
) -> float:
    """Expected Strategy-B energy with the long hop repeated every slot."""
    per_slot = OutageTarget(
        target.rate, per_slot_failure_multi(target.failure_prob, params.n_hops)
    )
    scale = (
        params.n_hops ** (params.alpha + 1.0)
        * params.hop_prefactor
        * params.path_efficiency
    )
    return scale * required_snr_normalized(target.rate, ant, per_slot, mode)


def ratio_a_to_b(
    params: RandomNetworkParams,
    ant: AntennaConfig,
    target: OutageTarget,
    mode: str = "exact",
) -> float:
    """Strategy A to Strategy B energy ratio, overflow-safe.

    The line-network offset-space ratio divided by the path-efficiency
    factor; geometric prefactors and the normalization cancel.
    """
    n = params.n_hops
    k_s = rate_offset_k(target.rate, ant, target, mode)
    per_hop = OutageTarget(target.rate, per_hop_failure_short(target.failure_prob, n))
    k_m = rate_offset_k(target.rate, ant, per_hop, mode)
    scale = float(n) ** (1.0 - params.alpha) / params.path_efficiency
    return offset_ratio(k_m, k_s, scale)
