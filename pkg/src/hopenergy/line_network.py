"""Closed-form transmit energies for the deterministic line network.

Nodes sit on a line with spacing ``d``.  A long hop covers ``n`` spacings
in one transmission at the end-to-end target; short-hop routing makes
``n`` single-spacing transmissions, each at the stricter per-hop target
``p_r**(1/n)``; multi-transmit long-hop routing repeats the long hop in
each of its ``n`` delay slots at the per-slot target with failure
``eps**(1/n)``.

Energy ratios are never formed as quotients of the energies themselves:
the rate offsets grow without bound as the failure target shrinks, and
2^k overflows long before the ratio stops being meaningful.  Instead

    (2^a - 1)/(2^b - 1) = 2^(a-b) (1 - 2^-a)/(1 - 2^-b)

is evaluated in offset space, which stays finite down to failure
probabilities of 1e-300.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError, InfeasibleAtZeroPower
from .outage import LN2, AntennaConfig, OutageTarget, rate_offset_k, required_snr

__all__ = [
    "LineNetworkParams",
    "RatioWithBound",
    "per_hop_failure_short",
    "per_slot_failure_multi",
    "energy_long_hop",
    "energy_short_hop",
    "energy_multi_transmit_long",
    "ratio_short_to_long",
    "ratio_mult_to_short",
]


@dataclass(frozen=True)
class LineNetworkParams:
    """Line-network geometry: spacing d, path-loss exponent, noise, hops."""

    d: float
    alpha: float
    n0: float
    n_hops: int

    def __post_init__(self):
        if not self.d > 0.0:
            raise DomainError(f"d must be positive, got {self.d!r}")
        if not self.alpha > 1.0:
            raise DomainError(f"alpha must exceed 1, got {self.alpha!r}")
        if not self.n0 > 0.0:
            raise DomainError(f"n0 must be positive, got {self.n0!r}")
        if self.n_hops < 1:
            raise DomainError(f"n_hops must be >= 1, got {self.n_hops!r}")


class RatioWithBound(NamedTuple):
    """A short-to-long energy ratio and its closed-form upper bound."""

    ratio: float
    bound: float


def per_hop_failure_short(eps: float, n: int) -> float:
    """Per-hop failure so that n independent hops fail end-to-end with eps.

    1 - (1 - eps)^(1/n), evaluated as -expm1(log1p(-eps)/n) so that values
    down to eps = 1e-300 keep full relative precision.
    """
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps!r}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n!r}")
    if n == 1:
        return eps
    return -math.expm1(math.log1p(-eps) / n)


def per_slot_failure_multi(eps: float, n: int) -> float:
    """Per-slot failure for n repeated transmissions: exactly eps^(1/n)."""
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps!r}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n!r}")
    return eps ** (1.0 / n)


def _short_hop_target(target: OutageTarget, n: int) -> OutageTarget:
    return OutageTarget(target.rate, per_hop_failure_short(target.failure_prob, n))


def _multi_transmit_target(target: OutageTarget, n: int) -> OutageTarget:
    return OutageTarget(target.rate, per_slot_failure_multi(target.failure_prob, n))


def energy_long_hop(
    params: LineNetworkParams,
    ant: AntennaConfig,
    target: OutageTarget,
    mode: str = "exact",
) -> float:
    """Energy of one long hop spanning n spacings at the end-to-end target."""
    scale = params.n_hops**params.alpha * params.n0 * params.d**params.alpha
    return scale * required_snr(target.rate, ant, target, mode)


def energy_short_hop(
    params: LineNetworkParams,
    ant: AntennaConfig,
    target: OutageTarget,
    mode: str = "exact",
) -> float:
    """Energy of n single-spacing hops, each at the per-hop target."""
    scale = params.n_hops * params.n0 * params.d**params.alpha
    per_hop = _short_hop_target(target, params.n_hops)
    return scale * required_snr(target.rate, ant, per_hop, mode)


def energy_multi_transmit_long(
    params: LineNetworkParams,
    ant: AntennaConfig,
    target: OutageTarget,
    mode: str = "exact",
) -> float:
    """Energy of a long hop repeated in each of the n delay slots."""
    scale = params.n_hops ** (params.alpha + 1.0) * params.n0 * params.d**params.alpha
    per_slot = _multi_transmit_target(target, params.n_hops)
    return scale * required_snr(target.rate, ant, per_slot, mode)


def offset_ratio(k_num: float, k_den: float, scale: float) -> float:
    """scale * (2^k_num - 1)/(2^k_den - 1), overflow-safe for large offsets."""
    if k_num <= 0.0 or k_den <= 0.0:
        raise InfeasibleAtZeroPower(
            f"rate offsets must be positive, got {k_num!r} and {k_den!r}"
        )
    correction = math.expm1(-k_num * LN2) / math.expm1(-k_den * LN2)
    return scale * 2.0 ** (k_num - k_den) * correction


def ratio_short_to_long(
    params: LineNetworkParams,
    ant: AntennaConfig,
    target: OutageTarget,
    mode: str = "exact",
) -> RatioWithBound:
    """Short-to-long energy ratio n^(1-alpha)(2^k_m - 1)/(2^k_s - 1).

    Computed in offset space, together with its companion upper bound
    n^(1-alpha) 2^(k_m - k_s + 1).  Both are invariant to d and n0.
    """
    n = params.n_hops
    k_s = rate_offset_k(target.rate, ant, target, mode)
    k_m = rate_offset_k(target.rate, ant, _short_hop_target(target, n), mode)
    scale = float(n) ** (1.0 - params.alpha)
    ratio = offset_ratio(k_m, k_s, scale)
    bound = scale * 2.0 ** (k_m - k_s + 1.0)
    return RatioWithBound(ratio, bound)


def ratio_mult_to_short(
    params: LineNetworkParams,
    ant: AntennaConfig,
    target: OutageTarget,
    mode: str = "exact",
) -> float:
    """Multi-transmit-long to short-hop ratio n^alpha(2^k_sm - 1)/(2^k_m - 1)."""
    n = params.n_hops
    k_sm = rate_offset_k(target.rate, ant, _multi_transmit_target(target, n), mode)
    k_m = rate_offset_k(target.rate, ant, _short_hop_target(target, n), mode)
    return offset_ratio(k_sm, k_m, float(n) ** params.alpha)
