"""Line-network energies, ratio identities, and overflow-safe limits."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopenergy.errors import DomainError
from hopenergy.line_network import (
    LineNetworkParams,
    energy_long_hop,
    energy_multi_transmit_long,
    energy_short_hop,
    per_hop_failure_short,
    per_slot_failure_multi,
    ratio_mult_to_short,
    ratio_short_to_long,
)
from hopenergy.outage import AntennaConfig, OutageTarget

ANT22 = AntennaConfig(2, 2)

# tests/oracles.py values
PER_HOP_01_3 = 0.03451061539437024214
PER_HOP_1E12_4 = 2.5000000000009375e-13
E_LONG_N3_EPS005 = 72.936597906515430136
MULT_RATIO_1E300 = 0.016821596316079924333


def test_per_hop_failure_values():
    assert per_hop_failure_short(0.37, 1) == 0.37
    assert abs(per_hop_failure_short(0.1, 3) - PER_HOP_01_3) <= 1e-15
    assert abs(per_hop_failure_short(1e-12, 4) - PER_HOP_1E12_4) <= 1e-12 * PER_HOP_1E12_4
    # full relative precision down to the smallest targets
    assert abs(per_hop_failure_short(1e-300, 4) - 2.5e-301) <= 1e-12 * 2.5e-301
    with pytest.raises(DomainError):
        per_hop_failure_short(0.0, 3)
    with pytest.raises(DomainError):
        per_hop_failure_short(0.1, 0)


def test_per_slot_failure_values():
    assert per_slot_failure_multi(1e-4, 2) == 0.01
    assert per_slot_failure_multi(0.25, 1) == 0.25


def test_params_validation():
    with pytest.raises(DomainError):
        LineNetworkParams(0.0, 2.0, 1.0, 3)
    with pytest.raises(DomainError):
        LineNetworkParams(1.0, 1.0, 1.0, 3)
    with pytest.raises(DomainError):
        LineNetworkParams(1.0, 2.0, 1.0, 0)


def test_energy_long_hop_value():
    params = LineNetworkParams(1.0, 2.0, 1.0, 3)
    e = energy_long_hop(params, ANT22, OutageTarget(4.0, 0.05))
    assert abs(e - E_LONG_N3_EPS005) <= 1e-10 * E_LONG_N3_EPS005


def test_single_hop_degenerate_case():
    params = LineNetworkParams(2.0, 2.5, 0.7, 1)
    target = OutageTarget(4.0, 0.08)
    e_long = energy_long_hop(params, ANT22, target)
    assert energy_short_hop(params, ANT22, target) == e_long
    assert energy_multi_transmit_long(params, ANT22, target) == e_long
    ratio, bound = ratio_short_to_long(params, ANT22, target)
    assert abs(ratio - 1.0) < 1e-15
    assert abs(ratio_mult_to_short(params, ANT22, target) - 1.0) < 1e-15
    assert bound >= ratio


def test_long_hop_scaling_in_hop_count():
    target = OutageTarget(4.0, 0.05)
    e3 = energy_long_hop(LineNetworkParams(1.0, 2.0, 1.0, 3), ANT22, target)
    e6 = energy_long_hop(LineNetworkParams(1.0, 2.0, 1.0, 6), ANT22, target)
    assert abs(e6 / e3 - 2.0**2.0) < 1e-12


def test_short_hop_target_is_stricter():
    target = OutageTarget(4.0, 0.05)
    for n in (2, 3, 5, 8):
        params = LineNetworkParams(1.0, 2.0, 1.0, n)
        per_hop = energy_short_hop(params, ANT22, target) / (params.n_hops)
        long_hop = energy_long_hop(params, ANT22, target) / params.n_hops**params.alpha
        assert per_hop > long_hop


@settings(max_examples=150)
@given(
    st.floats(min_value=1e-3, max_value=1e3),
    st.floats(min_value=1e-3, max_value=1e3),
    st.floats(min_value=1e-6, max_value=0.4),
    st.integers(min_value=1, max_value=64),
)
def test_ratio_scale_invariance(d, n0, eps, n):
    target = OutageTarget(4.0, eps)
    base = ratio_short_to_long(LineNetworkParams(1.0, 2.0, 1.0, n), ANT22, target)
    scaled = ratio_short_to_long(LineNetworkParams(d, 2.0, n0, n), ANT22, target)
    assert base == scaled  # d and n0 never enter the offset-space form


def test_ratio_matches_energy_quotient():
    for n in (2, 3, 5):
        for eps in (0.3, 0.08, 1e-4):
            params = LineNetworkParams(1.3, 2.4, 0.9, n)
            target = OutageTarget(4.0, eps)
            ratio = ratio_short_to_long(params, ANT22, target).ratio
            direct = energy_short_hop(params, ANT22, target) / energy_long_hop(
                params, ANT22, target
            )
            assert abs(ratio - direct) <= 1e-12 * direct
            mult = ratio_mult_to_short(params, ANT22, target)
            direct_mult = energy_multi_transmit_long(
                params, ANT22, target
            ) / energy_short_hop(params, ANT22, target)
            assert abs(mult - direct_mult) <= 1e-12 * direct_mult


def test_bound_ordering_chain():
    from hopenergy.outage import rate_offset_k

    for n in (2, 3, 4, 8, 32):
        for eps in (0.09, 0.01, 1e-6, 1e-12):
            params = LineNetworkParams(1.0, 2.0, 1.0, n)
            target = OutageTarget(4.0, eps)
            ratio, bound = ratio_short_to_long(params, ANT22, target)
            k_s = rate_offset_k(4.0, ANT22, target)
            k_m = rate_offset_k(
                4.0, ANT22, OutageTarget(4.0, per_hop_failure_short(eps, n))
            )
            middle = n ** (1.0 - 2.0) * 2.0**k_m / math.expm1(k_s * math.log(2.0))
            assert ratio < middle < bound


def test_short_beats_long_examples():
    # three-to-five hops, quadratic path loss, success targets in (0.9, 1)
    for n in (3, 4, 5):
        params = LineNetworkParams(1.0, 2.0, 1.0, n)
        for eps in np.geomspace(0.0999, 1e-4, 60):
            ratio = ratio_short_to_long(params, ANT22, OutageTarget(4.0, eps)).ratio
            assert ratio < 1.0


def test_mult_loses_to_short_at_moderate_targets():
    # two hops, success target 0.96, transmit antennas swept
    params = LineNetworkParams(1.0, 2.0, 1.0, 2)
    target = OutageTarget(4.0, 0.04)
    for nt in (1, 2, 4, 8, 16, 32):
        ant = AntennaConfig(nt, 2)
        assert ratio_mult_to_short(params, ant, target) > 1.0


def test_mult_beats_short_at_extreme_targets():
    # the closed-form branch carries the evaluation down to 1e-300
    params = LineNetworkParams(1.0, 2.0, 1.0, 2)
    ratio = ratio_mult_to_short(params, ANT22, OutageTarget(4.0, 1e-300))
    assert ratio < 1.0
    assert abs(ratio - MULT_RATIO_1E300) <= 1e-9 * MULT_RATIO_1E300
