"""Outage model: rate offset, SNR inversion, and the exact sampler."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopenergy.errors import DomainError, InfeasibleAtZeroPower
from hopenergy.outage import (
    AntennaConfig,
    OutageTarget,
    empirical_success_prob,
    gaussian_success_prob,
    rate_offset_k,
    required_snr,
    sample_mutual_information,
)

ANT22 = AntennaConfig(2, 2)

# tests/oracles.py bisection values
K_R4_EPS01 = 2.9244440441273412194
RHO_R4_EPS01 = 6.5918108293388424943
P_RHO17_R3 = 0.46297641009536563504
# eigenvalue-density integral, tests/oracles.py mi_mean_2x2(10)
MI_MEAN_2X2_RHO10 = 5.5492275690056257029


def test_antenna_and_target_validation():
    with pytest.raises(DomainError):
        AntennaConfig(0, 2)
    with pytest.raises(DomainError):
        OutageTarget(0.0, 0.1)
    with pytest.raises(DomainError):
        OutageTarget(4.0, 1.0)
    t = OutageTarget.from_success_prob(4.0, 0.9)
    assert abs(t.failure_prob - 0.1) < 1e-15


def test_rate_offset_values():
    # eps = 0.5 collapses the inverse term exactly
    assert rate_offset_k(4.0, ANT22, OutageTarget(4.0, 0.5)) == 2.0
    coeff = math.sqrt(2.0 / 4.0) * math.log2(math.e)
    assert abs(coeff - 1.0201394465967894817) < 1e-15
    k = rate_offset_k(4.0, ANT22, OutageTarget(4.0, 0.1))
    assert abs(k - K_R4_EPS01) < 1e-12


def test_required_snr_values():
    assert abs(required_snr(2.0, ANT22, OutageTarget(2.0, 0.5)) - 1.0) < 1e-15
    ant = AntennaConfig(3, 2)
    assert abs(required_snr(3.0, ant, OutageTarget(3.0, 0.5)) - 1.5) < 1e-14
    rho = required_snr(4.0, ANT22, OutageTarget(4.0, 0.1))
    assert abs(rho - RHO_R4_EPS01) < 1e-11 * RHO_R4_EPS01


def test_required_snr_monotone():
    r1 = required_snr(4.0, ANT22, OutageTarget(4.0, 0.1))
    r2 = required_snr(4.0, ANT22, OutageTarget(4.0, 0.01))
    assert r2 > r1
    r3 = required_snr(5.0, ANT22, OutageTarget(5.0, 0.1))
    assert r3 > r1
    r4 = required_snr(4.0, AntennaConfig(2, 4), OutageTarget(4.0, 0.1))
    assert r4 < r1  # receive array gain


def test_infeasible_at_zero_power():
    # loose target plus many transmit antennas drives the offset negative
    with pytest.raises(InfeasibleAtZeroPower):
        required_snr(4.0, AntennaConfig(64, 2), OutageTarget(4.0, 0.9))


def test_gaussian_success_prob_values():
    # rate equal to the model mean gives exactly one half
    assert gaussian_success_prob(1.0, 2.0, ANT22) == 0.5
    assert abs(gaussian_success_prob(1.7, 3.0, ANT22) - P_RHO17_R3) < 1e-14
    assert gaussian_success_prob(2.0, 2.0, ANT22) > 0.5


def test_round_trip_through_required_snr():
    rho = required_snr(4.0, ANT22, OutageTarget(4.0, 0.1))
    assert abs(gaussian_success_prob(rho, 4.0, ANT22) - 0.9) < 1e-12


@settings(max_examples=200, deadline=None)
@given(
    st.floats(min_value=0.25, max_value=12.0),
    st.sampled_from([(1, 1), (2, 2), (4, 2), (2, 4), (8, 8)]),
    st.floats(min_value=1e-9, max_value=0.45),
)
def test_round_trip_property(rate, ant_counts, eps):
    ant = AntennaConfig(*ant_counts)
    rho = required_snr(rate, ant, OutageTarget(rate, eps))
    assert abs(gaussian_success_prob(rho, rate, ant) - (1.0 - eps)) <= 1e-9


def test_sampler_vanishing_snr():
    rng = np.random.default_rng(1)
    for _ in range(5):
        assert sample_mutual_information(1e-12, ANT22, rng) < 1e-9


def test_sampler_scalar_reduction_is_exponential():
    # 1x1: MI = log2(1 + rho |h|^2) with |h|^2 ~ Exp(1)
    rng = np.random.default_rng(7)
    ant = AntennaConfig(1, 1)
    rho = 3.0
    draws = np.array([sample_mutual_information(rho, ant, rng) for _ in range(4000)])
    gains = (np.exp2(draws) - 1.0) / rho
    assert abs(gains.mean() - 1.0) < 3.0 * gains.std(ddof=1) / math.sqrt(len(gains))
    tail = (gains > 1.0).mean()
    assert abs(tail - math.exp(-1.0)) < 3.0 * math.sqrt(tail * (1 - tail) / len(gains))


def test_sampler_mean_matches_eigen_integral():
    rng = np.random.default_rng(11)
    draws = np.array(
        [sample_mutual_information(10.0, ANT22, rng) for _ in range(20000)]
    )
    se = draws.std(ddof=1) / math.sqrt(len(draws))
    assert abs(draws.mean() - MI_MEAN_2X2_RHO10) < 3.0 * se


def test_empirical_success_prob_limits():
    p, se = empirical_success_prob(5.0, 1e-6, ANT22, 2000, seed=3)
    assert p == 1.0 and se == 0.0
    p, _ = empirical_success_prob(5.0, 1e6, ANT22, 2000, seed=3)
    assert p == 0.0


def test_empirical_success_prob_deterministic_across_threads():
    args = (10.0, 5.0, ANT22, 150_000)
    p1 = empirical_success_prob(*args, seed=42, threads=1)
    p2 = empirical_success_prob(*args, seed=42, threads=4)
    assert p1 == p2
    p3 = empirical_success_prob(*args, seed=43, threads=1)
    assert p3 != p1


def test_empirical_close_to_model_in_reliable_tail():
    # operating-region grid point: model quantile 0.999 at rho = 5
    rho = 5.0
    mean = 2.0 * math.log2(1.0 + rho)
    spread = math.sqrt(2.0) * math.log2(math.e)
    from hopenergy.special import erfc_inv

    rate = mean + spread * erfc_inv(2.0 * 0.999)
    p_model = gaussian_success_prob(rho, rate, ANT22)
    p_hat, _ = empirical_success_prob(rho, rate, ANT22, 100_000, seed=5)
    assert abs(p_hat - p_model) <= 0.05
