"""MIMO outage model: large-array normal approximation and exact sampler.

The decoding-success probability of a spatially multiplexed link with
``n_t`` transmit and ``n_r`` receive antennas at per-receive-antenna SNR
``rho`` is approximated by

    p = (1/2) erfc((rate - n_t log2(1 + rho n_r/n_t)) / (sqrt(2 n_t/n_r) log2 e))

and inverted in closed form through the rate offset

    k = rate/n_t + sqrt(2/(n_t n_r)) log2(e) erfc_inv(2 eps),
    rho = (n_t/n_r) (2^k - 1),

where ``eps`` is the failure probability.  Working in failure-probability
space (the reflection identity applied symbolically inside ``erfc_inv``)
keeps the model evaluable for success targets arbitrarily close to one.

The exact finite-antenna law is available only through Monte Carlo: the
mutual-information sampler draws the channel matrix with independent
complex Gaussian entries and evaluates the log-determinant through a
Cholesky factorization of the (Hermitian positive definite) Gram matrix.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import special
from .errors import DomainError, InfeasibleAtZeroPower

__all__ = [
    "AntennaConfig",
    "OutageTarget",
    "gaussian_success_prob",
    "rate_offset_k",
    "required_snr",
    "required_snr_normalized",
    "sample_mutual_information",
    "empirical_success_prob",
]

LOG2E = math.log2(math.e)
LN2 = math.log(2.0)

# Fixed Monte Carlo block size.  Each block draws from its own substream of
# the master seed, so results are identical no matter how blocks are
# scheduled across threads.
_MC_BLOCK = 1 << 16


@dataclass(frozen=True)
class AntennaConfig:
    """Transmit/receive antenna counts of every node."""

    n_t: int
    n_r: int

    def __post_init__(self):
        if self.n_t < 1 or self.n_r < 1:
            raise DomainError(f"antenna counts must be >= 1, got {self.n_t}x{self.n_r}")


@dataclass(frozen=True)
class OutageTarget:
    """Rate threshold and end-to-end failure probability.

    The failure probability ``eps = 1 - success_prob`` is stored directly:
    success targets close to one would otherwise lose all precision.
    """

    rate: float
    failure_prob: float

    def __post_init__(self):
        if not self.rate > 0.0:
            raise DomainError(f"rate must be positive, got {self.rate!r}")
        if not 0.0 < self.failure_prob < 1.0:
            raise DomainError(
                f"failure_prob must lie in (0, 1), got {self.failure_prob!r}"
            )

    @classmethod
    def from_success_prob(cls, rate: float, success_prob: float) -> "OutageTarget":
        return cls(rate, 1.0 - success_prob)


def _inverse_from_failure(arg: float, mode: str) -> float:
    """erfc_inv(arg) with arg = 2*eps, honoring the evaluation mode."""
    if mode == "exact":
        return special.erfc_inv(arg)
    if mode == "philip":
        if arg == 1.0:
            return 0.0
        if arg > 1.0:
            return -special.erfc_inv_philip(2.0 - arg)
        return special.erfc_inv_philip(arg)
    raise DomainError(f"unknown mode {mode!r}; expected 'exact' or 'philip'")


def gaussian_success_prob(snr: float, rate: float, ant: AntennaConfig) -> float:
    """Success probability under the normal approximation; in (0, 1)."""
    if not snr > 0.0:
        raise DomainError(f"snr must be positive, got {snr!r}")
    if not rate > 0.0:
        raise DomainError(f"rate must be positive, got {rate!r}")
    mean = ant.n_t * math.log2(1.0 + snr * ant.n_r / ant.n_t)
    spread = math.sqrt(2.0 * ant.n_t / ant.n_r) * LOG2E
    return 0.5 * special.erfc((rate - mean) / spread)


def rate_offset_k(
    rate: float, ant: AntennaConfig, target: OutageTarget, mode: str = "exact"
) -> float:
    """Rate offset k such that the required SNR is (n_t/n_r)(2^k - 1).

    Computed as rate/n_t + sqrt(2/(n_t n_r)) log2(e) erfc_inv(2 eps); the
    erfc_inv argument is the small failure quantity, never 2p with p near 1.
    Strictly increasing as eps decreases.
    """
    coeff = math.sqrt(2.0 / (ant.n_t * ant.n_r)) * LOG2E
    return rate / ant.n_t + coeff * _inverse_from_failure(
        2.0 * target.failure_prob, mode
    )


def required_snr_normalized(
    rate: float, ant: AntennaConfig, target: OutageTarget, mode: str = "exact"
) -> float:
    """2^k - 1: the required SNR normalized by n_t/n_r.

    Raises InfeasibleAtZeroPower when k <= 0, i.e. when the model claims
    the target is met at nonpositive SNR.
    """
    k = rate_offset_k(rate, ant, target, mode)
    if k <= 0.0:
        raise InfeasibleAtZeroPower(
            f"rate offset k = {k!r} <= 0 at rate={rate!r}, "
            f"ant={ant.n_t}x{ant.n_r}, eps={target.failure_prob!r}"
        )
    return math.expm1(k * LN2)


def required_snr(
    rate: float, ant: AntennaConfig, target: OutageTarget, mode: str = "exact"
) -> float:
    """Per-receive-antenna SNR meeting the target under the normal model."""
    return ant.n_t / ant.n_r * required_snr_normalized(rate, ant, target, mode)


def sample_mutual_information(
    snr: float, ant: AntennaConfig, rng: np.random.Generator
) -> float:
    """One draw of log2 det(I + (snr/n_t) H^H H), H with CN(0, 1) entries."""
    return float(_batch_mutual_information(snr, ant, 1, rng)[0])


def _batch_mutual_information(
    snr: float, ant: AntennaConfig, count: int, rng: np.random.Generator
) -> np.ndarray:
    if not snr > 0.0:
        raise DomainError(f"snr must be positive, got {snr!r}")
    shape = (count, ant.n_r, ant.n_t)
    h = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * math.sqrt(0.5)
    gram = np.einsum("bij,bik->bjk", h.conj(), h)
    a = np.eye(ant.n_t) + (snr / ant.n_t) * gram
    # I + PSD is Hermitian positive definite, so Cholesky always succeeds
    # and log det = 2 sum log diag(L).
    chol = np.linalg.cholesky(a)
    diag = np.real(np.diagonal(chol, axis1=1, axis2=2))
    return 2.0 * np.sum(np.log(diag), axis=1) / LN2


def empirical_success_prob(
    snr: float,
    rate: float,
    ant: AntennaConfig,
    trials: int,
    seed: int,
    threads: int = 1,
) -> tuple[float, float]:
    """Monte Carlo estimate of P(mutual information > rate).

    Returns (p_hat, binomial standard error).  Trials are split into
    fixed-size blocks, each driven by an independent substream spawned from
    the master seed; the per-block success counts are reduced in block
    order, so the result is bit-identical for a given seed regardless of
    the thread count.
    """
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials!r}")
    n_blocks = (trials + _MC_BLOCK - 1) // _MC_BLOCK
    children = np.random.SeedSequence(seed).spawn(n_blocks)

    def run_block(idx: int) -> int:
        count = min(_MC_BLOCK, trials - idx * _MC_BLOCK)
        block_rng = np.random.default_rng(children[idx])
        mi = _batch_mutual_information(snr, ant, count, block_rng)
        return int(np.count_nonzero(mi > rate))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = list(pool.map(run_block, range(n_blocks)))
    else:
        counts = [run_block(i) for i in range(n_blocks)]

    p_hat = sum(counts) / trials
    stderr = math.sqrt(p_hat * (1.0 - p_hat) / trials)
    return p_hat, stderr
