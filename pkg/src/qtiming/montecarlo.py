"""Stochastic verification of the width laws.

Streams are Philox4x64-10 counter-based generators keyed by
``(seed, shard_index)``, with normal variates produced by the inverse-CDF
transform of 53-bit uniforms.  Both choices are deliberate: the stream is
reproducible across platforms and worker counts, with no rejection-loop
nondeterminism, and sharding just means handing different shard indices to
different workers.  Trials are consumed in fixed-size shards so a merged
estimate never depends on how the work was distributed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from .distributions import TimingDistribution
from .errors import DomainError

__all__ = ["SamplerConfig", "WidthEstimate", "sample_quantum", "sample_classical"]

SHARD_TRIALS = 1 << 15
MAX_PHOTONS_PER_TRIAL = 1_000_000
_DRAW_BLOCK = 4_000_000  # per-chunk cap on simultaneous variates


@dataclass(frozen=True)
class SamplerConfig:
    seed: int
    n_samples: int
    n_photons: int = 1

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must fit in an unsigned 64-bit integer")
        if self.n_samples < 100:
            raise DomainError(f"need at least 100 samples, got {self.n_samples}")
        if not 1 <= self.n_photons <= MAX_PHOTONS_PER_TRIAL:
            raise DomainError(
                f"n_photons must be in [1, {MAX_PHOTONS_PER_TRIAL}] for sampling"
            )


@dataclass(frozen=True)
class WidthEstimate:
    """Sample width and its uncertainty.

    For Gaussian data the standard error of the width estimate is
    sigma_hat / sqrt(2 (n - 1)).
    """

    sigma_hat: float
    standard_error: float
    n_samples: int
    mean_hat: float
    mean_standard_error: float

    def to_dict(self) -> dict:
        return {
            "sigma_hat_fs": self.sigma_hat,
            "standard_error_fs": self.standard_error,
            "n_samples": self.n_samples,
            "mean_hat_fs": self.mean_hat,
            "mean_standard_error_fs": self.mean_standard_error,
        }


def _stream_id(domain: int, shard: int, block: int = 0) -> int:
    # Disjoint key spaces for the two samplers, so equal seeds never share
    # a substream: 2 domain bits | 34 shard bits | 28 block bits.
    if shard >= 1 << 34 or block >= 1 << 28:
        raise DomainError("sampling stream index out of range")
    return (domain << 62) | (shard << 28) | block


def _shard_normals(seed: int, stream: int, count: int) -> np.ndarray:
    """``count`` standard normals from the (seed, stream) substream."""
    gen = np.random.Generator(np.random.Philox(key=np.array([seed, stream], dtype=np.uint64)))
    raw = gen.integers(0, 1 << 53, size=count, dtype=np.uint64)
    uniforms = (raw.astype(np.float64) + 0.5) * (2.0 ** -53)  # open (0, 1)
    return ndtri(uniforms)


def _estimate(values: np.ndarray) -> WidthEstimate:
    n = values.size
    sigma_hat = float(np.std(values, ddof=1))
    return WidthEstimate(
        sigma_hat=sigma_hat,
        standard_error=sigma_hat / math.sqrt(2.0 * (n - 1)),
        n_samples=n,
        mean_hat=float(np.mean(values)),
        mean_standard_error=sigma_hat / math.sqrt(n),
    )


def _shards(n_samples: int):
    start = 0
    shard = 0
    while start < n_samples:
        yield shard, min(SHARD_TRIALS, n_samples - start)
        start += SHARD_TRIALS
        shard += 1


def sample_quantum(dist: TimingDistribution, cfg: SamplerConfig) -> WidthEstimate:
    """Sample the collective observable directly from its Gaussian law.

    The law already describes the mean-time statistic, which is the object
    of every width claim, so no per-photon events are simulated here.
    """
    values = np.empty(cfg.n_samples)
    start = 0
    for shard, count in _shards(cfg.n_samples):
        normals = _shard_normals(cfg.seed, _stream_id(0, shard), count)
        values[start:start + count] = dist.mean + dist.sigma * normals
        start += count
    return _estimate(values)


def sample_classical(sigma_t: float, cfg: SamplerConfig) -> WidthEstimate:
    """Empirical width of per-trial averages of N classical pulse pairs.

    Each trial draws ``cfg.n_photons`` independent arrival-time differences
    of width ``sigma_t`` (fs) and averages them; the spread of the trial
    averages is expected to shrink like sigma_t / sqrt(N).
    """
    if not sigma_t > 0:
        raise DomainError(f"sigma_t must be positive, got {sigma_t}")
    n = cfg.n_photons
    values = np.empty(cfg.n_samples)
    start = 0
    for shard, count in _shards(cfg.n_samples):
        sums = np.zeros(count)
        cols_per_block = max(1, _DRAW_BLOCK // count)
        done = 0
        block_idx = 0
        while done < n:
            cols = min(cols_per_block, n - done)
            block = _shard_normals(cfg.seed, _stream_id(1, shard, block_idx), count * cols)
            sums += block.reshape(count, cols).sum(axis=1)
            done += cols
            block_idx += 1
        values[start:start + count] = sigma_t * sums / n
        start += count
    return _estimate(values)
