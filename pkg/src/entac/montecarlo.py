"""Monte Carlo oracle for the analytic path probabilities.

Trials are split into fixed-size blocks and block ``i`` always draws from the
substream ``SeedSequence(seed, spawn_key=(i,))``. The estimate therefore does
not depend on how many workers run the blocks.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .density import DensityModel
from .errors import DomainError

BLOCK = 1 << 15


@dataclass(frozen=True)
class TrialConfig:
    trials: int = 100_000
    seed: int = 0

    def __post_init__(self):
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class Estimate:
    mean: float
    std_error: float
    trials: int

    @classmethod
    def from_successes(cls, successes: int, trials: int) -> "Estimate":
        p = successes / trials
        return cls(p, math.sqrt(p * (1.0 - p) / trials), trials)

    def agrees_with(self, expected: float, k: float = 3.0) -> bool:
        """``|mean - expected| <= k * se``.

        The standard error is taken as the larger of the empirical one and the
        one implied by ``expected``; otherwise an all-success run (se = 0)
        could never match an analytic value of 1 - 1e-12.
        """
        se = max(self.std_error, math.sqrt(max(expected * (1 - expected), 0.0) / self.trials))
        return abs(self.mean - expected) <= k * se


def stream(seed: int, index: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def sample_distance(density: DensityModel, rng: np.random.Generator) -> float:
    """One inverse-CDF draw from ``density``."""
    return float(density.ppf(rng.random()))


def sample_distances(density: DensityModel, rng: np.random.Generator, size) -> np.ndarray:
    return np.asarray(density.ppf(rng.random(size)), dtype=float)


def _block_successes(gs: Sequence[int], density: DensityModel, bound: float,
                     seed: int, index: int, n: int) -> int:
    total = sum(gs)
    if total == 0:
        return n
    rng = stream(seed, index)
    passed = sample_distances(density, rng, (n, total)) < bound
    ok = np.zeros(n, dtype=bool)
    start = 0
    for g in gs:
        ok |= passed[:, start:start + g].all(axis=1)
        start += g
    return int(ok.sum())


def estimate_multipath(
    path_gs: Sequence[int],
    density: DensityModel,
    bound: float,
    config: TrialConfig,
    workers: int = 1,
) -> Estimate:
    """Fraction of trials in which at least one path has every edge under ``bound``."""
    gs = [int(g) for g in path_gs]
    if any(g < 0 for g in gs):
        raise DomainError("edge counts must be >= 0")
    if bound < 0:
        raise DomainError("bound must be >= 0")
    if not gs:
        return Estimate(0.0, 0.0, config.trials)
    sizes = [BLOCK] * (config.trials // BLOCK)
    if config.trials % BLOCK:
        sizes.append(config.trials % BLOCK)
    jobs = [(gs, density, bound, config.seed, i, n) for i, n in enumerate(sizes)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(lambda a: _block_successes(*a), jobs))
    else:
        counts = [_block_successes(*a) for a in jobs]
    return Estimate.from_successes(sum(counts), config.trials)


def estimate_single_path(
    g: int, density: DensityModel, bound: float, config: TrialConfig, workers: int = 1
) -> Estimate:
    return estimate_multipath([g], density, bound, config, workers)
