"""Seeded uniform and Poisson point processes on the reference regions.

Each ``(seed, trial_index)`` pair gets its own Philox stream keyed by
``child_seed(seed, trial_index)``, so trials can be generated independently
and in any order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Region

MASK64 = (1 << 64) - 1


def splitmix64(z: int) -> int:
    """One step of the SplitMix64 output function (Steele, Lea & Flood 2014)."""
    z = (z + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def child_seed(seed: int, trial_index: int) -> int:
    """``splitmix64(splitmix64(seed) XOR trial_index)``."""
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    if trial_index < 0:
        raise ValueError("trial_index must be nonnegative")
    return splitmix64(splitmix64(seed) ^ (trial_index & MASK64))


def trial_rng(seed: int, trial_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=child_seed(seed, trial_index)))


@dataclass(frozen=True)
class UniformN:
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"UniformN needs n >= 1, got {self.n}")


@dataclass(frozen=True)
class Poisson:
    intensity: float

    def __post_init__(self):
        if not (self.intensity > 0 and math.isfinite(self.intensity)):
            raise ValueError(f"Poisson needs a positive intensity, got {self.intensity}")


@dataclass(frozen=True)
class SampleSpec:
    region: Region
    mode: UniformN | Poisson
    seed: int = 0
    trial_index: int = 0


@dataclass(frozen=True)
class PointSet:
    points: np.ndarray
    spec: SampleSpec

    def __len__(self):
        return len(self.points)


def uniform_points(region: Region, n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` independent uniform points in ``region`` as an ``(n, 3)`` array."""
    if not region.is_ball:
        return rng.uniform(-0.5, 0.5, size=(n, 3))
    R = region.radius
    out = np.empty((n, 3))
    filled = 0
    while filled < n:
        need = n - filled
        # acceptance is pi/6 ~ 0.524
        batch = rng.uniform(-R, R, size=(int(need * 2.0) + 16, 3))
        ok = batch[np.einsum("ij,ij->i", batch, batch) <= R * R]
        take = min(need, len(ok))
        out[filled:filled + take] = ok[:take]
        filled += take
    return out


def sample(spec: SampleSpec) -> PointSet:
    rng = trial_rng(spec.seed, spec.trial_index)
    if isinstance(spec.mode, UniformN):
        n = int(spec.mode.n)
    else:
        n = int(rng.poisson(spec.mode.intensity * spec.region.volume()))
    return PointSet(uniform_points(spec.region, n, rng), spec)
