"""Seeded sampling of squared Rayleigh channel magnitudes.

Each substream is a Philox generator keyed by ``(seed, stream_index)``, so
any substream can be built in O(1) and substreams never share a counter
sequence.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class ChannelRealization:
    g_m: float
    g_n: float


@dataclass(frozen=True)
class RandomStream:
    seed: int
    stream_index: int = 0

    def generator(self) -> np.random.Generator:
        key = (self.seed & _MASK64) | ((self.stream_index & _MASK64) << 64)
        return np.random.Generator(np.random.Philox(key=key))


def split_stream(seed: int, k: int) -> RandomStream:
    if k < 0:
        raise ValueError(f"stream index must be >= 0, got {k}")
    return RandomStream(seed=seed, stream_index=k)


def exp_from_uniform(u):
    """Inverse CDF of Exp(1): -ln(1 - u) for u in [0, 1)."""
    return -np.log1p(-np.asarray(u, dtype=float))


def sample_gains(rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Draw ``n`` independent (g_m, g_n) pairs; consumes exactly 2n uniforms."""
    u = rng.random((2, n))
    g = exp_from_uniform(u)
    return g[0], g[1]


class ChannelSampler:
    """Stateful scalar sampler over a single substream."""

    def __init__(self, stream: RandomStream):
        self.stream = stream
        self._rng = stream.generator()

    def __iter__(self):
        return self

    def __next__(self) -> ChannelRealization:
        return self.sample()

    def sample(self) -> ChannelRealization:
        u = self._rng.random(2)
        g_m, g_n = exp_from_uniform(u)
        return ChannelRealization(float(g_m), float(g_n))


def sample_channel(stream: RandomStream | ChannelSampler) -> ChannelRealization:
    """Draw one realization.

    A bare ``RandomStream`` is a value, so drawing from it always returns its
    first realization; wrap it in a ``ChannelSampler`` to advance.
    """
    if isinstance(stream, RandomStream):
        stream = ChannelSampler(stream)
    return stream.sample()
