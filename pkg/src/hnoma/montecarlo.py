"""Coupled Monte Carlo estimates of the underperformance probabilities.

Every channel draw is scored under all three H-NOMA schemes.  Draws are
generated in fixed-size chunks, chunk ``c`` using substream ``c`` of the
seed, and chunk results are merged in chunk order, so the result depends
only on ``(seed, n_samples)`` and never on the number of workers.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import sample_gains, split_stream
from .params import SystemParams
from .rates import SchemeKind, fsic_sinr, npa_sinr, pa_sinr, underperforms_from_sinr

CHUNK_SIZE = 1 << 16
# estimates with fewer expected hits than this are flagged as unreliable
RARE_EVENT_HITS = 10


@dataclass(frozen=True)
class ProbabilityEstimate:
    p_hat: float
    stderr: float
    samples: int
    scheme: SchemeKind | None = None

    @classmethod
    def from_count(cls, hits: int, n: int, scheme: SchemeKind | None = None) -> ProbabilityEstimate:
        p = hits / n
        return cls(p, math.sqrt(p * (1.0 - p) / n), n, scheme)

    @property
    def rare(self) -> bool:
        return self.p_hat * self.samples < RARE_EVENT_HITS


@dataclass(frozen=True)
class McReport:
    fsic: ProbabilityEstimate
    npa: ProbabilityEstimate
    pa: ProbabilityEstimate
    mean_gamma: float
    mean_pa_energy: float
    ordering_violations: int

    def for_scheme(self, scheme: SchemeKind) -> ProbabilityEstimate:
        return {
            SchemeKind.FSIC: self.fsic,
            SchemeKind.HSIC_NPA: self.npa,
            SchemeKind.HSIC_PA: self.pa,
        }[scheme]


@dataclass(frozen=True)
class Tally:
    n: int
    fsic: int
    npa: int
    pa: int
    violations: int
    gamma_sum: float


def tally(p: SystemParams, g_m: np.ndarray, g_n: np.ndarray) -> Tally:
    """Score a batch of coupled draws under the three schemes."""
    bad_f = underperforms_from_sinr(p, g_n, fsic_sinr(p, g_m, g_n))
    bad_n = underperforms_from_sinr(p, g_n, npa_sinr(p, g_m, g_n)[0])
    s_pa, _, _, gamma = pa_sinr(p, g_m, g_n)
    bad_p = underperforms_from_sinr(p, g_n, s_pa)
    # PA <= NPA <= FSIC must hold draw by draw
    violations = int(np.count_nonzero((bad_p & ~bad_n) | (bad_n & ~bad_f)))
    return Tally(
        n=int(np.size(g_n)),
        fsic=int(np.count_nonzero(bad_f)),
        npa=int(np.count_nonzero(bad_n)),
        pa=int(np.count_nonzero(bad_p)),
        violations=violations,
        gamma_sum=float(np.sum(gamma)),
    )


def chunk_sizes(n_samples: int) -> list[int]:
    full, rest = divmod(n_samples, CHUNK_SIZE)
    return [CHUNK_SIZE] * full + ([rest] if rest else [])


def _run_chunk(p: SystemParams, seed: int, index: int, size: int) -> Tally:
    g_m, g_n = sample_gains(split_stream(seed, index).generator(), size)
    return tally(p, g_m, g_n)


def merge(p: SystemParams, tallies: list[Tally]) -> McReport:
    n = sum(t.n for t in tallies)
    if n < 1:
        raise ValueError("no samples to merge")
    mean_gamma = math.fsum(t.gamma_sum for t in tallies) / n
    return McReport(
        fsic=ProbabilityEstimate.from_count(sum(t.fsic for t in tallies), n, SchemeKind.FSIC),
        npa=ProbabilityEstimate.from_count(sum(t.npa for t in tallies), n, SchemeKind.HSIC_NPA),
        pa=ProbabilityEstimate.from_count(sum(t.pa for t in tallies), n, SchemeKind.HSIC_PA),
        mean_gamma=mean_gamma,
        mean_pa_energy=(1.0 + mean_gamma) * p.beta * p.rho_n,
        ordering_violations=sum(t.violations for t in tallies),
    )


def estimate(p: SystemParams, n_samples: int, seed: int, workers: int = 1) -> McReport:
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    sizes = chunk_sizes(n_samples)
    if workers <= 1 or len(sizes) == 1:
        tallies = [_run_chunk(p, seed, i, s) for i, s in enumerate(sizes)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            tallies = list(pool.map(lambda a: _run_chunk(p, seed, *a), enumerate(sizes)))
    return merge(p, tallies)


def estimate_event(
    p: SystemParams, scheme: SchemeKind, n_samples: int, seed: int, workers: int = 1
) -> ProbabilityEstimate:
    return estimate(p, n_samples, seed, workers).for_scheme(scheme)


def estimate_median_event(n_samples: int, seed: int) -> ProbabilityEstimate:
    """Self-test of the sampler: P(g_n <= ln 2), which is 1/2 for Exp(1)."""
    hits = 0
    for i, size in enumerate(chunk_sizes(n_samples)):
        _, g_n = sample_gains(split_stream(seed, i).generator(), size)
        hits += int(np.count_nonzero(g_n <= math.log(2.0)))
    return ProbabilityEstimate.from_count(hits, n_samples)
