"""Monte Carlo reduction: streaming mean / standard error with a
deterministic chunked-merge contract.

Estimates are accumulated per chunk with Welford's update and combined
with the pairwise (Chan) merge.  Chunk boundaries and their substream
ids are fixed by the caller's parameters, and merges happen in chunk
order, so the result is independent of how many workers ran the chunks.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .rng import RngStream


@dataclass(frozen=True)
class SummaryStat:
    """A Monte Carlo estimate: sample count, mean, standard error.

    seed_fingerprint tags the stream family that produced the samples.
    """

    n: int
    mean: float
    std_error: float
    seed_fingerprint: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("SummaryStat requires at least one sample")
        if self.std_error < 0:
            raise ValueError("std_error must be nonnegative")


@dataclass(frozen=True)
class _Acc:
    # (n, mean, M2) running-moments triple
    n: int
    mean: float
    m2: float


def _accumulate(samples: np.ndarray) -> _Acc:
    x = np.asarray(samples, dtype=float)
    n = x.size
    if n == 0:
        return _Acc(0, 0.0, 0.0)
    mean = float(x.mean())
    m2 = float(np.sum((x - mean) ** 2))
    return _Acc(n, mean, m2)


def _merge(a: _Acc, b: _Acc) -> _Acc:
    if a.n == 0:
        return b
    if b.n == 0:
        return a
    n = a.n + b.n
    delta = b.mean - a.mean
    mean = a.mean + delta * (b.n / n)
    m2 = a.m2 + b.m2 + delta * delta * (a.n * b.n / n)
    return _Acc(n, mean, m2)


def _finalize(acc: _Acc, fingerprint: int = 0) -> SummaryStat:
    if acc.n == 0:
        raise ValueError("no samples to reduce")
    if acc.n == 1:
        se = 0.0
    else:
        var = acc.m2 / (acc.n - 1)
        se = math.sqrt(max(var, 0.0) / acc.n)
    return SummaryStat(n=acc.n, mean=acc.mean, std_error=se,
                       seed_fingerprint=fingerprint)


def mc_reduce(samples: Iterable[float], chunking: int = 4096) -> SummaryStat:
    """Reduce a stream of reals to SummaryStat via chunked Welford/Chan merge.

    The result is a fixed function of the sample sequence; chunking only
    controls the internal merge tree and perturbs nothing beyond the
    last few ulps.
    """
    if chunking < 1:
        raise ValueError(f"chunking must be >= 1, got {chunking}")
    x = np.fromiter(samples, dtype=float)
    if x.size == 0:
        raise ValueError("empty sample stream")
    acc = _Acc(0, 0.0, 0.0)
    for start in range(0, x.size, chunking):
        acc = _merge(acc, _accumulate(x[start:start + chunking]))
    return _finalize(acc)


def thread_count() -> int:
    """Worker cap: PATHLAB_THREADS if set, else machine cores."""
    env = os.environ.get("PATHLAB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def chunked_mc(sampler: Callable[[RngStream, int], np.ndarray],
               rng: RngStream,
               n_total: int,
               chunk_size: int = 1 << 14,
               stream_base: int = 1) -> SummaryStat:
    """Run sampler(stream, n) over fixed chunks bound to fixed substreams.

    sampler must be a pure function of its stream argument.  Chunk c is
    always drawn from rng.split(stream_base + c), and partial results
    merge in chunk order, so scheduling and worker count cannot change
    the outcome.
    """
    if n_total < 1:
        raise ValueError(f"n_total must be >= 1, got {n_total}")
    sizes = []
    left = n_total
    while left > 0:
        take = min(chunk_size, left)
        sizes.append(take)
        left -= take
    streams = [rng.split(stream_base + c) for c in range(len(sizes))]

    workers = min(thread_count(), len(sizes))
    if workers <= 1:
        accs = [_accumulate(sampler(s, n)) for s, n in zip(streams, sizes)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            accs = list(pool.map(lambda sn: _accumulate(sampler(*sn)),
                                 zip(streams, sizes)))
    acc = _Acc(0, 0.0, 0.0)
    for a in accs:
        acc = _merge(acc, a)
    return _finalize(acc, fingerprint=rng.fingerprint())


def merge_stats(stats: Sequence[SummaryStat]) -> SummaryStat:
    """Combine disjoint-stream SummaryStats (exact pairwise formula)."""
    if not stats:
        raise ValueError("nothing to merge")
    acc = _Acc(0, 0.0, 0.0)
    fp = 0
    for s in stats:
        m2 = (s.std_error ** 2) * s.n * (s.n - 1)
        acc = _merge(acc, _Acc(s.n, s.mean, m2))
        fp ^= s.seed_fingerprint
    return _finalize(acc, fingerprint=fp)
