"""Deterministic, splittable random streams.

Every stochastic routine in the package draws from an RngStream: a
(seed, stream_id) pair mapped onto numpy's Philox counter-based
generator.  Distinct stream_ids select disjoint counter blocks of the
same keyed cipher, so substreams never share state and can be consumed
concurrently in any order without changing results.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Philox-4x64 counter layout: [c0, c1, chunk, stream].  Each stream owns
# 2^128 counter values, far beyond any conceivable draw count.
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngStream:
    """Seeded deterministic random source.

    seed      : 64-bit key shared by all substreams of one experiment
    stream_id : substream selector; distinct ids give independent streams
    """

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        if not (0 <= self.seed <= _MASK64):
            raise ValueError(f"seed must fit in 64 bits, got {self.seed}")
        if not (0 <= self.stream_id <= _MASK64):
            raise ValueError(f"stream_id must fit in 64 bits, got {self.stream_id}")

    def generator(self) -> np.random.Generator:
        """A fresh numpy Generator positioned at this stream's origin."""
        bg = np.random.Philox(key=self.seed, counter=[0, 0, 0, self.stream_id])
        return np.random.Generator(bg)

    def split(self, stream_id: int) -> "RngStream":
        """Same seed, different substream."""
        return RngStream(self.seed, stream_id)

    def fingerprint(self) -> int:
        """64-bit mix of (seed, stream_id), used to tag summary outputs."""
        h = 0xCBF29CE484222325
        for word in (self.seed, self.stream_id):
            for shift in range(0, 64, 8):
                h ^= (word >> shift) & 0xFF
                h = (h * 0x100000001B3) & _MASK64
        return h
