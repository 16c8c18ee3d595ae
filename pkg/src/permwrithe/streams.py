"""Seedable, splittable random streams with deterministic replay.

A :class:`SampleStream` is identified by a 64-bit ``seed`` and a 64-bit
``stream_id``.  The same pair always reproduces the same sample
sequence bit for bit (numpy's PCG64 behind a SeedSequence), and
distinct stream ids under one seed give statistically independent
streams.  Every source of randomness in this package flows through one
of these; there are no hidden global generators.

A stream owns mutable generator state and should be used from a single
execution context at a time; parallel work takes one stream per worker
(see :meth:`SampleStream.substream`).
"""
from __future__ import annotations

import numpy as np

__all__ = ["SampleStream"]

_U53 = 1 << 53


class SampleStream:
    def __init__(self, seed: int, stream_id: int = 0):
        if seed < 0 or stream_id < 0:
            raise ValueError("seed and stream_id must be nonnegative")
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        self._generator: np.random.Generator | None = None

    @property
    def generator(self) -> np.random.Generator:
        """The underlying numpy generator, created lazily."""
        if self._generator is None:
            seq = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id,))
            self._generator = np.random.Generator(np.random.PCG64(seq))
        return self._generator

    def substream(self, offset: int) -> "SampleStream":
        """A fresh independent stream with id ``stream_id + offset``."""
        return SampleStream(self.seed, self.stream_id + offset)

    def reset(self) -> "SampleStream":
        """Forget generator state; the next draw replays from the start."""
        self._generator = None
        return self

    def open_uniform(self, size=None) -> np.ndarray | float:
        """Uniform draws on the open interval (0, 1).

        Backed by 53-bit integers in [1, 2^53 - 1], so the endpoints 0
        and 1 are unreachable; inverse-CDF transforms may take logs
        without guards.
        """
        k = self.generator.integers(1, _U53, size=size)
        return k / _U53

    def __repr__(self) -> str:
        return f"SampleStream(seed={self.seed}, stream_id={self.stream_id})"
