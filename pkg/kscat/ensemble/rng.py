"""Counter-based random streams: one independent stream per ensemble index."""

from dataclasses import dataclass

import numpy as np

_U64 = 2**64


@dataclass(frozen=True)
class RngStream:
    """
    Identifies a reproducible random stream.

    The same (seed, stream_id) yields the same draws on every run and in
    every worker, so results do not depend on how indices are distributed.
    """
    seed: int
    stream_id: int

    def __post_init__(self):
        for name in ("seed", "stream_id"):
            value = getattr(self, name)
            if not 0 <= value < _U64:
                raise ValueError(f"{name} must be an unsigned 64-bit integer, got {value}")

    def generator(self, purpose: int = 0) -> np.random.Generator:
        """
        Generator for this stream. A non-zero ``purpose`` selects an
        independent side stream (e.g. overlap redraws at one frequency).
        """
        key = (self.stream_id,) if purpose == 0 else (self.stream_id, purpose)
        sequence = np.random.SeedSequence(self.seed, spawn_key=key)
        return np.random.Generator(np.random.PCG64(sequence))
