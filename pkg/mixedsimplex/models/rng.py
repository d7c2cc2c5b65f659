from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mixedsimplex.errors import InvalidArgument

_U64 = 1 << 64


@dataclass(frozen=True)
class RngState:
    """Seed of a counter-based (Philox) random stream.

    Chunk ``i`` of stream ``s`` starts at counter ``[0, 0, i, s]``, so chunks
    occupy disjoint regions of the counter space and can be drawn in any
    order, or in parallel, with identical results.
    """

    seed: int = 0
    stream: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.seed < _U64:
            raise InvalidArgument(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if not 0 <= self.stream < _U64:
            raise InvalidArgument(f"stream must be a 64-bit unsigned integer, got {self.stream}")

    def generator(self, chunk: int = 0) -> np.random.Generator:
        bit_generator = np.random.Philox(key=self.seed, counter=[0, 0, chunk, self.stream])
        return np.random.Generator(bit_generator)

    def child(self, stream: int) -> RngState:
        """Independent stream under the same seed."""
        return RngState(self.seed, stream)
