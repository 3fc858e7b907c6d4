"""Deterministic counter-based random streams.

A stream is identified by the pair ``(master_seed, stream_index)``.
Identical pairs always reproduce the same draw sequence; distinct stream
indices give statistically independent streams.  This makes a stream the
unit of parallelism: any number of workers may consume disjoint streams
concurrently and the combined experiment stays bit-reproducible.

Streams are backed by the Philox counter-based bit generator with the
128-bit key set directly to ``(master_seed, stream_index)``, so stream
derivation is a pure function of the pair and involves no shared seeding
state.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

_UINT64_MASK = (1 << 64) - 1


def new_generator(master_seed: int, stream_index: int) -> np.random.Generator:
    """Fresh generator for the stream keyed by (master_seed, stream_index).

    Negative inputs wrap modulo 2**64, matching two's-complement intent.
    """
    key = np.array(
        [master_seed & _UINT64_MASK, stream_index & _UINT64_MASK],
        dtype=np.uint64,
    )
    return np.random.Generator(np.random.Philox(key=key))


@dataclass
class RandomStream:
    """One reproducible draw sequence, addressed by (master_seed, stream_index).

    The underlying generator is created lazily and consumed sequentially:
    successive sampling calls on the same object continue the sequence,
    while a new ``RandomStream`` with the same pair replays it from the
    start.
    """

    master_seed: int
    stream_index: int
    _generator: np.random.Generator | None = field(
        default=None, repr=False, compare=False
    )

    @property
    def generator(self) -> np.random.Generator:
        if self._generator is None:
            self._generator = new_generator(self.master_seed, self.stream_index)
        return self._generator
