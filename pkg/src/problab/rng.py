"""Counter-based random streams.

Every stochastic routine in the package draws from a Philox generator keyed
by (seed, *path).  Streams with distinct paths are statistically independent
and order-independent, so replica blocks can run on any number of workers
and still reproduce bit-identical results.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1

# Replica block size for Monte Carlo accumulation.  Fixed so that results
# are independent of worker count and of the total sample budget's split.
BLOCK = 8192


def substream(seed: int, *path: int) -> np.random.Generator:
    """Return the generator for stream `path` under the master `seed`."""
    ss = np.random.SeedSequence(entropy=int(seed) & _MASK64, spawn_key=tuple(path))
    return np.random.Generator(np.random.Philox(ss))


def block_ranges(n: int, block: int = BLOCK):
    """Yield (index, start, stop) for fixed-size replica blocks covering n."""
    b = 0
    for start in range(0, n, block):
        yield b, start, min(start + block, n)
        b += 1
