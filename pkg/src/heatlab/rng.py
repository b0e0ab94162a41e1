"""Deterministic random-number substreams and chunked parallel reduction.

Monte Carlo estimators draw from counter-based Philox generators keyed on
(seed, chunk index), and sample counts round up to whole chunks.  Chunk
results are always combined in index order, so estimates are bit-identical
for any worker count (HEATLAB_THREADS caps the pool; default is the hardware
parallelism).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

CHUNK_SIZE = 65536


def worker_count() -> int:
    env = os.environ.get("HEATLAB_THREADS", "").strip()
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def substream(seed: int, index: int) -> np.random.Generator:
    seq = np.random.SeedSequence(entropy=(int(seed), int(index)))
    return np.random.Generator(np.random.Philox(seq))


def n_chunks(samples: int) -> int:
    if samples < 1:
        raise ValueError(f"sample count must be positive, got {samples}")
    return max(1, math.ceil(samples / CHUNK_SIZE))


def map_chunks(fn, chunks: int, seed: int) -> list:
    """fn(chunk_index, generator) for every chunk, results in index order."""
    workers = min(worker_count(), chunks)
    if workers <= 1:
        return [fn(i, substream(seed, i)) for i in range(chunks)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda i: fn(i, substream(seed, i)), range(chunks)))
