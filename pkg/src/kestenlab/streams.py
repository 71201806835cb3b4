"""Deterministic splittable random streams.

Every Monte Carlo operation takes an explicit stream position (a
``numpy.random.SeedSequence``).  Parallel work derives one substream per
chunk index, and chunk statistics are merged in chunk order, so results are
bit-identical for any worker count.
"""

from __future__ import annotations

import hashlib
import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

DEFAULT_CHUNK = 65_536

Stream = np.random.SeedSequence


def master_stream(seed: int) -> Stream:
    """Root stream of an experiment run."""
    return np.random.SeedSequence(int(seed))


def task_stream(seed: int, task: str) -> Stream:
    """Stream for one named task: entropy is (seed, sha256(task) truncated)."""
    digest = hashlib.sha256(task.encode("utf-8")).digest()
    return np.random.SeedSequence([int(seed), int.from_bytes(digest[:8], "little")])


def substream(stream: Stream, *indices: int) -> Stream:
    """Child stream at the given index path, independent of sibling order.

    Equivalent to repeated ``spawn`` but stateless, so workers can derive
    their own chunk streams without coordinating.
    """
    key = tuple(stream.spawn_key) + tuple(int(i) for i in indices)
    return np.random.SeedSequence(entropy=stream.entropy, spawn_key=key)


def rng_from(stream) -> np.random.Generator:
    """Generator at a stream position; passes through an existing Generator."""
    if isinstance(stream, np.random.Generator):
        return stream
    return np.random.default_rng(stream)


def chunk_sizes(total: int, chunk: int = DEFAULT_CHUNK) -> list[int]:
    """Fixed chunking of ``total`` draws, independent of worker count."""
    if total <= 0:
        raise ValueError(f"total must be positive, got {total}")
    sizes = [chunk] * (total // chunk)
    if total % chunk:
        sizes.append(total % chunk)
    return sizes


def default_workers() -> int:
    """Worker count from the environment, else 1 (the only env knob)."""
    raw = os.environ.get("KESTEN_LAB_WORKERS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def map_chunks(fn, total: int, stream: Stream, workers: int = 1,
               chunk: int = DEFAULT_CHUNK):
    """Run ``fn(size, substream)`` over fixed chunks; results in chunk order.

    ``fn`` must be picklable (module-level function or ``functools.partial``
    of one) when ``workers > 1``.
    """
    sizes = chunk_sizes(total, chunk)
    streams = [substream(stream, i) for i in range(len(sizes))]
    if workers <= 1 or len(sizes) == 1:
        return [fn(s, ss) for s, ss in zip(sizes, streams)]
    with ProcessPoolExecutor(max_workers=min(workers, len(sizes))) as pool:
        return list(pool.map(fn, sizes, streams))
