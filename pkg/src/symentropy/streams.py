"""Deterministic seed splitting and chunked Monte Carlo accumulation.

All Monte Carlo work is cut into fixed-size chunks so that results never
depend on how many workers execute them.  Chunk ``i`` of a run with base
seed ``s`` always draws from the stream ``s XOR hash(i)``, where ``hash``
is the SplitMix64 finalizer; partial moments are merged in chunk order
with the pairwise (Chan) update.  Setting ``SYMENTROPY_THREADS`` runs the
chunks on a thread pool without changing any output.
"""

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

CHUNK_SIZE = 1 << 16

_M64 = (1 << 64) - 1


def _mix64(i):
    # SplitMix64 finalizer; decorrelates consecutive indices.
    z = (int(i) + 0x9E3779B97F4A7C15) & _M64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    return z ^ (z >> 31)


def split_seed(seed, index):
    """Private stream for worker/chunk ``index``: ``seed XOR hash(index)``."""
    return (int(seed) ^ _mix64(index)) & _M64


def worker_count():
    """Thread cap from SYMENTROPY_THREADS (default 1, floor 1)."""
    raw = os.environ.get("SYMENTROPY_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _chunk_sizes(count, chunk_size):
    sizes = [chunk_size] * (count // chunk_size)
    if count % chunk_size:
        sizes.append(count % chunk_size)
    return sizes


def _merge(a, b):
    na, mean_a, m2_a = a
    nb, mean_b, m2_b = b
    n = na + nb
    delta = mean_b - mean_a
    mean = mean_a + delta * nb / n
    m2 = m2_a + m2_b + delta * delta * na * nb / n
    return n, mean, m2


def _moments(values):
    values = np.asarray(values, dtype=float)
    n = values.size
    mean = float(values.mean())
    m2 = float(np.sum((values - mean) ** 2))
    return n, mean, m2


def mc_mean(stat, count, seed, chunk_size=CHUNK_SIZE):
    """Mean and standard error of ``stat(chunk_count, chunk_seed)``.

    ``stat`` must return a 1-D array of per-sample statistics.  The result
    is deterministic in ``(count, seed)`` and independent of the worker
    count.
    """
    sizes = _chunk_sizes(int(count), chunk_size)
    seeds = [split_seed(seed, i) for i in range(len(sizes))]
    threads = worker_count()
    if threads > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda args: _moments(stat(*args)), zip(sizes, seeds)))
    else:
        parts = [_moments(stat(m, s)) for m, s in zip(sizes, seeds)]
    total = parts[0]
    for part in parts[1:]:
        total = _merge(total, part)
    n, mean, m2 = total
    if n > 1:
        stderr = float(np.sqrt(m2 / (n - 1) / n))
    else:
        stderr = float("inf")
    return mean, stderr, n
