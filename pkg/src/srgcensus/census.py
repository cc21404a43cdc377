"""Induced-subgraph census of the order-7 Hamiltonian catalog, and induced cycle counts."""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .catalog import NONE_ID, Classifier
from .graph import Graph, GraphError, pair_list

SUBSET_MAX_ORDER = 64
UINT64_MAX = (1 << 64) - 1


@dataclass(frozen=True)
class CountVector:
    catalog_order: int
    catalog_hash: str
    counts: tuple[int, ...]
    n: int
    k: int | None

    def __getitem__(self, i: int) -> int:
        return self.counts[i]

    def __len__(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def with_counts(self, counts) -> CountVector:
        return CountVector(self.catalog_order, self.catalog_hash, tuple(counts), self.n, self.k)


@dataclass(frozen=True)
class PolygonCounts:
    p3: int = 0
    p4: int = 0
    p5: int = 0
    p6: int = 0
    p7: int = 0

    def as_dict(self) -> dict[str, int]:
        return {f"p{i}": getattr(self, f"p{i}") for i in range(3, 8)}


def available_workers() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def regular_degree(host: Graph) -> int | None:
    degs = set(host.degrees())
    return degs.pop() if len(degs) == 1 else None


def _vector(host: Graph, classifier: Classifier, counts) -> CountVector:
    counts = tuple(int(c) for c in counts)
    for cid, c in enumerate(counts):
        if c > UINT64_MAX:
            raise OverflowError(f"count for class {cid} exceeds 64 bits")
    return CountVector(classifier.order, classifier.catalog_hash, counts, host.order, regular_degree(host))


def census_subsets(host: Graph, classifier: Classifier) -> CountVector:
    """Reference census: classify the induced graph of every 7-subset."""
    if host.order > SUBSET_MAX_ORDER:
        raise GraphError(f"subset census is limited to order <= {SUBSET_MAX_ORDER}")
    size = classifier.order
    pairs = pair_list(size)
    table = classifier.table
    counts = [0] * classifier.num_classes
    rows = host.rows
    for subset in itertools.combinations(range(host.order), size):
        code = 0
        for b, (i, j) in enumerate(pairs):
            if (rows[subset[i]] >> subset[j]) & 1:
                code |= 1 << b
        cid = table[code]
        if cid != NONE_ID:
            counts[cid] += 1
    return _vector(host, classifier, counts)


def _pair_index(size: int) -> np.ndarray:
    idx = np.zeros((size, size), dtype=np.int64)
    for b, (i, j) in enumerate(pair_list(size)):
        idx[i, j] = idx[j, i] = b
    return idx


def _chunks(order: int, jobs: int) -> list[np.ndarray]:
    # Low roots carry most of the work; interleave them across many small chunks.
    nchunks = max(1, min(order, jobs * 16))
    roots = np.arange(order, dtype=np.int64)
    return [roots[i::nchunks] for i in range(nchunks)]


def census_extend(host: Graph, classifier: Classifier, jobs: int | None = None) -> CountVector:
    """Census by enumerating each connected induced 7-vertex subgraph once.

    Roots are partitioned across ``jobs`` threads; per-chunk count vectors are
    summed, so the result does not depend on the worker count.
    """
    jobs = jobs or available_workers()
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    size = classifier.order
    if host.order < size:
        return _vector(host, classifier, [0] * classifier.num_classes)
    adj = host.words()
    table = classifier.table
    pidx = _pair_index(size)

    def work(roots: np.ndarray) -> np.ndarray:
        out = np.zeros(256, dtype=np.int64)
        _kernels.esu_count(adj, roots, table, pidx, size, out)
        return out

    chunks = _chunks(host.order, jobs)
    if jobs == 1:
        parts = [work(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(work, chunks))
    totals = [0] * classifier.num_classes
    for part in parts:
        for cid in range(classifier.num_classes):
            totals[cid] += int(part[cid])
    return _vector(host, classifier, totals)


def census(host: Graph, classifier: Classifier, engine: str = "auto", jobs: int | None = None) -> CountVector:
    if engine == "auto":
        engine = "subset" if math.comb(host.order, classifier.order) <= 5000 else "extend"
    if engine == "subset":
        return census_subsets(host, classifier)
    if engine == "extend":
        return census_extend(host, classifier, jobs)
    raise ValueError(f"unknown engine {engine!r}")


def count_polygons(host: Graph, max_i: int = 7) -> PolygonCounts:
    """Number of vertex subsets of size 3..max_i inducing a chordless cycle."""
    if not 3 <= max_i <= 7:
        raise ValueError("max_i must be in [3, 7]")
    out = np.zeros(max_i + 1, dtype=np.int64)
    if host.order >= 3:
        roots = np.arange(host.order, dtype=np.int64)
        _kernels.chordless_cycles(host.words(), roots, max_i, out)
    return PolygonCounts(**{f"p{i}": int(out[i]) for i in range(3, max_i + 1)})
