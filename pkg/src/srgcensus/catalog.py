"""Isomorph-free catalogs of admissible small graphs and the order-7 classifier."""

from __future__ import annotations

import hashlib
import itertools
import logging
import math
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .graph import (
    CanonKey,
    GraphError,
    SmallGraph,
    code_to_sequence_array,
    emit_graph6,
    pair_list,
    relabeled_codes,
)

log = logging.getLogger(__name__)

CLASSIFIER_ORDER = 7
NONE_ID = 255
CACHE_ENV = "SRGCENSUS_CACHE_DIR"
_MAGIC = b"SRGCLS1\n"


@dataclass(frozen=True)
class CatalogEntry:
    id: int
    graph: SmallGraph
    canon: CanonKey
    edge_count: int
    hamiltonian: bool
    automorphism_count: int

    @property
    def graph6(self) -> str:
        return emit_graph6(self.graph)


@dataclass(frozen=True)
class Catalog:
    order: int
    hamiltonian_only: bool
    entries: tuple[CatalogEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> CatalogEntry:
        return self.entries[i]

    @property
    def content_hash(self) -> str:
        h = hashlib.sha256(f"{self.order}:{int(self.hamiltonian_only)}:".encode())
        h.update(",".join(e.graph6 for e in self.entries).encode())
        return h.hexdigest()

    def find(self, canon: CanonKey) -> CatalogEntry | None:
        for e in self.entries:
            if e.canon == canon:
                return e
        return None

    def cycle_id(self) -> int | None:
        """Id of the entry isomorphic to the spanning cycle C_order, if present."""
        for e in self.entries:
            if e.edge_count == self.order and all(
                e.graph.degree(v) == 2 for v in range(self.order)
            ) and e.graph.is_connected():
                return e.id
        return None

    def to_json(self) -> list[dict]:
        return [
            {
                "id": e.id,
                "graph6": e.graph6,
                "edges": e.edge_count,
                "hamiltonian": e.hamiltonian,
                "automorphisms": e.automorphism_count,
            }
            for e in self.entries
        ]


# --------------------------------------------------------------------------
# vectorized predicates over every labeled graph of a given order


def _vertex_rows(order: int, codes: np.ndarray) -> list[np.ndarray]:
    rows = [np.zeros(codes.shape, dtype=np.int64) for _ in range(order)]
    for b, (i, j) in enumerate(pair_list(order)):
        bit = (codes >> b) & 1
        rows[i] |= bit << j
        rows[j] |= bit << i
    return rows


def admissible_mask(order: int, codes: np.ndarray) -> np.ndarray:
    rows = _vertex_rows(order, codes)
    popcount = np.array([bin(x).count("1") for x in range(1 << order)], dtype=np.int8)
    ok = np.ones(codes.shape, dtype=bool)
    for b, (i, j) in enumerate(pair_list(order)):
        common = popcount[rows[i] & rows[j]]
        limit = np.where((codes >> b) & 1, 1, 2)
        ok &= common <= limit
    return ok


@lru_cache(maxsize=None)
def spanning_cycle_codes(order: int) -> np.ndarray:
    """Codes of the (order-1)!/2 labeled spanning cycles of K_order."""
    index = {p: b for b, p in enumerate(pair_list(order))}
    out = set()
    for rest in itertools.permutations(range(1, order)):
        if rest[0] > rest[-1]:
            continue
        cyc = (0, *rest)
        code = 0
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            code |= 1 << index[min(a, b), max(a, b)]
        out.add(code)
    return np.array(sorted(out), dtype=np.int64)


def hamiltonian_mask(order: int, codes: np.ndarray) -> np.ndarray:
    ok = np.zeros(codes.shape, dtype=bool)
    for cyc in spanning_cycle_codes(order):
        ok |= (codes & cyc) == cyc
    return ok


# --------------------------------------------------------------------------
# generation


def generate_catalog(order: int, hamiltonian_only: bool) -> Catalog:
    """All isomorphism classes of admissible graphs of ``order`` vertices.

    Sweeps every labeled graph, keeps the admissible ones (and, with
    ``hamiltonian_only``, those containing a spanning cycle), then groups
    them into orbits under vertex relabeling.
    """
    if not 3 <= order <= 7:
        raise GraphError(f"catalog order must be in [3, 7], got {order}")
    return _generate(order, hamiltonian_only)


@lru_cache(maxsize=None)
def _generate(order: int, hamiltonian_only: bool) -> Catalog:
    width = order * (order - 1) // 2
    codes = np.arange(1 << width, dtype=np.int64)
    keep = admissible_mask(order, codes)
    cand = codes[keep]
    ham = hamiltonian_mask(order, cand)
    if hamiltonian_only:
        cand = cand[ham]
        ham = ham[ham]
    ham_of = dict(zip(cand.tolist(), ham.tolist())) if not hamiltonian_only else None

    labeled = np.zeros(1 << width, dtype=bool)
    classes = []
    group = math.factorial(order)
    pos = 0
    chunk = 1 << 14
    while pos < len(cand):
        hits = np.flatnonzero(~labeled[cand[pos:pos + chunk]])
        if not hits.size:
            pos += chunk
            continue
        pos += int(hits[0])
        code = int(cand[pos])
        images = np.unique(relabeled_codes(order, code))
        labeled[images] = True
        seq = int(code_to_sequence_array(order, images).min())
        hamiltonian = True if hamiltonian_only else ham_of[code]
        classes.append((seq, group // len(images), hamiltonian))

    graphs = [(CanonKey(order, seq).to_graph(), seq, aut, h) for seq, aut, h in classes]
    graphs.sort(key=lambda t: (t[0].edge_count, t[1]))
    entries = tuple(
        CatalogEntry(
            id=i,
            graph=g,
            canon=CanonKey(order, seq),
            edge_count=g.edge_count,
            hamiltonian=h,
            automorphism_count=aut,
        )
        for i, (g, seq, aut, h) in enumerate(graphs)
    )
    return Catalog(order, hamiltonian_only, entries)


def hamiltonian_catalog() -> Catalog:
    return generate_catalog(CLASSIFIER_ORDER, True)


# --------------------------------------------------------------------------
# classifier


@dataclass(frozen=True)
class Classifier:
    """Lookup table from every labeled 7-vertex code to a catalog id (255 = none)."""

    order: int
    table: np.ndarray
    catalog_hash: str
    num_classes: int

    def __call__(self, g: SmallGraph) -> int | None:
        return classify(self, g)


def _table_from_catalog(catalog: Catalog) -> np.ndarray:
    width = catalog.order * (catalog.order - 1) // 2
    table = np.full(1 << width, NONE_ID, dtype=np.uint8)
    for e in catalog.entries:
        table[relabeled_codes(catalog.order, e.graph.code)] = e.id
    return table


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "srgcensus"


def _cache_path(catalog: Catalog) -> Path:
    return cache_dir() / f"classifier-{catalog.order}-{catalog.content_hash[:16]}.bin"


def save_table(path: Path, order: int, catalog_hash: str, table: np.ndarray) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(f".tmp{os.getpid()}")
    with open(tmp, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(bytes([order]))
        fh.write(catalog_hash.encode("ascii"))
        fh.write(np.ascontiguousarray(table, dtype=np.uint8).tobytes())
    os.replace(tmp, path)


def load_table(path: Path, order: int, catalog_hash: str) -> np.ndarray | None:
    size = 1 << (order * (order - 1) // 2)
    try:
        raw = path.read_bytes()
    except OSError:
        return None
    head = _MAGIC + bytes([order]) + catalog_hash.encode("ascii")
    if not raw.startswith(head) or len(raw) != len(head) + size:
        return None
    return np.frombuffer(raw, dtype=np.uint8, offset=len(head))


def build_classifier(catalog: Catalog, use_cache: bool = True) -> Classifier:
    """Build (or reload from the cache directory) the classification table for ``catalog``."""
    if catalog.order != CLASSIFIER_ORDER or not catalog.hamiltonian_only:
        raise GraphError("classifier requires the order-7 Hamiltonian catalog")
    digest = catalog.content_hash
    table = None
    path = _cache_path(catalog)
    if use_cache:
        table = load_table(path, catalog.order, digest)
    if table is None:
        table = _table_from_catalog(catalog)
        if use_cache:
            try:
                save_table(path, catalog.order, digest, table)
            except OSError as exc:
                log.debug("classifier cache not written: %s", exc)
    table = table.copy() if table.flags.writeable else table
    table.setflags(write=False)
    return Classifier(catalog.order, table, digest, len(catalog))


def classify(c: Classifier, g: SmallGraph) -> int | None:
    if g.order != c.order:
        raise GraphError(f"classifier expects order {c.order}, got {g.order}")
    value = int(c.table[g.code])
    return None if value == NONE_ID else value


@lru_cache(maxsize=1)
def default_classifier() -> Classifier:
    return build_classifier(hamiltonian_catalog())

