"""Bit-packed graphs, the graph6 codec, canonical keys and local predicates.

Every graph stores one Python-int neighbor mask per vertex (bit ``j`` of
``rows[i]`` is set iff ``i ~ j``). Small graphs (order <= 8) additionally have
a *code*: the upper-triangle adjacency bits read row-major with pair (0, 1) as
bit 0. For order 7 that is a 21-bit integer used to index the classifier table.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_SMALL_ORDER = 8
MAX_HOST_ORDER = 4096
GRAPH6_HEADER = ">>graph6<<"


class GraphError(ValueError):
    """Invalid graph data or an argument outside an operation's domain."""


class Graph6Error(GraphError):
    """Malformed graph6 record."""


@dataclass(frozen=True)
class Graph:
    order: int
    rows: tuple[int, ...]
    name: str | None = field(default=None, compare=False)

    max_order = MAX_HOST_ORDER

    def __post_init__(self) -> None:
        if not 1 <= self.order <= self.max_order:
            raise GraphError(
                f"{type(self).__name__} order must be in [1, {self.max_order}], got {self.order}"
            )
        if len(self.rows) != self.order:
            raise GraphError(f"expected {self.order} adjacency rows, got {len(self.rows)}")
        full = (1 << self.order) - 1
        for i, row in enumerate(self.rows):
            if row < 0 or row & ~full:
                raise GraphError(f"row {i} has bits at positions >= order")
            if (row >> i) & 1:
                raise GraphError(f"self-loop at vertex {i}")
            r = row
            while r:
                j = (r & -r).bit_length() - 1
                if not (self.rows[j] >> i) & 1:
                    raise GraphError(f"asymmetric adjacency between {i} and {j}")
                r &= r - 1

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]], **kw):
        rows = [0] * order
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < order and 0 <= v < order):
                raise GraphError(f"edge ({u}, {v}) out of range for order {order}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(order, tuple(rows), **kw)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.rows[v]))

    @property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.rows):
            for v in _bits(row >> (u + 1)):
                yield u, u + 1 + v

    def induced(self, vertices: Sequence[int]) -> SmallGraph:
        """The induced subgraph on ``vertices``, relabeled 0..m-1 in the given order."""
        pos = {v: i for i, v in enumerate(vertices)}
        if len(pos) != len(vertices):
            raise GraphError("repeated vertex in induced subgraph selection")
        rows = []
        for v in vertices:
            row = 0
            for j in _bits(self.rows[v]):
                i = pos.get(j)
                if i is not None:
                    row |= 1 << i
            rows.append(row)
        return SmallGraph(len(vertices), tuple(rows))

    def relabel(self, perm: Sequence[int]):
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        rows = [0] * self.order
        for v, row in enumerate(self.rows):
            new = 0
            for j in _bits(row):
                new |= 1 << perm[j]
            rows[perm[v]] = new
        return type(self)(self.order, tuple(rows))

    def is_connected(self) -> bool:
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= self.rows[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.order) - 1

    def words(self) -> np.ndarray:
        """Adjacency as an ``(order, ceil(order/64))`` uint64 array (read-only)."""
        cached = self.__dict__.get("_words")
        if cached is None:
            nwords = (self.order + 63) // 64
            cached = np.zeros((self.order, nwords), dtype=np.uint64)
            mask = (1 << 64) - 1
            for v, row in enumerate(self.rows):
                for w in range(nwords):
                    cached[v, w] = (row >> (64 * w)) & mask
            cached.setflags(write=False)
            object.__setattr__(self, "_words", cached)
        return cached


@dataclass(frozen=True)
class SmallGraph(Graph):
    max_order = MAX_SMALL_ORDER

    @property
    def code(self) -> int:
        return graph_code(self.order, self.rows)

    @classmethod
    def from_code(cls, order: int, code: int) -> SmallGraph:
        rows = [0] * order
        for b, (i, j) in enumerate(pair_list(order)):
            if (code >> b) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        return cls(order, tuple(rows))


@dataclass(frozen=True)
class HostGraph(Graph):
    max_order = MAX_HOST_ORDER


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@lru_cache(maxsize=None)
def pair_list(order: int) -> tuple[tuple[int, int], ...]:
    """Vertex pairs in code order: row-major upper triangle."""
    return tuple(itertools.combinations(range(order), 2))


def graph_code(order: int, rows: Sequence[int]) -> int:
    code = 0
    for b, (i, j) in enumerate(pair_list(order)):
        if (rows[i] >> j) & 1:
            code |= 1 << b
    return code


def as_small(g: Graph) -> SmallGraph:
    if isinstance(g, SmallGraph):
        return g
    return SmallGraph(g.order, g.rows)


def as_host(g: Graph, name: str | None = None) -> HostGraph:
    if isinstance(g, HostGraph) and name is None:
        return g
    return HostGraph(g.order, g.rows, name=name if name is not None else g.name)


# --------------------------------------------------------------------------
# graph6


def _encode_order(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise GraphError(f"order {n} too large for graph6 encoding")


def emit_graph6(g: Graph) -> str:
    """Encode ``g`` as a header-free graph6 record using the shortest order field."""
    out = [_encode_order(g.order)]
    acc = 0
    nbits = 0
    for j in range(1, g.order):
        for i in range(j):
            acc = (acc << 1) | ((g.rows[i] >> j) & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def parse_graph6(text: str) -> SmallGraph | HostGraph:
    """Decode one graph6 record.

    Returns a :class:`SmallGraph` for order <= 8 and a :class:`HostGraph`
    otherwise. Raises :class:`Graph6Error` on any malformed input.
    """
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise Graph6Error("empty graph6 record")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside graph6 range [63, 126]")
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] < 63:
        n, body = vals[0], vals[1:]
    elif len(vals) >= 2 and vals[1] == 63:
        raise Graph6Error("order > 4096 (8-byte order field)")
    elif len(vals) >= 4:
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        if n < 63:
            raise Graph6Error("malformed length field: non-minimal three-byte order")
        body = vals[4:]
    else:
        raise Graph6Error("malformed length field: truncated")
    if n == 0:
        raise Graph6Error("graphs of order 0 are not supported")
    if n > MAX_HOST_ORDER:
        raise Graph6Error(f"order {n} > {MAX_HOST_ORDER}")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(
            f"malformed body: expected {(nbits + 5) // 6} data bytes for order {n}, got {len(body)}"
        )
    pad = len(body) * 6 - nbits
    if pad and body[-1] & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits")

    rows = [0] * n
    bit = 0
    for j in range(1, n):
        for i in range(j):
            if (body[bit // 6] >> (5 - bit % 6)) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            bit += 1
    cls = SmallGraph if n <= MAX_SMALL_ORDER else HostGraph
    return cls(n, tuple(rows))


def read_graph6_file(path, all_records: bool = False) -> list[Graph]:
    """Parse the first (or every) non-blank record of a graph6 file."""
    graphs = []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            if not line.strip():
                continue
            graphs.append(parse_graph6(line))
            if not all_records:
                break
    if not graphs:
        raise Graph6Error(f"{path}: no graph6 records")
    return graphs


# --------------------------------------------------------------------------
# canonical form


@dataclass(frozen=True, order=True)
class CanonKey:
    """Isomorphism-class key: minimal upper-triangle bit sequence over relabelings.

    ``value`` holds the sequence as an integer whose most significant of the
    ``order*(order-1)/2`` bits is pair (0, 1), so integer order equals
    lexicographic order of the bit sequence.
    """

    order: int
    value: int

    @property
    def bits(self) -> str:
        width = self.order * (self.order - 1) // 2
        return format(self.value, f"0{width}b") if width else ""

    def to_graph(self) -> SmallGraph:
        return SmallGraph.from_code(self.order, code_from_sequence(self.order, self.value))


def sequence_from_code(order: int, code: int) -> int:
    """Bit-reverse a code (pair (0,1) at bit 0) into sequence order (pair (0,1) first)."""
    width = order * (order - 1) // 2
    return int(format(code, f"0{width}b")[::-1], 2) if width else 0


code_from_sequence = sequence_from_code


@lru_cache(maxsize=None)
def code_permutation_table(order: int) -> np.ndarray:
    """``table[p, b]`` = bit position that code bit ``b`` moves to under permutation ``p``.

    Permutations are enumerated in :func:`itertools.permutations` order.
    """
    pairs = pair_list(order)
    index = {}
    for b, (i, j) in enumerate(pairs):
        index[i, j] = index[j, i] = b
    perms = np.array(list(itertools.permutations(range(order))), dtype=np.int64).reshape(
        math.factorial(order), order
    )
    table = np.empty((len(perms), len(pairs)), dtype=np.int64)
    for b, (i, j) in enumerate(pairs):
        pi, pj = perms[:, i], perms[:, j]
        lo, hi = np.minimum(pi, pj), np.maximum(pi, pj)
        # row-major upper-triangle index of (lo, hi)
        table[:, b] = lo * (2 * order - lo - 1) // 2 + (hi - lo - 1)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def _sequence_weights(order: int) -> np.ndarray:
    width = order * (order - 1) // 2
    return (np.int64(1) << (width - 1 - np.arange(width, dtype=np.int64))).astype(np.int64)


def relabeled_codes(order: int, code: int) -> np.ndarray:
    """Codes of all ``order!`` relabelings of the graph with the given code."""
    table = code_permutation_table(order)
    width = table.shape[1]
    present = np.array([(code >> b) & 1 for b in range(width)], dtype=np.int64)
    if not width:
        return np.zeros(table.shape[0], dtype=np.int64)
    return ((present[None, :] << table)).sum(axis=1)


def code_to_sequence_array(order: int, codes: np.ndarray) -> np.ndarray:
    width = order * (order - 1) // 2
    out = np.zeros(codes.shape, dtype=np.int64)
    for b in range(width):
        out |= ((codes >> b) & 1) << (width - 1 - b)
    return out


@lru_cache(maxsize=1 << 16)
def _canon_value(order: int, code: int) -> int:
    images = relabeled_codes(order, code)
    return int(code_to_sequence_array(order, images).min())


def canonical_form(g: Graph) -> CanonKey:
    """Canonical key of a graph on at most 8 vertices (exhaustive minimization)."""
    if g.order > MAX_SMALL_ORDER:
        raise GraphError(f"canonical_form supports order <= {MAX_SMALL_ORDER}, got {g.order}")
    return CanonKey(g.order, _canon_value(g.order, graph_code(g.order, g.rows)))


# --------------------------------------------------------------------------
# predicates


def is_hamiltonian(g: Graph) -> bool:
    """Spanning-cycle test by subset dynamic programming over paths from vertex 0."""
    n = g.order
    if n < 3:
        raise GraphError("Hamiltonicity is defined here for order >= 3")
    if n > 20:
        raise GraphError("is_hamiltonian is limited to order <= 20")
    full = (1 << n) - 1
    # ends[mask] = bitmask of vertices v such that a path 0 -> v covers exactly mask
    ends = [0] * (1 << n)
    ends[1] = 1
    for mask in range(1, 1 << n, 2):
        e = ends[mask]
        if not e:
            continue
        for v in _bits(e):
            nxt = g.rows[v] & ~mask
            for u in _bits(nxt):
                ends[mask | (1 << u)] |= 1 << u
    return bool(ends[full] & g.rows[0])


def admissible(g: Graph) -> bool:
    """True iff no adjacent pair shares more than 1 and no non-adjacent pair more than 2 neighbors."""
    rows = g.rows
    for i in range(g.order):
        for j in range(i + 1, g.order):
            common = (rows[i] & rows[j]).bit_count()
            if common > (1 if (rows[i] >> j) & 1 else 2):
                return False
    return True
