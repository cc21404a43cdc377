"""Strong-regularity checks, reference constructions and seeded test graphs."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .formulas import SrgParams
from .graph import GraphError, HostGraph

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


@dataclass(frozen=True)
class SrgWitness:
    """Evidence that a graph is not strongly regular."""

    reason: str
    vertices: tuple[int, ...]
    observed: int | None = None
    expected: int | None = None

    def as_dict(self) -> dict:
        return {
            "reason": self.reason,
            "vertices": list(self.vertices),
            "observed": self.observed,
            "expected": self.expected,
        }


@dataclass(frozen=True)
class SrgVerdict:
    is_srg: bool
    params: SrgParams | None = None
    witness: SrgWitness | None = None

    def as_dict(self) -> dict:
        out: dict = {"is_srg": self.is_srg}
        if self.params is not None:
            p = self.params
            out["params"] = {"n": p.n, "k": p.k, "lambda": p.lam, "mu": p.mu}
        if self.witness is not None:
            out["witness"] = self.witness.as_dict()
        return out


def common_neighbor_matrix(host: HostGraph) -> np.ndarray:
    a = np.zeros((host.order, host.order), dtype=np.float32)
    for u, v in host.edges():
        a[u, v] = a[v, u] = 1.0
    # float32 sums of at most 4096 unit products are exact
    return (a @ a).astype(np.int64)


def verify_srg(host: HostGraph) -> SrgVerdict:
    """Exact check of regularity and both common-neighbor conditions over all pairs."""
    n = host.order
    if n < 2:
        raise GraphError("verify_srg needs at least 2 vertices")
    degs = host.degrees()
    k = max(degs)
    for v, d in enumerate(degs):
        if d != k:
            return SrgVerdict(False, witness=SrgWitness("not regular", (v,), d, k))
    if k == 0:
        return SrgVerdict(False, witness=SrgWitness("edgeless graph (degenerate)", ()))
    if k == n - 1:
        return SrgVerdict(False, witness=SrgWitness("complete graph (degenerate)", ()))

    common = common_neighbor_matrix(host)
    lam = mu = None
    for u in range(n):
        row = host.rows[u]
        for v in range(u + 1, n):
            c = int(common[u, v])
            if (row >> v) & 1:
                if lam is None:
                    lam = c
                elif c != lam:
                    return SrgVerdict(
                        False, witness=SrgWitness("adjacent pair common neighbors", (u, v), c, lam)
                    )
            else:
                if mu is None:
                    mu = c
                elif c != mu:
                    return SrgVerdict(
                        False,
                        witness=SrgWitness("non-adjacent pair common neighbors", (u, v), c, mu),
                    )
    return SrgVerdict(True, params=SrgParams(n, k, lam, mu))


# --------------------------------------------------------------------------
# constructions


def rook_graph(rows: int, cols: int) -> HostGraph:
    """Cells (r, c) labeled r*cols + c, adjacent when sharing a row or a column."""
    n = rows * cols
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if u // cols == v // cols or u % cols == v % cols
    ]
    return HostGraph.from_edges(n, edges, name=f"rook{rows}x{cols}")


def paley9() -> HostGraph:
    """Paley graph on GF(9) = GF(3)[i]/(i^2 + 1); element a + b*i is labeled 3a + b."""
    elems = [(a, b) for a in range(3) for b in range(3)]

    def mul(x, y):
        return ((x[0] * y[0] - x[1] * y[1]) % 3, (x[0] * y[1] + x[1] * y[0]) % 3)

    squares = {mul(x, x) for x in elems if x != (0, 0)}
    edges = []
    for u, x in enumerate(elems):
        for v in range(u + 1, 9):
            y = elems[v]
            if ((x[0] - y[0]) % 3, (x[1] - y[1]) % 3) in squares:
                edges.append((u, v))
    return HostGraph.from_edges(9, edges, name="paley9")


def paley_prime(p: int) -> HostGraph:
    """Paley graph on Z_p for a prime p = 1 (mod 4)."""
    if p < 5 or p % 4 != 1 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise GraphError(f"paley{p}: need a prime congruent to 1 mod 4")
    squares = {x * x % p for x in range(1, p)}
    edges = [(u, v) for u in range(p) for v in range(u + 1, p) if (v - u) % p in squares]
    return HostGraph.from_edges(p, edges, name=f"paley{p}")


def cycle_graph(m: int) -> HostGraph:
    if m < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return HostGraph.from_edges(m, [(i, (i + 1) % m) for i in range(m)], name=f"cycle{m}")


def path_graph(m: int) -> HostGraph:
    return HostGraph.from_edges(m, [(i, i + 1) for i in range(m - 1)], name=f"path{m}")


def complete_graph(m: int) -> HostGraph:
    return HostGraph.from_edges(
        m, [(u, v) for u in range(m) for v in range(u + 1, m)], name=f"complete{m}"
    )


_NAMED = re.compile(r"^([a-z]+)\(?(\d+)?\)?$")


def construct(name: str) -> HostGraph:
    """Build a named graph: rook3x3, paley9, paley<p>, cycle(m), path(m), complete(m)."""
    key = name.strip().lower()
    if key in ("rook3x3", "rook(3,3)", "rook"):
        return rook_graph(3, 3)
    if key == "paley9":
        return paley9()
    match = _NAMED.match(key)
    if match and match.group(2):
        kind, m = match.group(1), int(match.group(2))
        builders = {
            "paley": paley_prime,
            "cycle": cycle_graph,
            "path": path_graph,
            "complete": complete_graph,
        }
        if kind in builders:
            return builders[kind](m)
    raise GraphError(f"unknown graph name {name!r}")


# --------------------------------------------------------------------------
# seeded generators


class SplitMix64:
    """SplitMix64: state += 0x9E3779B97F4A7C15, then two xor-shift-multiply rounds."""

    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def below(self, m: int) -> int:
        """Integer in [0, m) by multiply-shift."""
        return (self.next() * m) >> 64


def splitmix64_stream(seed: int, count: int) -> np.ndarray:
    """The first ``count`` outputs of :class:`SplitMix64` as a uint64 array."""
    idx = np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & _MASK64) + idx * np.uint64(_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def _as_fraction(p) -> Fraction:
    if isinstance(p, float):
        return Fraction(repr(p))
    return Fraction(p)


def random_graph(order: int, edge_prob, seed: int) -> HostGraph:
    """Independent-edge random graph, reproducible across platforms.

    Vertex pairs are visited in graph6 order ((0,1), (0,2), (1,2), (0,3), ...);
    pair number t is an edge iff the t-th SplitMix64 output x satisfies
    x < ceil(edge_prob * 2**64).
    """
    p = _as_fraction(edge_prob)
    if not 0 <= p <= 1:
        raise GraphError("edge probability must be in [0, 1]")
    if not 1 <= order <= 4096:
        raise GraphError("order must be in [1, 4096]")
    npairs = order * (order - 1) // 2
    threshold = -((-p.numerator << 64) // p.denominator)
    if threshold > _MASK64:
        hit = np.ones(npairs, dtype=bool)
    else:
        hit = splitmix64_stream(seed, npairs) < np.uint64(threshold)
    rows = [0] * order
    t = 0
    flat = hit.tolist()
    for j in range(1, order):
        for i in range(j):
            if flat[t]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            t += 1
    return HostGraph(order, tuple(rows), name=f"gnp({order},{p},{seed})")


def random_regular_graph(order: int, degree: int, seed: int) -> HostGraph:
    """Seeded simple ``degree``-regular graph by random stub pairing with restarts.

    Pairs are drawn uniformly among remaining stubs and rejected if they would
    form a loop or a repeated edge; a dead end restarts the pairing.
    """
    if degree >= order or (order * degree) % 2:
        raise GraphError(f"no simple {degree}-regular graph on {order} vertices")
    rng = SplitMix64(seed)
    while True:
        stubs = [v for v in range(order) for _ in range(degree)]
        rows = [0] * order
        while stubs:
            pick = None
            for _ in range(64):
                i, j = rng.below(len(stubs)), rng.below(len(stubs))
                u, v = stubs[i], stubs[j]
                if u != v and not (rows[u] >> v) & 1:
                    pick = (i, j)
                    break
            if pick is None:
                options = [
                    (i, j)
                    for i in range(len(stubs))
                    for j in range(i + 1, len(stubs))
                    if stubs[i] != stubs[j] and not (rows[stubs[i]] >> stubs[j]) & 1
                ]
                if not options:
                    break
                pick = options[rng.below(len(options))]
            i, j = sorted(pick)
            u, v = stubs[i], stubs[j]
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            stubs[j] = stubs[-1]
            stubs.pop()
            stubs[i] = stubs[-1]
            stubs.pop()
        if not stubs:
            return HostGraph(order, tuple(rows), name=f"regular({order},{degree},{seed})")
