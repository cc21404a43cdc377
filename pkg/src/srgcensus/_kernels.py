"""Numba kernels over bit-packed adjacency (rows of uint64 words).

All kernels are ``nogil`` so the census can fan out over threads.
"""

import numpy as np
from numba import njit

_ONE = np.uint64(1)
_ALL = np.uint64(0xFFFFFFFFFFFFFFFF)
_DEBRUIJN = np.uint64(0x03F79D71B4CB0A89)
_DEBRUIJN_INDEX = np.array(
    [
        0, 1, 48, 2, 57, 49, 28, 3, 61, 58, 50, 42, 38, 29, 17, 4,
        62, 55, 59, 36, 53, 51, 43, 22, 45, 39, 33, 30, 24, 18, 12, 5,
        63, 47, 56, 27, 60, 41, 37, 16, 54, 35, 52, 21, 44, 32, 23, 11,
        46, 26, 40, 15, 34, 20, 31, 10, 25, 14, 19, 9, 13, 8, 7, 6,
    ],
    dtype=np.int64,
)


@njit(inline="always")
def _ctz(x):
    # x != 0; isolate lowest bit then de Bruijn lookup
    return _DEBRUIJN_INDEX[((x & (~x + _ONE)) * _DEBRUIJN) >> np.uint64(58)]


@njit(inline="always")
def _test(adj, u, v):
    return (adj[u, v >> 6] >> np.uint64(v & 63)) & _ONE


@njit(inline="always")
def _fill_above(gt, r):
    # gt[i] = bits of word i at positions > r
    for i in range(gt.shape[0]):
        lo = i * 64
        if r + 1 <= lo:
            gt[i] = _ALL
        elif r + 1 >= lo + 64:
            gt[i] = np.uint64(0)
        else:
            gt[i] = _ALL << np.uint64(r + 1 - lo)


@njit(nogil=True, cache=True)
def esu_count(adj, roots, table, pair_index, size, out):
    """Add to ``out[table[code]]`` once per connected induced ``size``-set whose least vertex is a root.

    Rooted extension with exclusive neighborhoods: a vertex joins the
    extension set only if it is above the root and not already in or next to
    the current subset, so every connected set is reached exactly once.
    ``out`` has one slot per table value (0..255).
    """
    n, nw = adj.shape
    ext = np.zeros((size, nw), np.uint64)
    closed = np.zeros((size, nw), np.uint64)
    gt = np.zeros(nw, np.uint64)
    verts = np.zeros(size, np.int64)
    codes = np.zeros(size, np.int64)
    leaf = size - 2
    for r in roots:
        _fill_above(gt, r)
        verts[0] = r
        codes[0] = 0
        for i in range(nw):
            closed[0, i] = adj[r, i]
            ext[0, i] = adj[r, i] & gt[i]
        closed[0, r >> 6] |= _ONE << np.uint64(r & 63)
        d = 0
        while d >= 0:
            if d == leaf:
                base = codes[d]
                for i in range(nw):
                    word = ext[d, i]
                    while word:
                        w = i * 64 + _ctz(word)
                        word &= word - _ONE
                        code = base
                        for j in range(size - 1):
                            if _test(adj, w, verts[j]):
                                code |= np.int64(1) << pair_index[j, size - 1]
                        out[table[code]] += 1
                d -= 1
                continue
            w = -1
            for i in range(nw):
                word = ext[d, i]
                if word:
                    w = i * 64 + _ctz(word)
                    ext[d, i] = word & (word - _ONE)
                    break
            if w < 0:
                d -= 1
                continue
            code = codes[d]
            for j in range(d + 1):
                if _test(adj, w, verts[j]):
                    code |= np.int64(1) << pair_index[j, d + 1]
            verts[d + 1] = w
            codes[d + 1] = code
            for i in range(nw):
                ext[d + 1, i] = ext[d, i] | (adj[w, i] & ~closed[d, i] & gt[i])
                closed[d + 1, i] = closed[d, i] | adj[w, i]
            closed[d + 1, w >> 6] |= _ONE << np.uint64(w & 63)
            d += 1


@njit(nogil=True, cache=True)
def chordless_cycles(adj, roots, max_len, out):
    """Add to ``out[L]`` the number of chordless L-cycles (3 <= L <= max_len) whose least vertex is a root.

    Grows chordless paths x0..xm above x0 = root. A candidate next vertex
    must be adjacent to xm and to no interior vertex x1..x(m-1); adjacency to
    x0 closes a cycle. Each cycle is seen in both directions and kept once
    via x1 < last.
    """
    n, nw = adj.shape
    path = np.zeros(max_len, np.int64)
    # blocked[m]: path vertices plus neighbors of interior vertices x1..x(m-1)
    blocked = np.zeros((max_len, nw), np.uint64)
    cand = np.zeros((max_len, nw), np.uint64)
    gt = np.zeros(nw, np.uint64)
    for r in roots:
        _fill_above(gt, r)
        path[0] = r
        for i in range(nw):
            blocked[0, i] = np.uint64(0)
            cand[0, i] = adj[r, i] & gt[i]
        blocked[0, r >> 6] |= _ONE << np.uint64(r & 63)
        m = 0
        while m >= 0:
            u = -1
            for i in range(nw):
                word = cand[m, i]
                if word:
                    u = i * 64 + _ctz(word)
                    cand[m, i] = word & (word - _ONE)
                    break
            if u < 0:
                m -= 1
                continue
            if m >= 1 and _test(adj, u, r):
                if u > path[1]:
                    out[m + 2] += 1
                continue
            if m + 3 > max_len:
                # the shortest cycle through u would exceed max_len
                continue
            last = path[m]
            path[m + 1] = u
            for i in range(nw):
                b = blocked[m, i]
                if m >= 1:
                    b |= adj[last, i]
                blocked[m + 1, i] = b
            blocked[m + 1, u >> 6] |= _ONE << np.uint64(u & 63)
            for i in range(nw):
                cand[m + 1, i] = adj[u, i] & gt[i] & ~blocked[m + 1, i]
            m += 1
