# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: grid pair search, union-find, dense Prim, vertex-disjoint paths.

The API mirrors ``_kernels_py`` exactly; distances are evaluated with the same
operation order so both backends return bit-identical values.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, floor
from libc.string cimport memcpy

cnp.import_array()

BACKEND = "cython"

ctypedef cnp.intp_t idx_t

cdef idx_t MAX_CELLS = 1 << 21


def _grid_setup(const double[:, ::1] pts, double r):
    cdef idx_t n = pts.shape[0]
    lo = np.min(np.asarray(pts), axis=0)
    hi = np.max(np.asarray(pts), axis=0)
    cell = r
    while True:
        dims = (np.floor((hi - lo) / cell) + 1).astype(np.intp)
        if int(dims[0]) * int(dims[1]) * int(dims[2]) <= max(MAX_CELLS, 8 * n):
            break
        cell *= 1.5
    return lo, cell, dims


def grid_pairs(const double[:, ::1] pts, double r):
    """All pairs ``i < j`` with ``|p_i - p_j| <= r`` via a uniform grid of cell size >= r."""
    cdef idx_t n = pts.shape[0]
    if n < 2:
        return (np.empty(0, np.intp), np.empty(0, np.intp), np.empty(0, np.float64))
    lo_a, cell, dims_a = _grid_setup(pts, r)
    cdef double lx = lo_a[0], ly = lo_a[1], lz = lo_a[2]
    cdef double inv = 1.0 / cell
    cdef idx_t nx = dims_a[0], ny = dims_a[1], nz = dims_a[2]
    cdef idx_t ncell = nx * ny * nz
    cdef idx_t[::1] cx = np.empty(n, np.intp)
    cdef idx_t[::1] cy = np.empty(n, np.intp)
    cdef idx_t[::1] cz = np.empty(n, np.intp)
    cdef idx_t[::1] start = np.zeros(ncell + 1, np.intp)
    cdef idx_t[::1] fill = np.empty(ncell, np.intp)
    cdef idx_t[::1] members = np.empty(n, np.intp)
    cdef idx_t i, j, a, b, c, key, ia, ib, ic, q, m, pos
    cdef int pass_no
    cdef double dx, dy, dz, d

    for i in range(n):
        a = <idx_t>floor((pts[i, 0] - lx) * inv)
        b = <idx_t>floor((pts[i, 1] - ly) * inv)
        c = <idx_t>floor((pts[i, 2] - lz) * inv)
        if a >= nx: a = nx - 1
        if b >= ny: b = ny - 1
        if c >= nz: c = nz - 1
        cx[i] = a; cy[i] = b; cz[i] = c
        start[(a * ny + b) * nz + c + 1] += 1
    for key in range(ncell):
        start[key + 1] += start[key]
        fill[key] = start[key]
    for i in range(n):
        key = (cx[i] * ny + cy[i]) * nz + cz[i]
        members[fill[key]] = i
        fill[key] += 1

    cdef idx_t[::1] oi = np.empty(0, np.intp)
    cdef idx_t[::1] oj = np.empty(0, np.intp)
    cdef double[::1] od = np.empty(0, np.float64)
    m = 0
    for pass_no in range(2):
        pos = 0
        for i in range(n):
            for ia in range(cx[i] - 1, cx[i] + 2):
                if ia < 0 or ia >= nx:
                    continue
                for ib in range(cy[i] - 1, cy[i] + 2):
                    if ib < 0 or ib >= ny:
                        continue
                    for ic in range(cz[i] - 1, cz[i] + 2):
                        if ic < 0 or ic >= nz:
                            continue
                        key = (ia * ny + ib) * nz + ic
                        for q in range(start[key], start[key + 1]):
                            j = members[q]
                            if j <= i:
                                continue
                            dx = pts[i, 0] - pts[j, 0]
                            dy = pts[i, 1] - pts[j, 1]
                            dz = pts[i, 2] - pts[j, 2]
                            d = sqrt(dx * dx + dy * dy + dz * dz)
                            if d <= r:
                                if pass_no == 1:
                                    oi[pos] = i
                                    oj[pos] = j
                                    od[pos] = d
                                pos += 1
        if pass_no == 0:
            m = pos
            oi = np.empty(m, np.intp)
            oj = np.empty(m, np.intp)
            od = np.empty(m, np.float64)
    return np.asarray(oi), np.asarray(oj), np.asarray(od)


cdef inline idx_t _find(idx_t[::1] parent, idx_t x) nogil:
    cdef idx_t root = x, nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


def bottleneck_edge(idx_t n, const idx_t[::1] ei, const idx_t[::1] ej):
    """Index of the edge whose addition (in the given order) connects all ``n`` vertices.

    Returns -1 if the edges never connect the graph.
    """
    cdef idx_t[::1] parent = np.arange(n, dtype=np.intp)
    cdef idx_t[::1] size = np.ones(n, dtype=np.intp)
    cdef idx_t comps = n, e, a, b, found = -1
    if n <= 1:
        return -1
    with nogil:
        for e in range(ei.shape[0]):
            a = _find(parent, ei[e])
            b = _find(parent, ej[e])
            if a == b:
                continue
            if size[a] < size[b]:
                a, b = b, a
            parent[b] = a
            size[a] += size[b]
            comps -= 1
            if comps == 1:
                found = e
                break
    return found


def prim_longest_edge(const double[:, ::1] pts):
    """Longest edge of the Euclidean minimum spanning tree (dense Prim, O(n^2))."""
    cdef idx_t n = pts.shape[0]
    cdef double[::1] key = np.full(n, np.inf)
    cdef char[::1] done = np.zeros(n, np.int8)
    cdef idx_t it, u, w, best
    cdef double longest = 0.0, dx, dy, dz, d, bk
    if n < 2:
        raise ValueError("need at least two points")
    with nogil:
        u = 0
        done[0] = 1
        for it in range(n - 1):
            best = -1
            bk = 1e308
            for w in range(n):
                if done[w]:
                    continue
                dx = pts[u, 0] - pts[w, 0]
                dy = pts[u, 1] - pts[w, 1]
                dz = pts[u, 2] - pts[w, 2]
                d = sqrt(dx * dx + dy * dy + dz * dz)
                if d < key[w]:
                    key[w] = d
                if key[w] < bk:
                    bk = key[w]
                    best = w
            done[best] = 1
            if bk > longest:
                longest = bk
            u = best
    return longest


cdef class _SplitNetwork:
    """Unit-capacity split-vertex network of an undirected graph."""
    cdef idx_t nnode
    cdef idx_t[::1] off
    cdef idx_t[::1] head
    cdef idx_t[::1] rev
    cdef char[::1] cap0
    cdef char[::1] cap
    cdef idx_t[::1] parent_arc
    cdef idx_t[::1] queue
    cdef idx_t[::1] seen
    cdef idx_t stamp

    def __init__(self, idx_t n, const idx_t[::1] indptr, const idx_t[::1] indices):
        cdef idx_t u, q, w, a, b, narc
        self.nnode = 2 * n
        # node 2u = u_in, 2u+1 = u_out; arcs in->out, out->w_in, plus reverses
        deg = np.repeat(1 + np.diff(np.asarray(indptr)), 2)
        off = np.zeros(2 * n + 1, np.intp)
        np.cumsum(deg, out=off[1:])
        narc = off[2 * n]
        self.off = off
        self.head = np.empty(narc, np.intp)
        self.rev = np.empty(narc, np.intp)
        self.cap0 = np.zeros(narc, np.int8)
        self.cap = np.zeros(narc, np.int8)
        cdef idx_t[::1] pos = off[:2 * n].copy()
        for u in range(n):
            a = pos[2 * u]; pos[2 * u] += 1
            b = pos[2 * u + 1]; pos[2 * u + 1] += 1
            self.head[a] = 2 * u + 1; self.cap0[a] = 1; self.rev[a] = b
            self.head[b] = 2 * u; self.cap0[b] = 0; self.rev[b] = a
            for q in range(indptr[u], indptr[u + 1]):
                w = indices[q]
                a = pos[2 * u + 1]; pos[2 * u + 1] += 1
                b = pos[2 * w]; pos[2 * w] += 1
                self.head[a] = 2 * w; self.cap0[a] = 1; self.rev[a] = b
                self.head[b] = 2 * u + 1; self.cap0[b] = 0; self.rev[b] = a
        self.parent_arc = np.empty(2 * n, np.intp)
        self.queue = np.empty(2 * n, np.intp)
        self.seen = np.zeros(2 * n, np.intp)
        self.stamp = 0

    cdef idx_t disjoint_paths(self, idx_t s, idx_t t, idx_t limit) nogil:
        cdef idx_t src = 2 * s + 1, snk = 2 * t, flow = 0
        cdef idx_t qh, qt, x, a, y
        memcpy(&self.cap[0], &self.cap0[0], self.cap.shape[0])
        while flow < limit:
            self.stamp += 1
            self.seen[src] = self.stamp
            self.queue[0] = src
            qh = 0
            qt = 1
            while qh < qt and self.seen[snk] != self.stamp:
                x = self.queue[qh]
                qh += 1
                for a in range(self.off[x], self.off[x + 1]):
                    if self.cap[a] > 0:
                        y = self.head[a]
                        if self.seen[y] != self.stamp:
                            self.seen[y] = self.stamp
                            self.parent_arc[y] = a
                            self.queue[qt] = y
                            qt += 1
            if self.seen[snk] != self.stamp:
                break
            y = snk
            while y != src:
                a = self.parent_arc[y]
                self.cap[a] -= 1
                self.cap[self.rev[a]] += 1
                y = self.head[self.rev[a]]
            flow += 1
        return flow


def local_connectivity(idx_t n, const idx_t[::1] indptr, const idx_t[::1] indices,
                       idx_t s, idx_t t, idx_t limit):
    """Number of internally vertex-disjoint s-t paths, capped at ``limit``."""
    net = _SplitNetwork(n, indptr, indices)
    return (<_SplitNetwork>net).disjoint_paths(s, t, limit)


def is_k_connected(idx_t n, const idx_t[::1] indptr, const idx_t[::1] indices, idx_t k):
    """Decide whether the graph is k-vertex-connected.

    Pairs checked: a fixed minimum-degree vertex against each non-neighbour, and
    non-adjacent pairs of its neighbours.
    """
    cdef idx_t u, v, w, x, y, q, p, dmin
    if n <= k:
        return False
    if k <= 0:
        return True
    v = 0
    dmin = indptr[1] - indptr[0]
    for u in range(1, n):
        if indptr[u + 1] - indptr[u] < dmin:
            dmin = indptr[u + 1] - indptr[u]
            v = u
    if dmin < k:
        return False
    cdef idx_t[::1] mark = np.zeros(n, np.intp)
    net = _SplitNetwork(n, indptr, indices)
    cdef _SplitNetwork sn = <_SplitNetwork>net
    for q in range(indptr[v], indptr[v + 1]):
        mark[indices[q]] = 1
    mark[v] = 1
    for w in range(n):
        if not mark[w] and sn.disjoint_paths(v, w, k) < k:
            return False
    cdef idx_t[::1] adj = np.full(n, -1, np.intp)
    for q in range(indptr[v], indptr[v + 1]):
        x = indices[q]
        for p in range(indptr[x], indptr[x + 1]):
            adj[indices[p]] = x
        for p in range(q + 1, indptr[v + 1]):
            y = indices[p]
            if adj[y] != x and sn.disjoint_paths(x, y, k) < k:
                return False
    return True
