"""Pure-Python/numpy implementations of the kernels in ``_kernels.pyx``.

Same signatures, same results (distances are computed with the same operation
order). Used when the compiled module is missing or ``RGGRADII_PURE_PYTHON`` is set.
"""
from collections import deque

import numpy as np

BACKEND = "python"

MAX_CELLS = 1 << 21


def _grid_setup(pts, r):
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    cell = r
    while True:
        dims = (np.floor((hi - lo) / cell) + 1).astype(np.intp)
        if int(dims[0]) * int(dims[1]) * int(dims[2]) <= max(MAX_CELLS, 8 * len(pts)):
            return lo, cell, dims
        cell *= 1.5


def grid_pairs(pts, r):
    pts = np.ascontiguousarray(pts, dtype=np.float64)
    n = len(pts)
    if n < 2:
        return np.empty(0, np.intp), np.empty(0, np.intp), np.empty(0, np.float64)
    lo, cell, dims = _grid_setup(pts, r)
    c = np.floor((pts - lo) * (1.0 / cell)).astype(np.intp)
    c = np.minimum(c, dims - 1)
    cells = {}
    for i, key in enumerate(map(tuple, c)):
        cells.setdefault(key, []).append(i)
    cells = {key: np.array(v, dtype=np.intp) for key, v in cells.items()}

    out_i, out_j, out_d = [], [], []
    offsets = [(a, b, e) for a in (-1, 0, 1) for b in (-1, 0, 1) for e in (-1, 0, 1)]
    for (a, b, e), mine in cells.items():
        others = [cells[(a + da, b + db, e + de)] for da, db, de in offsets
                  if (a + da, b + db, e + de) in cells]
        cand = np.concatenate(others)
        ii = np.repeat(mine, len(cand))
        jj = np.tile(cand, len(mine))
        keep = jj > ii
        ii, jj = ii[keep], jj[keep]
        dx = pts[ii, 0] - pts[jj, 0]
        dy = pts[ii, 1] - pts[jj, 1]
        dz = pts[ii, 2] - pts[jj, 2]
        d = np.sqrt(dx * dx + dy * dy + dz * dz)
        ok = d <= r
        out_i.append(ii[ok])
        out_j.append(jj[ok])
        out_d.append(d[ok])
    return np.concatenate(out_i), np.concatenate(out_j), np.concatenate(out_d)


def bottleneck_edge(n, ei, ej):
    if n <= 1:
        return -1
    parent = list(range(n))
    size = [1] * n
    comps = n

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for e, (a, b) in enumerate(zip(ei.tolist(), ej.tolist())):
        a, b = find(a), find(b)
        if a == b:
            continue
        if size[a] < size[b]:
            a, b = b, a
        parent[b] = a
        size[a] += size[b]
        comps -= 1
        if comps == 1:
            return e
    return -1


def prim_longest_edge(pts):
    pts = np.ascontiguousarray(pts, dtype=np.float64)
    n = len(pts)
    if n < 2:
        raise ValueError("need at least two points")
    key = np.full(n, np.inf)
    done = np.zeros(n, bool)
    done[0] = True
    u = 0
    longest = 0.0
    for _ in range(n - 1):
        dx = pts[u, 0] - pts[:, 0]
        dy = pts[u, 1] - pts[:, 1]
        dz = pts[u, 2] - pts[:, 2]
        d = np.sqrt(dx * dx + dy * dy + dz * dz)
        np.minimum(key, d, out=key, where=~done)
        masked = np.where(done, np.inf, key)
        u = int(np.argmin(masked))
        done[u] = True
        longest = max(longest, float(masked[u]))
    return longest


class _SplitNetwork:
    def __init__(self, n, indptr, indices):
        self.n = n
        nbrs = [indices[indptr[u]:indptr[u + 1]].tolist() for u in range(n)]
        # node 2u = u_in, 2u+1 = u_out
        self.arcs = [[] for _ in range(2 * n)]
        self.head, self.cap0, self.rev = [], [], []
        for u in range(n):
            self._add(2 * u, 2 * u + 1)
            for w in nbrs[u]:
                self._add(2 * u + 1, 2 * w)

    def _add(self, x, y):
        a = len(self.head)
        self.head += [y, x]
        self.cap0 += [1, 0]
        self.rev += [a + 1, a]
        self.arcs[x].append(a)
        self.arcs[y].append(a + 1)

    def disjoint_paths(self, s, t, limit):
        src, snk = 2 * s + 1, 2 * t
        cap = list(self.cap0)
        head, rev, arcs = self.head, self.rev, self.arcs
        flow = 0
        while flow < limit:
            parent = {src: -1}
            queue = deque([src])
            while queue and snk not in parent:
                x = queue.popleft()
                for a in arcs[x]:
                    if cap[a] > 0:
                        y = head[a]
                        if y not in parent:
                            parent[y] = a
                            queue.append(y)
            if snk not in parent:
                break
            y = snk
            while y != src:
                a = parent[y]
                cap[a] -= 1
                cap[rev[a]] += 1
                y = head[rev[a]]
            flow += 1
        return flow


def local_connectivity(n, indptr, indices, s, t, limit):
    return _SplitNetwork(n, indptr, indices).disjoint_paths(s, t, limit)


def is_k_connected(n, indptr, indices, k):
    if n <= k:
        return False
    if k <= 0:
        return True
    deg = np.diff(indptr)
    v = int(np.argmin(deg))
    if deg[v] < k:
        return False
    net = _SplitNetwork(n, indptr, indices)
    nv = set(indices[indptr[v]:indptr[v + 1]].tolist())
    for w in range(n):
        if w != v and w not in nv and net.disjoint_paths(v, w, k) < k:
            return False
    nbrs = sorted(nv)
    for q, x in enumerate(nbrs):
        nx = set(indices[indptr[x]:indptr[x + 1]].tolist())
        for y in nbrs[q + 1:]:
            if y not in nx and net.disjoint_paths(x, y, k) < k:
                return False
    return True
