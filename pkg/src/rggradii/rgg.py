"""Random geometric graphs on a uniform grid index.

Closed-ball convention: ``i ~ j`` iff ``|p_i - p_j| <= radius``. Continuous
point distributions make ties a null event, so the limit laws do not depend
on the choice, and it makes critical radii attained pairwise distances.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from ._core import kernels


def as_points(points) -> np.ndarray:
    pts = np.ascontiguousarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise ValueError(f"points must have shape (n, 3), got {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points must be finite")
    return pts


def sorted_pairs(points, radius: float):
    """Pairs ``(i, j, d)`` with ``i < j`` and ``d <= radius``, ordered by ``(d, i, j)``."""
    i, j, d = kernels.grid_pairs(as_points(points), float(radius))
    order = np.lexsort((j, i, d))
    return i[order], j[order], d[order]


def csr_from_edges(n: int, ei, ej):
    """Symmetric CSR adjacency with sorted neighbour lists."""
    src = np.concatenate([ei, ej]).astype(np.intp)
    dst = np.concatenate([ej, ei]).astype(np.intp)
    order = np.lexsort((dst, src))
    indices = np.ascontiguousarray(dst[order])
    indptr = np.zeros(n + 1, dtype=np.intp)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return indptr, indices


@dataclass(frozen=True)
class GeometricGraph:
    points: np.ndarray
    radius: float
    indptr: np.ndarray = field(repr=False)
    indices: np.ndarray = field(repr=False)
    cell_size: float = 0.0

    @property
    def n(self) -> int:
        return len(self.points)

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    @property
    def adjacency(self) -> list[list[int]]:
        return [self.neighbors(i).tolist() for i in range(self.n)]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def edges(self) -> set[tuple[int, int]]:
        return {(i, int(j)) for i in range(self.n) for j in self.neighbors(i) if i < j}

    def num_edges(self) -> int:
        return len(self.indices) // 2


def build_graph(points, radius: float) -> GeometricGraph:
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius}")
    pts = as_points(points)
    if len(pts) < 1:
        raise ValueError("need at least one point")
    i, j, _ = kernels.grid_pairs(pts, float(radius))
    indptr, indices = csr_from_edges(len(pts), i, j)
    return GeometricGraph(pts, float(radius), indptr, indices, float(radius))


def degree_histogram(g: GeometricGraph) -> dict[int, int]:
    return dict(sorted(Counter(g.degrees().tolist()).items()))
