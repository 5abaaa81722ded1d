"""Critical radii of a finite point set.

Both radii are attained at pairwise distances, so everything here is exact:
no tolerances, and results from the two kernel backends coincide bit for bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._core import kernels
from .rgg import GeometricGraph, as_points, csr_from_edges, sorted_pairs


@dataclass(frozen=True)
class RadiusResult:
    k: int
    rho_delta: float
    rho_kappa: float
    mst_longest_edge: float | None = None


def _initial_radius(pts, k):
    n = len(pts)
    span = float(np.max(pts.max(axis=0) - pts.min(axis=0))) or 1.0
    # ball holding about k + 2 expected neighbours in the bounding box
    return max(span * ((k + 2.0) / (4.0 * n)) ** (1.0 / 3.0), 1e-12 * span)


def kth_neighbor_distances(points, k: int) -> np.ndarray:
    """Distance from each point to its k-th nearest neighbour (``k >= 1``)."""
    pts = as_points(points)
    n = len(pts)
    if k < 1:
        raise ValueError("k must be at least 1")
    if k >= n:
        raise ValueError(f"k={k} needs more than {n} points")
    r = _initial_radius(pts, k)
    while True:
        i, j, d = kernels.grid_pairs(pts, r)
        v = np.concatenate([i, j])
        dd = np.concatenate([d, d])
        counts = np.bincount(v, minlength=n)
        if counts.min() >= k:
            order = np.lexsort((dd, v))
            start = np.concatenate([[0], np.cumsum(counts)[:-1]])
            return dd[order][start + k - 1]
        r *= 2.0


def min_degree_radius(points, k: int) -> float:
    """Least radius at which every vertex has degree at least ``k``."""
    return float(kth_neighbor_distances(points, k).max())


def vertex_connectivity_at_least(g: GeometricGraph, k: int) -> bool:
    if k < 1:
        raise ValueError("k must be at least 1")
    if k == 1 and g.n > 1:
        ei = np.repeat(np.arange(g.n), np.diff(g.indptr))
        return kernels.bottleneck_edge(g.n, ei, g.indices) >= 0
    return bool(kernels.is_k_connected(g.n, g.indptr, g.indices, k))


def _k_connected_prefix(n, ei, ej, m, k):
    indptr, indices = csr_from_edges(n, ei[:m], ej[:m])
    return bool(kernels.is_k_connected(n, indptr, indices, k))


def connectivity_radius(points, k: int) -> float:
    """Least pairwise distance at which the geometric graph is k-vertex-connected."""
    pts = as_points(points)
    n = len(pts)
    if k < 1:
        raise ValueError("k must be at least 1")
    if k >= n:
        raise ValueError(f"k={k} needs more than {n} points")
    lo_r = min_degree_radius(pts, k)
    if k == 1:
        r = lo_r
        while True:
            ei, ej, d = sorted_pairs(pts, r)
            e = kernels.bottleneck_edge(n, ei, ej)
            if e >= 0:
                return float(d[e])
            r *= 1.5

    # gallop up from the min-degree radius, then bisect the distinct distances
    r = lo_r
    while True:
        ei, ej, d = sorted_pairs(pts, r)
        if _k_connected_prefix(n, ei, ej, len(d), k):
            break
        r *= 1.25
    lo = int(np.searchsorted(d, lo_r, side="left"))
    # ends[q]: edge count of the graph whose radius is the q-th distinct distance
    ends = np.flatnonzero(np.diff(np.append(d, np.inf)) > 0) + 1
    qs = ends[ends > lo]
    a, b = 0, len(qs) - 1
    while a < b:
        mid = (a + b) // 2
        if _k_connected_prefix(n, ei, ej, int(qs[mid]), k):
            b = mid
        else:
            a = mid + 1
    return float(d[qs[a] - 1])


def mst_longest_edge(points) -> float:
    pts = as_points(points)
    if len(pts) < 2:
        raise ValueError("need at least two points")
    return float(kernels.prim_longest_edge(pts))


def critical_radii(points, k: int) -> RadiusResult:
    """Both critical radii of order ``k`` (and the MST bottleneck when ``k == 1``)."""
    pts = as_points(points)
    if len(pts) <= k:
        return RadiusResult(k, math.inf, math.inf, None)
    rho_d = min_degree_radius(pts, k)
    rho_k = connectivity_radius(pts, k)
    mst = mst_longest_edge(pts) if k == 1 else None
    return RadiusResult(k, rho_d, rho_k, mst)
