import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (brute_edges, brute_k_connected, linear_scan_connectivity_radius,
                     linear_scan_min_degree_radius)
from rggradii.critical import (connectivity_radius, critical_radii, kth_neighbor_distances,
                               min_degree_radius, mst_longest_edge,
                               vertex_connectivity_at_least)
from rggradii.rgg import build_graph

LINE = [[0, 0, 0], [1, 0, 0], [3, 0, 0]]
TETRA = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / math.sqrt(8)
PENTAGON = np.array([[math.cos(2 * math.pi * i / 5), math.sin(2 * math.pi * i / 5), 0]
                     for i in range(5)])


def test_line_examples(backend):
    assert min_degree_radius(LINE, 1) == 2
    assert min_degree_radius(LINE, 2) == 3
    assert connectivity_radius(LINE, 1) == 2
    assert mst_longest_edge(LINE) == 2
    assert connectivity_radius(LINE, 2) == 3


def test_tetrahedron(backend):
    assert min_degree_radius(TETRA, 3) == pytest.approx(1.0, rel=1e-15)
    assert connectivity_radius(TETRA, 3) == pytest.approx(1.0, rel=1e-15)


def test_two_points(backend):
    pts = [[0, 0, 0], [0.7, 0, 0]]
    assert mst_longest_edge(pts) == 0.7
    assert critical_radii(pts, 1).rho_kappa == 0.7


def test_complete_graph(backend):
    g = build_graph(TETRA, 1.01)
    assert vertex_connectivity_at_least(g, 3)
    assert not vertex_connectivity_at_least(g, 4)


def test_path(backend):
    g = build_graph(LINE, 2.0)
    assert vertex_connectivity_at_least(g, 1)
    assert not vertex_connectivity_at_least(g, 2)


def test_five_cycle(backend):
    side = float(np.linalg.norm(PENTAGON[0] - PENTAGON[1]))
    g = build_graph(PENTAGON, side * 1.001)
    edges = g.edges()
    assert len(edges) == 5
    for k, expected in ((1, True), (2, True), (3, False)):
        assert brute_k_connected(5, edges, k) is expected
        assert vertex_connectivity_at_least(g, k) is expected


def test_errors(backend):
    with pytest.raises(ValueError):
        min_degree_radius(LINE, 3)
    with pytest.raises(ValueError):
        connectivity_radius(LINE, 3)
    with pytest.raises(ValueError):
        connectivity_radius(LINE, 0)
    with pytest.raises(ValueError):
        mst_longest_edge([[0, 0, 0]])
    with pytest.raises(ValueError):
        vertex_connectivity_at_least(build_graph(LINE, 1.0), 0)


def test_kth_neighbor_distances(backend, rng):
    pts = rng.random((60, 3))
    full = np.sqrt(((pts[:, None] - pts[None]) ** 2).sum(-1))
    full[np.arange(60), np.arange(60)] = np.inf
    srt = np.sort(full, axis=1)
    for k in (1, 2, 5):
        assert np.allclose(kth_neighbor_distances(pts, k), srt[:, k - 1], rtol=1e-15, atol=0)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_against_linear_scan(backend, k):
    rng = np.random.default_rng(100 + k)
    for _ in range(6):
        n = int(rng.integers(k + 2, 26))
        pts = rng.uniform(-0.5, 0.5, (n, 3))
        assert min_degree_radius(pts, k) == linear_scan_min_degree_radius(pts, k)
        assert connectivity_radius(pts, k) == linear_scan_connectivity_radius(pts, k)


def test_mst_identity(backend):
    rng = np.random.default_rng(17)
    for _ in range(20):
        pts = rng.uniform(-0.5, 0.5, (200, 3))
        assert mst_longest_edge(pts) == connectivity_radius(pts, 1)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(5, 40))
def test_ordering_and_monotone_in_k(seed, n):
    pts = np.random.default_rng(seed).random((n, 3))
    prev_d = prev_k = 0.0
    for k in (1, 2, 3):
        res = critical_radii(pts, k)
        assert res.rho_delta <= res.rho_kappa
        assert res.rho_delta >= prev_d and res.rho_kappa >= prev_k
        prev_d, prev_k = res.rho_delta, res.rho_kappa
        g = build_graph(pts, res.rho_kappa)
        assert vertex_connectivity_at_least(g, k)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(4, 12), k=st.integers(1, 3))
def test_connectivity_matches_subset_removal(seed, n, k):
    pts = np.random.default_rng(seed).random((n, 3))
    r = float(np.random.default_rng(seed + 1).uniform(0.2, 1.0))
    g = build_graph(pts, r)
    assert vertex_connectivity_at_least(g, k) == brute_k_connected(n, brute_edges(pts, r), k)


def test_critical_radii_small_sets(backend):
    res = critical_radii(LINE, 1)
    assert (res.rho_delta, res.rho_kappa, res.mst_longest_edge) == (2, 2, 2)
    assert critical_radii(LINE, 2).mst_longest_edge is None
    assert critical_radii([[0, 0, 0]], 1).rho_delta == math.inf
