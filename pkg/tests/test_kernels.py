import numpy as np
import pytest
from scipy.spatial.distance import pdist

from rggradii import _core, _kernels_py
from rggradii.rgg import csr_from_edges

compiled = pytest.mark.skipif(_core.BACKEND != "cython", reason="compiled kernels not built")
BACKENDS = [_kernels_py] + ([_core.kernels] if _core.BACKEND == "cython" else [])


def _canon(i, j, d):
    order = np.lexsort((j, i))
    return i[order], j[order], d[order]


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_grid_pairs_match_pdist(mod, rng):
    pts = rng.random((300, 3))
    i, j, d = _canon(*mod.grid_pairs(pts, 0.2))
    full = pdist(pts)
    iu, ju = np.triu_indices(300, 1)
    keep = full <= 0.2
    assert np.array_equal(i, iu[keep]) and np.array_equal(j, ju[keep])
    assert np.allclose(d, full[keep], rtol=1e-15, atol=0)


@compiled
def test_backends_bit_identical(rng):
    pts = rng.random((2000, 3))
    a = _canon(*_core.kernels.grid_pairs(pts, 0.08))
    b = _canon(*_kernels_py.grid_pairs(pts, 0.08))
    for x, y in zip(a, b):
        assert np.array_equal(x, y)
    assert _core.kernels.prim_longest_edge(pts) == _kernels_py.prim_longest_edge(pts)
    i, j, d = a
    order = np.lexsort((j, i, d))
    ei, ej = i[order], j[order]
    assert _core.kernels.bottleneck_edge(2000, ei, ej) == _kernels_py.bottleneck_edge(2000, ei, ej)


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_bottleneck_edge(mod):
    ei = np.array([0, 1, 0, 2], np.intp)
    ej = np.array([1, 0, 2, 3], np.intp)
    assert mod.bottleneck_edge(4, ei, ej) == 3
    assert mod.bottleneck_edge(4, ei[:3], ej[:3]) == -1
    assert mod.bottleneck_edge(1, ei[:0], ej[:0]) == -1


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_local_connectivity_cube_graph(mod):
    # the 3-cube graph is 3-connected
    verts = [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
    edges = [(u, v) for u in range(8) for v in range(u + 1, 8)
             if sum(x != y for x, y in zip(verts[u], verts[v])) == 1]
    ei, ej = (np.array(e, np.intp) for e in zip(*edges))
    indptr, indices = csr_from_edges(8, ei, ej)
    assert mod.local_connectivity(8, indptr, indices, 0, 7, 10) == 3
    assert mod.local_connectivity(8, indptr, indices, 0, 7, 2) == 2
    assert mod.is_k_connected(8, indptr, indices, 3)
    assert not mod.is_k_connected(8, indptr, indices, 4)


@compiled
def test_is_k_connected_agree(rng):
    for _ in range(30):
        n = int(rng.integers(5, 60))
        pts = rng.random((n, 3))
        i, j, _ = _kernels_py.grid_pairs(pts, float(rng.uniform(0.2, 0.7)))
        indptr, indices = csr_from_edges(n, i, j)
        for k in (1, 2, 3, 4):
            assert (_core.kernels.is_k_connected(n, indptr, indices, k)
                    == _kernels_py.is_k_connected(n, indptr, indices, k))


def test_backend_selection_env(monkeypatch):
    import importlib
    monkeypatch.setenv("RGGRADII_PURE_PYTHON", "1")
    mod = importlib.reload(_core)
    try:
        assert mod.BACKEND == "python"
    finally:
        monkeypatch.delenv("RGGRADII_PURE_PYTHON")
        importlib.reload(_core)
