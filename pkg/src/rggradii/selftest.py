"""Fast built-in checks run by ``rggradii selftest``.

Each check returns ``(name, passed, detail)``. These are cheap versions of the
property suites in ``tests/``; they need no test dependencies.
"""
import math

import numpy as np

from . import _kernels_py
from ._core import kernels
from .asymptotics import c_from_xi, limit_lhs, xi_from_c
from .critical import connectivity_radius, min_degree_radius, mst_longest_edge
from .geometry import (UNIT_BALL_RADIUS, ball_ball_intersection_volume,
                       sphere_segment_derivative, sphere_segment_volume)
from .rgg import build_graph


def _xi_round_trip(rng):
    worst = 0.0
    for _ in range(1000):
        area, k, c = rng.uniform(0.5, 10), int(rng.integers(0, 6)), rng.uniform(-3, 3)
        xi = xi_from_c(area, k, c)
        worst = max(worst, abs(c_from_xi(area, k, xi) - c),
                    abs(limit_lhs(area, k, xi) / math.exp(-c) - 1))
    return worst <= 1e-12, f"max error {worst:.2e}"


def _segment_derivative(rng):
    worst = 0.0
    for _ in range(200):
        r = rng.uniform(0.1, 2)
        t = rng.uniform(-0.9, 0.9) * r
        h = 1e-5 * r
        fd = (sphere_segment_volume(r, t + h) - sphere_segment_volume(r, t - h)) / (2 * h)
        worst = max(worst, abs(fd / sphere_segment_derivative(r, t) - 1))
    return worst <= 1e-6, f"max rel error {worst:.2e}"


def _lens_caps(rng):
    worst = 0.0
    for _ in range(200):
        r = rng.uniform(0.1, 2)
        d = rng.uniform(0, 2) * r
        lens = ball_ball_intersection_volume(r, r, d)
        worst = max(worst, abs(lens - 2 * sphere_segment_volume(r, -d / 2)))
    return worst <= 1e-10, f"max abs error {worst:.2e}"


def _graph_vs_brute(rng):
    pts = rng.uniform(-UNIT_BALL_RADIUS, UNIT_BALL_RADIUS, size=(120, 3))
    g = build_graph(pts, 0.3)
    d = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1))
    brute = {(i, j) for i in range(120) for j in range(i + 1, 120) if d[i, j] <= 0.3}
    return g.edges() == brute, f"{len(brute)} edges"


def _mst_identity(rng):
    bad = 0
    for _ in range(20):
        pts = rng.uniform(size=(150, 3))
        if mst_longest_edge(pts) != connectivity_radius(pts, 1):
            bad += 1
        if min_degree_radius(pts, 2) > connectivity_radius(pts, 2):
            bad += 1
    return bad == 0, f"{bad} mismatches"


def _backends_agree(rng):
    pts = rng.uniform(size=(200, 3))
    a = kernels.grid_pairs(pts, 0.2)
    b = _kernels_py.grid_pairs(pts, 0.2)
    oa, ob = np.lexsort((a[1], a[0])), np.lexsort((b[1], b[0]))
    same = all(np.array_equal(x[oa], y[ob]) for x, y in zip(a, b))
    same &= kernels.prim_longest_edge(pts) == _kernels_py.prim_longest_edge(pts)
    return same, f"active backend {kernels.BACKEND}"


CHECKS = [
    ("xi/c round trip and residual", _xi_round_trip),
    ("segment volume derivative", _segment_derivative),
    ("lens equals two caps", _lens_caps),
    ("grid graph equals brute force", _graph_vs_brute),
    ("MST bottleneck equals connectivity radius", _mst_identity),
    ("compiled and fallback kernels agree", _backends_agree),
]


def run_all(seed: int = 12345):
    rng = np.random.default_rng(seed)
    out = []
    for name, check in CHECKS:
        passed, detail = check(rng)
        out.append((name, bool(passed), detail))
    return out
