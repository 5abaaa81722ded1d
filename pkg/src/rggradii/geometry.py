"""Volumes of balls clipped by planes, other balls and the reference regions.

All regions are centred at the origin. ``UnitBall`` and ``UnitCube`` have unit
volume; ``ScaledBall`` is a ball of arbitrary radius used mostly by tests.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

UNIT_BALL_RADIUS = (3.0 / (4.0 * math.pi)) ** (1.0 / 3.0)

UNIT_BALL = "unit-ball"
SCALED_BALL = "scaled-ball"
UNIT_CUBE = "unit-cube"


class GeometryError(ValueError):
    """Raised when a geometric query is outside its domain."""


class UnsupportedRegionError(GeometryError):
    pass


@dataclass(frozen=True)
class Region:
    kind: str
    radius: float | None = None

    def __post_init__(self):
        if self.kind == UNIT_BALL:
            object.__setattr__(self, "radius", UNIT_BALL_RADIUS)
        elif self.kind == SCALED_BALL:
            if self.radius is None or not self.radius > 0:
                raise GeometryError("scaled ball needs a positive radius")
        elif self.kind == UNIT_CUBE:
            object.__setattr__(self, "radius", None)
        else:
            raise GeometryError(f"unknown region kind {self.kind!r}")

    @classmethod
    def unit_ball(cls) -> "Region":
        return cls(UNIT_BALL)

    @classmethod
    def scaled_ball(cls, radius: float) -> "Region":
        return cls(SCALED_BALL, float(radius))

    @classmethod
    def unit_cube(cls) -> "Region":
        return cls(UNIT_CUBE)

    @classmethod
    def parse(cls, name: str) -> "Region":
        """Parse ``unit-ball``, ``unit-cube`` or ``ball:R``."""
        if name == UNIT_BALL:
            return cls.unit_ball()
        if name == UNIT_CUBE:
            return cls.unit_cube()
        if name.startswith("ball:"):
            try:
                return cls.scaled_ball(float(name[5:]))
            except ValueError as exc:
                raise GeometryError(f"bad region {name!r}") from exc
        raise GeometryError(f"unknown region {name!r}")

    @property
    def name(self) -> str:
        if self.kind == SCALED_BALL:
            return f"ball:{self.radius!r}"
        return self.kind

    @property
    def is_ball(self) -> bool:
        return self.kind in (UNIT_BALL, SCALED_BALL)

    @property
    def half_width(self) -> float:
        """Half edge of the axis-aligned bounding cube."""
        return self.radius if self.is_ball else 0.5

    def volume(self) -> float:
        if self.is_ball:
            return 4.0 / 3.0 * math.pi * self.radius ** 3
        return 1.0

    def boundary_area(self) -> float:
        if self.is_ball:
            return 4.0 * math.pi * self.radius ** 2
        return 6.0

    def contains(self, x, tol: float = 1e-12) -> bool:
        x = np.asarray(x, dtype=float)
        if not np.all(np.isfinite(x)):
            return False
        if self.is_ball:
            return float(np.linalg.norm(x)) <= self.radius * (1.0 + tol)
        return bool(np.all(np.abs(x) <= 0.5 + tol))


def curvature_constant(region: Region) -> float:
    """Half the largest sum of absolute principal curvatures over the boundary."""
    if not region.is_ball:
        raise UnsupportedRegionError(
            f"curvature constant needs a C2 boundary; {region.name} has edges")
    # both principal curvatures of a sphere are 1/R
    return 1.0 / region.radius


def sphere_segment_volume(r: float, t: float) -> float:
    """Volume of ``{|p| <= r, p_1 <= t}``: the part of a ball below a cut plane."""
    if not r > 0:
        raise GeometryError(f"radius must be positive, got {r}")
    if abs(t) > r:
        raise GeometryError(f"cut offset |t|={abs(t)} exceeds radius {r}")
    return math.pi / 3.0 * (2.0 * r ** 3 + 3.0 * r * r * t - t ** 3)


def sphere_segment_derivative(r: float, t: float) -> float:
    return math.pi * (r * r - t * t)


def half_lens_excess(d: float, r: float) -> float:
    """Part of the hemisphere of ``B(x, r)`` facing ``y`` not covered by ``B(y, r)``.

    ``d`` is the centre distance ``|x - y|``; the result is ``pi d^3 / 4``
    independently of ``r``.
    """
    if not r > 0:
        raise GeometryError(f"radius must be positive, got {r}")
    if not 0 <= d < r:
        raise GeometryError(f"need 0 <= d < r, got d={d}, r={r}")
    return 0.25 * math.pi * d ** 3


def ball_ball_intersection_volume(R: float, r: float, s: float) -> float:
    """Volume of the intersection of balls of radii ``R`` and ``r`` at centre distance ``s``."""
    if not (R > 0 and r > 0):
        raise GeometryError("radii must be positive")
    if s < 0:
        raise GeometryError(f"centre distance must be nonnegative, got {s}")
    if s >= R + r:
        return 0.0
    if s <= abs(R - r):
        return 4.0 / 3.0 * math.pi * min(R, r) ** 3
    # second factor over s, regrouped so small s does not cancel catastrophically
    q = s + 2.0 * (R + r) - 3.0 * (R - r) ** 2 / s
    return math.pi * (R + r - s) ** 2 * q / 12.0


def ball_region_plane_offset(R: float, s: float, r: float) -> float:
    """Signed offset from ``x`` to the plane of the circle ``dB(x, r) & dB(0, R)``.

    ``x`` sits at distance ``s`` from the centre of the region ball. The axis
    points away from the centre, so ``sphere_segment_volume(r, t)`` is the part
    of ``B(x, r)`` on the centre side of the plane; ``t > 0`` when the plane lies
    beyond ``x``.
    """
    if not (R > 0 and r > 0):
        raise GeometryError("radii must be positive")
    if not abs(R - r) < s < R + r:
        raise GeometryError(
            f"spheres of radii {R}, {r} at distance {s} do not meet in a circle")
    return (R * R - r * r - s * s) / (2.0 * s)


def _disk_rect_area(rho, x0, x1, y0, y1):
    """Area of the disk of radius ``rho`` at the origin inside ``[x0,x1] x [y0,y1]``."""
    if rho <= 0:
        return 0.0
    lo, hi = max(x0, -rho), min(x1, rho)
    if lo >= hi:
        return 0.0
    r2 = rho * rho

    def chord(x):
        return math.sqrt(max(r2 - x * x, 0.0))

    def prim(x):
        # antiderivative of sqrt(rho^2 - x^2)
        x = min(max(x, -rho), rho)
        return 0.5 * (x * chord(x) + r2 * math.asin(x / rho))

    cuts = {lo, hi}
    for y in (y0, y1):
        if abs(y) < rho:
            xb = math.sqrt(r2 - y * y)
            cuts.update(v for v in (-xb, xb) if lo < v < hi)
    cuts = sorted(cuts)

    area = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        m = 0.5 * (a + b)
        h = chord(m)
        top_is_arc = h < y1
        bot_is_arc = -h > y0
        if (min(y1, h) - max(y0, -h)) <= 0:
            continue
        arc = prim(b) - prim(a)
        w = b - a
        top = arc if top_is_arc else y1 * w
        bot = -arc if bot_is_arc else y0 * w
        area += top - bot
    return area


def cube_ball_intersection_volume(x, r: float, half: float = 0.5, epsrel: float = 1e-12):
    """Volume of ``B(x, r)`` inside the cube ``[-half, half]^3`` and an error bound.

    Slices along z reduce the problem to disk/rectangle areas, which are exact;
    the remaining 1D integral is adaptive Gauss-Kronrod.
    """
    x = np.asarray(x, dtype=float)
    lo = -half - x
    hi = half - x
    zlo, zhi = max(lo[2], -r), min(hi[2], r)
    if zlo >= zhi:
        return 0.0, 0.0

    def area(z):
        return _disk_rect_area(math.sqrt(max(r * r - z * z, 0.0)),
                               lo[0], hi[0], lo[1], hi[1])

    # kinks of the slice area: disk touching each side or corner of the rectangle
    pts = set()
    for ex in (lo[0], hi[0]):
        for ey in (lo[1], hi[1]):
            for rho in (abs(ex), abs(ey), math.hypot(ex, ey)):
                if rho < r:
                    z = math.sqrt(r * r - rho * rho)
                    pts.update(v for v in (-z, z) if zlo < v < zhi)
    val, err = integrate.quad(area, zlo, zhi, points=sorted(pts) or None,
                              epsabs=0.0, epsrel=epsrel, limit=200)
    return val, err


def region_ball_intersection_volume(region: Region, x, r: float) -> float:
    """``|B(x, r) & region|``.

    Exact for balls. For the cube, exact when at most one face cuts the ball;
    otherwise a slice quadrature whose error estimate is checked against
    ``1e-6`` of the ball volume.
    """
    if not r > 0:
        raise GeometryError(f"radius must be positive, got {r}")
    x = np.asarray(x, dtype=float)
    if x.shape != (3,):
        raise GeometryError("x must be a 3-vector")
    if not region.contains(x):
        raise GeometryError(f"point {x.tolist()} is outside {region.name}")
    if region.is_ball:
        return ball_ball_intersection_volume(region.radius, r, float(np.linalg.norm(x)))

    gaps = np.concatenate([0.5 - x, x + 0.5])
    cut = gaps < r
    ncut = int(cut.sum())
    full = 4.0 / 3.0 * math.pi * r ** 3
    if ncut == 0:
        return full
    if ncut == 1:
        return sphere_segment_volume(r, float(gaps[cut][0]))
    val, err = cube_ball_intersection_volume(x, r)
    if err > 1e-6 * full:
        raise GeometryError(f"cube clipping quadrature error {err:.3g} too large")
    return val
