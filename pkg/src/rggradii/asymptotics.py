"""Closed-form critical radius, its offset/location parameters, and the integrals behind them.

``xi`` is the additive offset inside the radius formula and ``c`` the location
of the Gumbel-type limit ``exp(-exp(-c))``; for a region with boundary area
``A`` they satisfy

    A * exp(-2 xi / 3) * pi**(-1/3) * (2/3)**k / k! = exp(-c).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import integrate

from .geometry import (GeometryError, Region, UnsupportedRegionError,
                       ball_ball_intersection_volume, curvature_constant,
                       region_ball_intersection_volume, sphere_segment_volume)

LOG_PI = math.log(math.pi)
LOG_2_3 = math.log(2.0 / 3.0)


class DomainError(ValueError):
    """Arguments outside the domain of a formula."""


class QuadratureError(RuntimeError):
    def __init__(self, message, value, abserr):
        super().__init__(f"{message} (value {value!r}, error estimate {abserr:.3g})")
        self.value = value
        self.abserr = abserr


def log_factorial(k: int) -> float:
    if k < 0:
        raise DomainError("k must be nonnegative")
    return 0.0 if k < 2 else math.lgamma(k + 1)


def xi_from_c(area: float, k: int, c: float) -> float:
    if not area > 0:
        raise DomainError(f"boundary area must be positive, got {area}")
    if k < 0:
        raise DomainError("k must be nonnegative")
    return 1.5 * (c + math.log(area) + k * LOG_2_3 - log_factorial(k) - LOG_PI / 3.0)


def c_from_xi(area: float, k: int, xi: float) -> float:
    if not area > 0:
        raise DomainError(f"boundary area must be positive, got {area}")
    if k < 0:
        raise DomainError("k must be nonnegative")
    return -math.log(area) - k * LOG_2_3 + log_factorial(k) + 2.0 * xi / 3.0 + LOG_PI / 3.0


def limit_lhs(area: float, k: int, xi: float) -> float:
    """Left side of the xi/c relation, which should equal ``exp(-c)``."""
    return area * math.exp(-2.0 * xi / 3.0 - LOG_PI / 3.0 + k * LOG_2_3 - log_factorial(k))


def radius_numerator(n: float, k: int, xi: float) -> float:
    if n < 3:
        raise DomainError(f"need n >= 3 so that log log n > 0, got {n}")
    ln = math.log(n)
    return ln + (1.5 * k - 1.0) * math.log(ln) + xi


def critical_radius(n: float, k: int, xi: float) -> float:
    """``((log n + (3k/2 - 1) log log n + xi) / (pi n))**(1/3)``."""
    num = radius_numerator(n, k, xi)
    if not num > 0:
        raise DomainError(f"radius numerator must be positive, got {num:.6g}")
    return (num / (math.pi * n)) ** (1.0 / 3.0)


def limit_probability(c: float) -> float:
    """``exp(-exp(-c))``, the limiting probability that the radius is below ``r_n``."""
    if c < -700:
        return 0.0
    return math.exp(-math.exp(-c))


@dataclass(frozen=True)
class AsymptoticParams:
    n: float
    k: int
    c: float
    xi: float
    area: float

    @classmethod
    def from_c(cls, n, k, c, area):
        return cls(n, k, c, xi_from_c(area, k, c), area)

    @classmethod
    def from_xi(cls, n, k, xi, area):
        return cls(n, k, c_from_xi(area, k, xi), xi, area)

    @property
    def radius(self) -> float:
        return critical_radius(self.n, self.k, self.xi)

    @property
    def probability(self) -> float:
        return limit_probability(self.c)


def _poisson_pmf(mean, k):
    # (mean^k e^-mean) / k!, evaluated in log space
    if mean <= 0:
        return 1.0 if k == 0 else 0.0
    return math.exp(k * math.log(mean) - mean - log_factorial(k))


def psi(region: Region, x, n: float, r: float, k: int) -> float:
    """Probability that a Poisson(n) process puts exactly ``k`` points in ``B(x, r) & region``."""
    v = region_ball_intersection_volume(region, x, r)
    return _poisson_pmf(n * v, k)


def _quad(f, a, b, points, epsrel, what):
    val, err, info = integrate.quad(f, a, b, points=points, epsabs=0.0, epsrel=epsrel,
                                    limit=500, full_output=1)[:3]
    if err > max(100 * epsrel * abs(val), 1e-300):
        raise QuadratureError(f"{what} did not converge", val, err)
    return val, err


def psi_integral(region: Region, n: float, r: float, k: int, epsrel: float = 1e-9,
                 return_error: bool = False):
    """``n * integral over the region of psi``, by radial reduction on a ball region.

    The interior ``|x| <= R - r`` has constant integrand and is done in closed
    form; the shell is integrated adaptively with a break at the onset of the
    curvature-controlled layer ``R - (G + 1) r^2``.
    """
    if not region.is_ball:
        raise UnsupportedRegionError("psi_integral needs a ball region (radial reduction)")
    if not r > 0 or n <= 0:
        raise DomainError("need n > 0 and r > 0")
    R = region.radius
    G = curvature_constant(region)
    inner = max(R - r, 0.0)
    full = 4.0 / 3.0 * math.pi * r ** 3
    interior = n * _poisson_pmf(n * full, k) * 4.0 / 3.0 * math.pi * inner ** 3 if r <= R else 0.0

    def f(s):
        v = ball_ball_intersection_volume(R, r, s)
        return n * _poisson_pmf(n * v, k) * 4.0 * math.pi * s * s

    brk = R - (G + 1.0) * r * r
    pts = [brk] if inner < brk < R else None
    shell, err = _quad(f, inner, R, pts, epsrel, "psi_integral")
    if return_error:
        return interior + shell, err
    return interior + shell


def boundary_layer_integral(n: float, r: float, k: int, epsrel: float = 1e-10) -> float:
    """``n * int_0^{r/2} Poisson_pmf(n a(r, t), k) dt`` with ``a`` the major segment volume."""
    if not r > 0 or n <= 0:
        raise DomainError("need n > 0 and r > 0")

    def f(t):
        return n * _poisson_pmf(n * sphere_segment_volume(r, t), k)

    return _quad(f, 0.0, 0.5 * r, None, epsrel, "boundary_layer_integral")[0]


def boundary_layer_limit(xi: float, k: int) -> float:
    """Large-n limit of ``boundary_layer_integral`` along ``r = critical_radius(n, k, xi)``."""
    return math.exp(-2.0 * xi / 3.0 - LOG_PI / 3.0 + k * LOG_2_3 - log_factorial(k))


# general dimension --------------------------------------------------------

def unit_ball_volume(d: int) -> float:
    return math.exp(0.5 * d * LOG_PI - math.lgamma(0.5 * d + 1.0))


def _check_dim(d):
    if int(d) != d or d < 3:
        raise DomainError(f"dimension must be an integer >= 3, got {d}")


def general_d_radius(d: int, n: float, k: int, xi: float) -> float:
    _check_dim(d)
    if n < 3:
        raise DomainError(f"need n >= 3, got {n}")
    ln = math.log(n)
    num = ln + (d * k - d + 1) / (d - 1) * math.log(ln) + xi
    if not num > 0:
        raise DomainError(f"radius numerator must be positive, got {num:.6g}")
    return (num / (d / (2.0 * (d - 1)) * unit_ball_volume(d) * n)) ** (1.0 / d)


def _general_d_log_constant(d, k):
    # log of area-free factor in the xi/c relation, without the exp(-(d-1)/d xi)
    beta = d / (2.0 * (d - 1)) * unit_ball_volume(d)
    return (k * math.log((d - 1) / d) + (d - 1) / d * math.log(beta)
            - math.log(unit_ball_volume(d - 1)) - log_factorial(k))


def general_d_xi(area: float, d: int, k: int, c: float) -> float:
    _check_dim(d)
    if not area > 0:
        raise DomainError(f"boundary area must be positive, got {area}")
    return d / (d - 1) * (c + math.log(area) + _general_d_log_constant(d, k))


def general_d_c_from_xi(area: float, d: int, k: int, xi: float) -> float:
    _check_dim(d)
    return -math.log(area) - _general_d_log_constant(d, k) + (d - 1) / d * xi


def general_d_limit_lhs(area: float, d: int, k: int, xi: float) -> float:
    _check_dim(d)
    beta = d / (2.0 * (d - 1)) * unit_ball_volume(d)
    return (area * ((d - 1) / d) ** k * beta ** ((d - 1) / d)
            / (math.exp((d - 1) / d * xi) * unit_ball_volume(d - 1) * math.factorial(k)))


__all__ = [
    "AsymptoticParams", "DomainError", "GeometryError", "QuadratureError",
    "boundary_layer_integral", "boundary_layer_limit", "c_from_xi", "critical_radius",
    "general_d_c_from_xi", "general_d_limit_lhs", "general_d_radius", "general_d_xi",
    "limit_lhs", "limit_probability", "log_factorial", "psi",
    "psi_integral", "radius_numerator", "unit_ball_volume", "xi_from_c",
]
