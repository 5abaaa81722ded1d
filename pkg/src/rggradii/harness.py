"""Monte-Carlo experiments for the limit laws of the two critical radii.

Every trial is sampled once and reused for the whole ``c_grid`` (common random
numbers), so empirical CDFs are monotone in ``c``. Trials may run in worker
processes; results are folded in trial order, so reports do not depend on
scheduling.
"""
from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import integrate, stats

from . import __version__
from .asymptotics import critical_radius, limit_probability, psi_integral, xi_from_c
from .critical import RadiusResult, connectivity_radius, kth_neighbor_distances, mst_longest_edge
from .geometry import Region, ball_ball_intersection_volume
from .sampling import Poisson, SampleSpec, UniformN, sample

PROCESSES = ("uniform", "poisson")
WILSON_Z = 1.959963984540054


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    region: Region
    n: int
    k: int
    process: str = "uniform"
    trials: int = 100
    c_grid: tuple = (0.0,)
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "c_grid", tuple(float(c) for c in self.c_grid))
        if not isinstance(self.region, Region):
            raise ConfigError("region must be a Region")
        if self.process not in PROCESSES:
            raise ConfigError(f"process must be one of {PROCESSES}, got {self.process!r}")
        if int(self.n) != self.n or self.n < 2:
            raise ConfigError(f"n must be an integer >= 2, got {self.n}")
        if int(self.k) != self.k or self.k < 0:
            raise ConfigError(f"k must be a nonnegative integer, got {self.k}")
        if int(self.trials) != self.trials or self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if not self.c_grid:
            raise ConfigError("c_grid must be nonempty")
        if any(not math.isfinite(c) for c in self.c_grid):
            raise ConfigError("c_grid values must be finite")
        if list(self.c_grid) != sorted(self.c_grid):
            raise ConfigError("c_grid must be sorted")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must be an unsigned 64-bit integer")

    @property
    def order(self) -> int:
        """Degree / connectivity level studied: ``k + 1``."""
        return self.k + 1

    def spec(self, trial: int) -> SampleSpec:
        mode = UniformN(self.n) if self.process == "uniform" else Poisson(float(self.n))
        return SampleSpec(self.region, mode, self.seed, trial)

    def radius_at(self, c: float) -> float:
        xi = xi_from_c(self.region.boundary_area(), self.k, c)
        return critical_radius(self.n, self.k, xi)

    def to_dict(self) -> dict:
        return {"region": self.region.name, "n": self.n, "k": self.k,
                "process": self.process, "trials": self.trials,
                "c_grid": list(self.c_grid), "seed": self.seed}

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        fields_ = {"region", "n", "k", "process", "trials", "c_grid", "seed"}
        unknown = set(data) - fields_
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        missing = {"region", "n", "k", "trials", "c_grid"} - set(data)
        if missing:
            raise ConfigError(f"missing config fields: {sorted(missing)}")
        try:
            region = Region.parse(data["region"])
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        for key in ("n", "k", "trials", "seed"):
            if key in data and (isinstance(data[key], bool) or not isinstance(data[key], int)):
                raise ConfigError(f"{key} must be an integer")
        if not isinstance(data["c_grid"], list):
            raise ConfigError("c_grid must be a list of numbers")
        return cls(region=region, n=data["n"], k=data["k"],
                   process=data.get("process", "uniform"), trials=data["trials"],
                   c_grid=tuple(data["c_grid"]), seed=data.get("seed", 0))


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    n_points: int
    result: RadiusResult
    degree_k_counts: tuple

    def row(self):
        r = self.result
        return [self.trial, self.n_points, _fmt(r.rho_delta), _fmt(r.rho_kappa),
                _fmt(r.mst_longest_edge)]


def _fmt(x):
    if x is None:
        return ""
    return repr(float(x))


def _jsonable(x):
    if x is None or not math.isfinite(x):
        return None
    return float(x)


def degree_k_counts(points, k: int, radii) -> list[int]:
    """Number of vertices of degree exactly ``k`` at each radius in ``radii``."""
    n = len(points)
    if n <= k:
        return [0 for _ in radii]
    lo = kth_neighbor_distances(points, k) if k > 0 else np.zeros(n)
    hi = kth_neighbor_distances(points, k + 1) if k + 1 < n else np.full(n, np.inf)
    return [int(np.count_nonzero((lo <= r) & (r < hi))) for r in radii]


def _run_trial(args):
    config, trial, with_connectivity, with_counts = args
    pts = sample(config.spec(trial)).points
    n = len(pts)
    order = config.order
    counts = ()
    if with_counts:
        radii = [config.radius_at(c) for c in config.c_grid]
        counts = tuple(degree_k_counts(pts, config.k, radii))
    if n <= order:
        return TrialRecord(trial, n, RadiusResult(order, math.inf, math.inf, None), counts)
    rho_d = float(kth_neighbor_distances(pts, order).max())
    rho_k = connectivity_radius(pts, order) if with_connectivity else math.nan
    mst = mst_longest_edge(pts) if order == 1 and with_connectivity else None
    return TrialRecord(trial, n, RadiusResult(order, rho_d, rho_k, mst), counts)


def run_trials(config: ExperimentConfig, workers: int = 1, with_connectivity: bool = True,
               with_counts: bool = True):
    jobs = [(config, t, with_connectivity, with_counts) for t in range(config.trials)]
    if workers <= 1 or config.trials == 1:
        return [_run_trial(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_trial, jobs, chunksize=max(1, config.trials // (4 * workers))))


def wilson_interval(successes: int, trials: int, z: float = WILSON_Z):
    if trials <= 0:
        return 0.0, 1.0
    p = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    centre = (p + z2 / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


@dataclass
class ExperimentReport:
    config: dict
    c_grid: list
    r_n: list
    theoretical: list
    empirical_delta: list
    empirical_kappa: list
    wilson_delta: list
    wilson_kappa: list
    sup_deviation_delta: float
    sup_deviation_kappa: float
    sup_gap_delta_kappa: float
    equality_rate: float
    degree_counts: list
    trials: list
    version: str = __version__
    metadata: dict = field(default_factory=dict)

    def to_dict(self, include_metadata: bool = False) -> dict:
        d = asdict(self)
        if not include_metadata:
            d.pop("metadata")
        return d

    def to_json(self, include_metadata: bool = False) -> str:
        return json.dumps(self.to_dict(include_metadata), indent=2, sort_keys=True) + "\n"

    def cdf_csv(self) -> str:
        buf = io.StringIO(newline="")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["c", "r_n", "empirical_delta", "empirical_kappa", "theoretical",
                    "wilson_lo", "wilson_hi"])
        for i, c in enumerate(self.c_grid):
            w.writerow([repr(c), repr(self.r_n[i]), repr(self.empirical_delta[i]),
                        repr(self.empirical_kappa[i]), repr(self.theoretical[i]),
                        repr(self.wilson_delta[i][0]), repr(self.wilson_delta[i][1])])
        return buf.getvalue()

    def trials_csv(self) -> str:
        buf = io.StringIO(newline="")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["trial", "n_points", "rho_delta", "rho_kappa", "mst_longest_edge"])
        for t in self.trials:
            w.writerow([t["trial"], t["n_points"], _csv_num(t["rho_delta"]),
                        _csv_num(t["rho_kappa"]), _csv_num(t["mst_longest_edge"])])
        return buf.getvalue()


def _csv_num(x):
    return "" if x is None else repr(x)


def run_cdf_experiment(config: ExperimentConfig, workers: int = 1) -> ExperimentReport:
    t0 = time.time()
    records = run_trials(config, workers)
    wall = time.time() - t0
    T = config.trials
    radii = [config.radius_at(c) for c in config.c_grid]
    theo = [limit_probability(c) for c in config.c_grid]
    emp_d, emp_k, wil_d, wil_k, deg = [], [], [], [], []
    for i, (c, r) in enumerate(zip(config.c_grid, radii)):
        hd = sum(rec.result.rho_delta <= r for rec in records)
        hk = sum(rec.result.rho_kappa <= r for rec in records)
        emp_d.append(hd / T)
        emp_k.append(hk / T)
        wil_d.append(list(wilson_interval(hd, T)))
        wil_k.append(list(wilson_interval(hk, T)))
        counts = np.array([rec.degree_k_counts[i] for rec in records], dtype=float)
        deg.append({"c": c, "r_n": r, "mean": float(counts.mean()),
                    "variance": float(counts.var(ddof=1)) if T > 1 else 0.0,
                    "limit_mean": math.exp(-c)})
    eq = sum(rec.result.rho_delta == rec.result.rho_kappa for rec in records) / T
    trials = [{"trial": rec.trial, "n_points": rec.n_points,
               "rho_delta": _jsonable(rec.result.rho_delta),
               "rho_kappa": _jsonable(rec.result.rho_kappa),
               "mst_longest_edge": (None if rec.result.mst_longest_edge is None
                                    else float(rec.result.mst_longest_edge))}
              for rec in records]
    return ExperimentReport(
        config=config.to_dict(), c_grid=list(config.c_grid), r_n=radii, theoretical=theo,
        empirical_delta=emp_d, empirical_kappa=emp_k, wilson_delta=wil_d, wilson_kappa=wil_k,
        sup_deviation_delta=max(abs(a - b) for a, b in zip(emp_d, theo)),
        sup_deviation_kappa=max(abs(a - b) for a, b in zip(emp_k, theo)),
        sup_gap_delta_kappa=max(abs(a - b) for a, b in zip(emp_d, emp_k)),
        equality_rate=eq, degree_counts=deg, trials=trials,
        metadata={"wall_clock_seconds": wall, "started_at": t0, "workers": workers},
    )


def run_equality_experiment(config: ExperimentConfig, workers: int = 1) -> float:
    """Fraction of trials where the min-degree and connectivity radii coincide exactly."""
    # r_n plays no role here, so small n (where it is undefined) is allowed
    records = run_trials(config, workers, with_counts=False)
    return sum(r.result.rho_delta == r.result.rho_kappa for r in records) / config.trials


def expected_degree_k_count(region: Region, n: int, r: float, k: int, process: str) -> float:
    """Exact expected number of degree-``k`` vertices at radius ``r`` (ball regions).

    Poisson process: ``n * int psi``. Uniform ``n`` points: the binomial analogue
    ``n * int C(n-1, k) V^k (1 - V)^(n-1-k) dx`` with ``V = |B(x, r) & region|``.
    """
    if process == "poisson":
        return psi_integral(region, n, r, k)
    if not region.is_ball:
        raise ValueError("exact expectation needs a ball region")
    R = region.radius

    def f(s):
        v = ball_ball_intersection_volume(R, r, s) / region.volume()
        return n * stats.binom.pmf(k, n - 1, v) * 4.0 * math.pi * s * s / region.volume()

    inner = max(R - r, 0.0)
    v_full = 4.0 / 3.0 * math.pi * r ** 3 / region.volume()
    interior = (n * stats.binom.pmf(k, n - 1, v_full) * 4.0 / 3.0 * math.pi * inner ** 3
                / region.volume())
    shell = integrate.quad(f, inner, R, epsabs=0.0, epsrel=1e-10, limit=500)[0]
    return float(interior + shell)


def run_degree_count_experiment(config: ExperimentConfig, c: float, workers: int = 1) -> dict:
    """Distribution of the number of degree-``k`` vertices at ``r_n(c)`` across trials."""
    cfg = ExperimentConfig(config.region, config.n, config.k, config.process,
                           config.trials, (c,), config.seed)
    records = run_trials(cfg, workers, with_connectivity=False)
    counts = np.array([rec.degree_k_counts[0] for rec in records])
    T = len(counts)
    mean = float(counts.mean())
    var = float(counts.var(ddof=1)) if T > 1 else 0.0
    lam = math.exp(-c)
    top = int(counts.max())
    pmf = {int(v): int(m) / T for v, m in zip(*np.unique(counts, return_counts=True))}
    r = cfg.radius_at(c)
    out = {
        "c": c, "r_n": r, "trials": T, "mean": mean, "variance": var,
        "standard_error": math.sqrt(var / T) if T > 1 else math.nan,
        "limit_mean": lam,
        "empirical_pmf": pmf,
        "poisson_pmf": {j: float(stats.poisson.pmf(j, lam)) for j in range(top + 1)},
        "counts": counts.tolist(),
    }
    if config.region.is_ball:
        out["expected_mean_finite_n"] = expected_degree_k_count(
            config.region, config.n, r, config.k, config.process)
    return out
