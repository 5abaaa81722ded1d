"""Command-line front end.

    rggradii radius --n 1e6 --k 0 --c 0 [--region unit-ball] [--json]
    rggradii simulate --config run.json --out DIR [--seed U64] [--threads N]
    rggradii quadrature --n 1e4,1e5,1e6 --k 0 --c 0 --out DIR
    rggradii selftest

Exit codes: 0 success, 1 I/O failure, 2 validation or domain error.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from ._core import BACKEND
from .asymptotics import (DomainError, boundary_layer_integral, boundary_layer_limit,
                          critical_radius, limit_probability, psi_integral, xi_from_c)
from .geometry import GeometryError, Region
from .harness import ConfigError, ExperimentConfig, run_cdf_experiment

EXIT_OK, EXIT_IO, EXIT_INVALID = 0, 1, 2


class CliError(Exception):
    def __init__(self, message, code=EXIT_INVALID):
        super().__init__(message)
        self.code = code


@dataclass
class RunManifest:
    command: str
    config_path: str | None
    output_dir: str
    seed: int | None
    version: str = __version__
    backend: str = BACKEND
    started_at: float = 0.0
    finished_at: float = 0.0
    files: dict = field(default_factory=dict)

    def add(self, path: Path):
        self.files[path.name] = hashlib.sha256(path.read_bytes()).hexdigest()

    def write(self, out: Path) -> Path:
        path = out / "manifest.json"
        path.write_text(json.dumps(asdict(self), indent=2, sort_keys=True) + "\n",
                        encoding="utf-8", newline="\n")
        return path


def _count(text: str) -> int:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(v) or v != int(v):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(v)


def _count_list(text: str) -> list[int]:
    if not text.strip():
        return []
    return [_count(t) for t in text.split(",") if t.strip()]


def _u64(text: str) -> int:
    v = _count(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _region(text: str) -> Region:
    try:
        return Region.parse(text)
    except GeometryError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _write_text(path: Path, text: str):
    path.write_text(text, encoding="utf-8", newline="\n")


def radius_values(n: int, k: int, c: float, region: Region) -> dict:
    if k < 0:
        raise DomainError("k must be nonnegative")
    xi = xi_from_c(region.boundary_area(), k, c)
    r = critical_radius(n, k, xi)
    return {"region": region.name, "n": n, "k": k, "c": c,
            "xi": xi, "r_n": r, "probability": limit_probability(c)}


def parse_radius_query(data: dict) -> dict:
    """Validate the input fields of a ``radius --json`` record (fail-closed)."""
    allowed = {"region", "n", "k", "c", "xi", "r_n", "probability"}
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown fields: {sorted(unknown)}")
    try:
        return {"n": int(data["n"]), "k": int(data["k"]), "c": float(data["c"]),
                "region": Region.parse(data["region"])}
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad radius record: {exc}") from exc


def cmd_radius(args) -> int:
    vals = radius_values(args.n, args.k, args.c, args.region)
    if args.json:
        print(json.dumps(vals, sort_keys=True))
    else:
        print(f"r_n          {vals['r_n']:.12g}")
        print(f"xi           {vals['xi']:.12g}")
        print(f"exp(-e^-c)   {vals['probability']:.12g}")
    return EXIT_OK


def load_config(path: str) -> ExperimentConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc}", EXIT_IO)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"config {path} is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise CliError("config must be a JSON object")
    return ExperimentConfig.from_dict(data)


def _prepare_out(out: str) -> Path:
    path = Path(out)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CliError(f"cannot create output directory {out}: {exc}", EXIT_IO)
    return path


def cmd_simulate(args) -> int:
    config = load_config(args.config)
    if args.seed is not None:
        config = ExperimentConfig.from_dict({**config.to_dict(), "seed": args.seed})
    out = _prepare_out(args.out)
    manifest = RunManifest("simulate", str(args.config), str(out), config.seed,
                           started_at=time.time())
    report = run_cdf_experiment(config, workers=args.threads)
    try:
        for name, text in (("report.json", report.to_json()),
                           ("trials.csv", report.trials_csv()),
                           ("cdf.csv", report.cdf_csv())):
            _write_text(out / name, text)
            manifest.add(out / name)
        manifest.finished_at = time.time()
        manifest.write(out)
    except OSError as exc:
        raise CliError(f"writing results failed: {exc}", EXIT_IO)
    print(f"sup |F_delta - exp(-e^-c)| = {report.sup_deviation_delta:.6f}")
    print(f"sup |F_kappa - exp(-e^-c)| = {report.sup_deviation_kappa:.6f}")
    print(f"sup |F_delta - F_kappa|    = {report.sup_gap_delta_kappa:.6f}")
    print(f"equality rate              = {report.equality_rate:.6f}")
    return EXIT_OK


def quadrature_rows(ns, k: int, c: float, region: Region) -> list[dict]:
    if not region.is_ball:
        raise CliError(f"quadrature needs a ball region, got {region.name}")
    if not ns:
        raise CliError("empty n list")
    xi = xi_from_c(region.boundary_area(), k, c)
    rows = []
    for n in ns:
        r = critical_radius(n, k, xi)
        val = psi_integral(region, n, r, k)
        rows.append({"n": n, "r_n": r, "psi_integral": val,
                     "lemma2_lhs": boundary_layer_integral(n, r, k),
                     "lemma2_rhs": boundary_layer_limit(xi, k),
                     "deviation": abs(val - math.exp(-c))})
    return rows


def cmd_quadrature(args) -> int:
    rows = quadrature_rows(args.n, args.k, args.c, args.region)
    buf = io.StringIO(newline="")
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({key: repr(v) if isinstance(v, float) else v for key, v in row.items()})
    if args.out:
        out = _prepare_out(args.out)
        manifest = RunManifest("quadrature", None, str(out), None, started_at=time.time())
        try:
            _write_text(out / "quadrature.csv", buf.getvalue())
            manifest.add(out / "quadrature.csv")
            manifest.finished_at = time.time()
            manifest.write(out)
        except OSError as exc:
            raise CliError(f"writing results failed: {exc}", EXIT_IO)
    sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_all

    ok = True
    for name, passed, detail in run_all():
        ok &= passed
        print(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
    return EXIT_OK if ok else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rggradii", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("radius", help="closed-form critical radius r_n, xi and the limit probability")
    r.add_argument("--n", type=_count, required=True)
    r.add_argument("--k", type=_count, default=0)
    r.add_argument("--c", type=float, required=True)
    r.add_argument("--region", type=_region, default=Region.unit_ball())
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_radius)

    s = sub.add_parser("simulate", help="Monte-Carlo CDFs of the critical radii")
    s.add_argument("--config", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--seed", type=_u64, default=None)
    s.add_argument("--threads", type=_count, default=os.cpu_count() or 1)
    s.set_defaults(func=cmd_simulate)

    q = sub.add_parser("quadrature", help="convergence table of the psi integral")
    q.add_argument("--n", type=_count_list, required=True, help="comma-separated, e.g. 1e4,1e5")
    q.add_argument("--k", type=_count, default=0)
    q.add_argument("--c", type=float, default=0.0)
    q.add_argument("--region", type=_region, default=Region.unit_ball())
    q.add_argument("--out", default=None)
    q.set_defaults(func=cmd_quadrature)

    t = sub.add_parser("selftest", help="quick identity and oracle checks")
    t.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (DomainError, GeometryError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
