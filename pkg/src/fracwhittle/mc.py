"""Monte Carlo harness: bias / s.d. / MSE tables and kernel density curves.

Replication ``r`` draws its innovations from stream ``(seed, r)`` and reuses
them for every true d, so the output depends only on the configuration and
never on how replications are split across workers.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
import csv
import io
import json
import math

import numpy as np

from ._errors import (
    DegenerateInputError,
    FracWhittleError,
    HarnessError,
    InvalidParameterError,
)
from .baselines import TaperKind, lw_estimate, tapered_estimate
from .elw import EstimatorConfig, estimate
from .fracfilter import fracint
from .simulate import SimSpec, innovations

ESTIMATOR_NAMES = ("elw", "lw", "hc", "velasco")
MAX_FAILURE_RATE = 0.01
CHUNK = 25


def run_estimator(name, x, cfg):
    if name == "elw":
        return estimate(x, cfg)
    if name == "lw":
        return lw_estimate(x, cfg)
    if name == "hc":
        return tapered_estimate(x, cfg, TaperKind.HURVICH_CHEN)
    if name == "velasco":
        return tapered_estimate(x, cfg, TaperKind.VELASCO)
    raise InvalidParameterError(f"unknown estimator {name!r}; choose from {ESTIMATOR_NAMES}")


@dataclass(frozen=True)
class McConfig:
    n: int = 500
    m: int | None = None
    reps: int = 1000
    d_values: tuple = (0.0,)
    estimators: tuple = ("elw",)
    seed: int = 0
    workers: int = 1
    delta1: float = -6.0
    delta2: float = 6.0
    grid_step: float = 0.05
    tol: float = 1e-6
    density: bool = False
    density_points: int = 201

    def __post_init__(self):
        if int(self.reps) < 1:
            raise InvalidParameterError("reps must be >= 1")
        if len(self.d_values) == 0:
            raise InvalidParameterError("d_values must be non-empty")
        for d in self.d_values:
            if not self.delta1 <= d <= self.delta2:
                raise InvalidParameterError(f"true d={d} outside bounds [{self.delta1}, {self.delta2}]")
        for name in self.estimators:
            if name not in ESTIMATOR_NAMES:
                raise InvalidParameterError(f"unknown estimator {name!r}; choose from {ESTIMATOR_NAMES}")
        if int(self.workers) < 1:
            raise InvalidParameterError("workers must be >= 1")

    def estimator_config(self):
        return EstimatorConfig(m=self.m, delta1=self.delta1, delta2=self.delta2,
                               grid_step=self.grid_step, tol=self.tol)


@dataclass(frozen=True)
class McRow:
    estimator: str
    d: float
    bias: float
    sd: float
    mse: float
    failures: int
    reps: int


@dataclass(frozen=True)
class DensityCurve:
    estimator: str
    d: float
    bandwidth: float
    x: np.ndarray
    density: np.ndarray


@dataclass
class McReport:
    config: McConfig
    rows: list
    estimates: np.ndarray  # (reps, len(d_values), len(estimators)); nan marks a failure
    densities: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def row(self, estimator, d):
        for r in self.rows:
            if r.estimator == estimator and r.d == d:
                return r
        raise KeyError((estimator, d))

    def table_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["estimator", "d", "bias", "sd", "mse", "failures"])
        for r in self.rows:
            w.writerow([r.estimator, fmt(r.d), fmt(r.bias), fmt(r.sd), fmt(r.mse), r.failures])
        return buf.getvalue()

    def density_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["estimator", "d", "x", "density"])
        for c in self.densities:
            for xv, dv in zip(c.x, c.density):
                w.writerow([c.estimator, fmt(c.d), fmt(xv), fmt(dv)])
        return buf.getvalue()

    def to_json(self):
        doc = {
            "config": {k: (list(v) if isinstance(v, tuple) else v)
                       for k, v in self.config.__dict__.items() if k != "workers"},
            "rows": [r.__dict__ for r in self.rows],
            "densities": [
                {"estimator": c.estimator, "d": c.d, "bandwidth": c.bandwidth,
                 "x": c.x.tolist(), "density": c.density.tolist()}
                for c in self.densities
            ],
            "notes": list(self.notes),
        }
        return json.dumps(doc, indent=2)


def fmt(v):
    """17 significant digits, enough to round-trip any double."""
    return format(float(v), ".17g")


def silverman_bandwidth(samples):
    s = np.asarray(samples, dtype=np.float64)
    return 1.06 * float(np.std(s, ddof=1)) * s.shape[0] ** (-0.2)


def kde_grid(samples, bandwidth, points=201):
    s = np.asarray(samples, dtype=np.float64)
    return np.linspace(s.min() - 4.0 * bandwidth, s.max() + 4.0 * bandwidth, points)


def kde(samples, bandwidth=None, grid=None):
    """Gaussian kernel density estimate evaluated at ``grid``.

    ``bandwidth=None`` uses Silverman's rule 1.06 * s.d. * N^{-1/5}; ``grid=None``
    spans the samples plus four bandwidths either side.
    """
    s = np.asarray(samples, dtype=np.float64)
    if s.ndim != 1 or s.shape[0] < 2:
        raise InvalidParameterError("kde needs at least two samples")
    if np.ptp(s) == 0.0:
        raise DegenerateInputError("samples have zero variance: density is a single spike")
    h = silverman_bandwidth(s) if bandwidth is None else float(bandwidth)
    if not h > 0.0:
        raise InvalidParameterError(f"bandwidth must be positive, got {h}")
    g = kde_grid(s, h) if grid is None else np.asarray(grid, dtype=np.float64)
    z = (g[:, None] - s[None, :]) / h
    return np.exp(-0.5 * z * z).sum(axis=1) / (s.shape[0] * h * math.sqrt(2.0 * math.pi))


def _run_chunk(cfg, start, stop):
    ecfg = cfg.estimator_config()
    out = np.full((stop - start, len(cfg.d_values), len(cfg.estimators)), np.nan)
    for r in range(start, stop):
        u = innovations(SimSpec(cfg.n, 0.0, cfg.seed), stream=r)
        for i, d in enumerate(cfg.d_values):
            x = fracint(u, d)
            for k, name in enumerate(cfg.estimators):
                try:
                    out[r - start, i, k] = run_estimator(name, x, ecfg).d_hat
                except FracWhittleError:
                    pass
    return out


def simulate_estimates(cfg):
    """Raw estimates, shape (reps, len(d_values), len(estimators))."""
    bounds = [(s, min(s + CHUNK, cfg.reps)) for s in range(0, cfg.reps, CHUNK)]
    if cfg.workers == 1 or len(bounds) == 1:
        parts = [_run_chunk(cfg, a, b) for a, b in bounds]
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [pool.submit(_run_chunk, cfg, a, b) for a, b in bounds]
            parts = [f.result() for f in futures]
    return np.concatenate(parts, axis=0)


def summarize(cfg, est):
    rows, densities, notes = [], [], []
    for k, name in enumerate(cfg.estimators):
        for i, d in enumerate(cfg.d_values):
            col = est[:, i, k]
            ok = col[~np.isnan(col)]
            failures = int(col.shape[0] - ok.shape[0])
            if failures > MAX_FAILURE_RATE * cfg.reps:
                raise HarnessError(
                    f"{name} at d={d}: {failures} of {cfg.reps} replications failed")
            if ok.shape[0] == 0:
                raise HarnessError(f"{name} at d={d}: every replication failed")
            dev = ok - d
            bias = float(np.mean(dev))
            sd = float(np.std(ok, ddof=1)) if ok.shape[0] > 1 else 0.0
            mse = float(np.mean(dev * dev))
            rows.append(McRow(name, float(d), bias, sd, mse, failures, cfg.reps))
            if cfg.density and ok.shape[0] < 2:
                notes.append(f"no density for {name} at d={d}: needs at least two estimates")
            elif cfg.density:
                try:
                    h = silverman_bandwidth(ok)
                    grid = kde_grid(ok, h, cfg.density_points)
                    densities.append(DensityCurve(name, float(d), h, grid, kde(ok, h, grid)))
                except FracWhittleError as exc:
                    notes.append(f"no density for {name} at d={d}: {exc}")
    return rows, densities, notes


def run_mc(cfg):
    """Run the replication study described by ``cfg`` and return an ``McReport``.

    Failed replications are excluded and counted; more than 1% failures in any
    (estimator, d) cell raises ``HarnessError``.
    """
    est = simulate_estimates(cfg)
    rows, densities, notes = summarize(cfg, est)
    return McReport(config=cfg, rows=rows, estimates=est, densities=densities, notes=notes)
