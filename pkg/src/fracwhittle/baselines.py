"""Conventional and tapered local Whittle estimators used as comparators.

All three minimise

    R_LW(d) = log(mean_j lam_j^{2d} I(lam_j)) - 2 d mean_j log lam_j

over the same grid-plus-golden scheme as the exact estimator; they differ in
which periodogram I enters and over which frequencies.

* untapered: I_x at lam_1..lam_m.
* Hurvich-Chen: the series is first-differenced, multiplied by the complex
  taper h_t = (1 - e^{i 2 pi t / N}) / 2; the tapered ordinate at lam_j is
  paired with the frequency 2 pi (j + 1/2) / N in the objective, and the
  estimate for the differenced series is shifted back by one.
* Velasco: a Bartlett (triangular) data taper, with only every second Fourier
  frequency (j = 2, 4, ..., <= m) entering the objective.
"""

from enum import Enum
import math

import numpy as np

from ._errors import DegenerateInputError, InvalidParameterError
from ._optimize import minimize_bounded
from .elw import EstimatorConfig, finish_result, location_estimate, mean_weight
from .fracfilter import as_series


class TaperKind(str, Enum):
    NONE = "none"
    HURVICH_CHEN = "hurvich-chen"
    VELASCO = "velasco-bartlett"

    @property
    def variance_factor(self):
        return _VARIANCE_FACTOR[self]


_VARIANCE_FACTOR = {TaperKind.NONE: 1.0, TaperKind.HURVICH_CHEN: 1.5, TaperKind.VELASCO: 2.1}

# Frequency skip used with the Bartlett taper (taper order).
VELASCO_ORDER = 2


def _tapered_dft(y, taper, lam):
    """(2 pi sum |h_t|^2)^{-1/2} sum_t h_t y_t e^{i t lam} for each lam."""
    t = np.arange(1, y.shape[0] + 1)
    e = np.exp(1j * np.outer(lam, t))
    return (e @ (taper * y)) / math.sqrt(2.0 * np.pi * float(np.sum(np.abs(taper) ** 2)))


class _LWData:
    """Periodogram inputs for one series; handles the d-dependent weighted mean."""

    def __init__(self, x, mean_mode, m, taper):
        self.mean_mode = mean_mode
        n = x.shape[0]
        if taper is TaperKind.HURVICH_CHEN:
            y = np.diff(x)
            N = y.shape[0]
            h = 0.5 * (1.0 - np.exp(2j * np.pi * np.arange(1, N + 1) / N))
            j = np.arange(1, m + 1)
            # the taper mixes lam_j and lam_{j+1}; the ordinate is centred half a step up
            self.lam = 2.0 * np.pi * (j + 0.5) / N
            self.shift = 1.0
            # differencing removes any location shift
            self.mean_mode = "none"
            self.wx = _tapered_dft(y, h, 2.0 * np.pi * j / N)
            self.w1 = np.zeros_like(self.wx)
            return
        if taper is TaperKind.VELASCO:
            t = np.arange(1, n + 1)
            h = 1.0 - np.abs(2.0 * t - (n + 1)) / (n + 1)
            j = np.arange(VELASCO_ORDER, m + 1, VELASCO_ORDER)
        else:
            h = np.ones(n)
            j = np.arange(1, m + 1)
        self.lam = 2.0 * np.pi * j / n
        self.shift = 0.0
        if mean_mode == "weighted":
            self._xbar, self._x1 = float(np.mean(x)), float(x[0])
            self.wx = _tapered_dft(x, h, self.lam)
            self.w1 = _tapered_dft(np.ones(n), h, self.lam)
        else:
            self.wx = _tapered_dft(x - location_estimate(x, mean_mode), h, self.lam)
            self.w1 = np.zeros_like(self.wx)
        self.mean_mode = mean_mode

    @property
    def log_lam(self):
        return np.log(self.lam)

    def log_pgram(self, d):
        """log I at each frequency for each trial d (rows); d is on the original scale."""
        d = np.atleast_1d(d)
        if self.mean_mode == "weighted":
            mu = np.array([mean_weight(v) * self._xbar + (1 - mean_weight(v)) * self._x1 for v in d])
            w = self.wx[None, :] - mu[:, None] * self.w1[None, :]
        else:
            w = np.broadcast_to(self.wx, (d.shape[0], self.wx.shape[0]))
        with np.errstate(divide="ignore"):
            return np.log(w.real ** 2 + w.imag ** 2)

    def objective(self, d):
        """R_LW at original-scale d (array)."""
        d = np.atleast_1d(np.asarray(d, dtype=np.float64))
        dd = d - self.shift
        log_lam = self.log_lam
        a = 2.0 * dd[:, None] * log_lam[None, :] + self.log_pgram(d)
        amax = np.max(a, axis=1)
        with np.errstate(invalid="ignore"):
            lse = amax + np.log(np.mean(np.exp(a - amax[:, None]), axis=1))
        r = lse - 2.0 * dd * float(np.mean(log_lam))
        return np.where(np.isfinite(r), r, np.inf)

    def g_hat(self, d):
        dd = d - self.shift
        return float(np.mean(np.exp(2.0 * dd * self.log_lam + self.log_pgram(d)[0])))


def _fit(x, cfg, taper, name):
    cfg = cfg or EstimatorConfig()
    x = as_series(x)
    n = x.shape[0]
    m = cfg.bandwidth(n)
    if np.ptp(x) == 0.0:
        raise DegenerateInputError("degenerate input: constant series has no low-frequency power")
    data = _LWData(x, cfg.mean_mode, m, taper)

    def point(d):
        return float(data.objective(d)[0])

    d_hat, fmin, evals = minimize_bounded(
        data.objective, point, cfg.delta1, cfg.delta2, cfg.grid_step, cfg.tol)
    se = math.sqrt(taper.variance_factor) / (2.0 * math.sqrt(m))
    return finish_result(d_hat, fmin, data.g_hat(d_hat), evals, m, n, cfg, name, se)


def lw_estimate(x, cfg=None):
    """Conventional (untapered) local Whittle estimate; se = 1 / (2 sqrt(m))."""
    return _fit(x, cfg, TaperKind.NONE, "lw")


def tapered_estimate(x, cfg=None, taper=TaperKind.HURVICH_CHEN):
    """Tapered local Whittle estimate with se = sqrt(variance_factor) / (2 sqrt(m))."""
    taper = TaperKind(taper)
    if taper is TaperKind.NONE:
        raise InvalidParameterError("tapered_estimate needs a taper; use lw_estimate for none")
    return _fit(x, cfg, taper, "hc" if taper is TaperKind.HURVICH_CHEN else "velasco")
