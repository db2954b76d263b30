"""Truncated fractional difference and integration filters.

Both filters assume a zero pre-sample: only x_1..x_n enter, so

    fracdiff(x, d)_t = sum_{k=0}^{t-1} pi_k(d) x_{t-k},   pi_k(d) = (-d)_k / k!

and ``fracint(u, d) = fracdiff(u, -d)``. The two are exact inverses of each
other on finite causal sequences.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import _kernels
from ._errors import InvalidInputError, InvalidParameterError

# Below this length (or effective kernel length) the direct sum beats the FFT.
DIRECT_THRESHOLD = 128


@dataclass(frozen=True)
class FracCoeffs:
    """Truncated binomial coefficients of (1 - L)^d."""

    d: float
    coeffs: np.ndarray

    @property
    def K(self):
        return self.coeffs.shape[0] - 1


def _check_d(d):
    d = float(d)
    if not math.isfinite(d):
        raise InvalidParameterError(f"memory parameter must be finite, got {d!r}")
    return d


def frac_coeffs(d, K):
    """Return ``FracCoeffs`` with pi_k = (-d)_k / k! for k = 0..K.

    Uses pi_k = pi_{k-1} (k - 1 - d) / k, so no gamma function is evaluated and
    the series terminates exactly when d is a nonnegative integer.
    """
    d = _check_d(d)
    K = int(K)
    if K < 0:
        raise InvalidParameterError(f"truncation order must be >= 0, got {K}")
    return FracCoeffs(d=d, coeffs=_kernels.frac_coeffs(d, K))


def as_series(x):
    """Validate and convert to a 1-D float64 array."""
    a = np.asarray(x, dtype=np.float64)
    if a.ndim != 1:
        raise InvalidInputError(f"series must be one-dimensional, got shape {a.shape}")
    if a.shape[0] == 0:
        raise InvalidInputError("series is empty")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError("series contains non-finite values")
    return a


def _fft_filter(x, coeffs):
    n = x.shape[0]
    nfft = 1 << (2 * n - 1).bit_length()
    y = np.fft.irfft(np.fft.rfft(x, nfft) * np.fft.rfft(coeffs, nfft), nfft)
    return y[:n]


def apply_filter(x, coeffs):
    """Causal truncated convolution, choosing the direct or FFT path."""
    n = x.shape[0]
    nz = np.flatnonzero(coeffs)
    klen = int(nz[-1]) + 1 if nz.size else 1
    # integer d terminates; a short exact kernel is both faster and exact
    if n < DIRECT_THRESHOLD or klen < DIRECT_THRESHOLD:
        return _kernels.causal_filter(x, coeffs[:klen])
    return _fft_filter(x, coeffs)


def fracdiff(x, d):
    """Apply (1 - L)^d to x_1..x_n with a zero pre-sample."""
    d = _check_d(d)
    x = as_series(x)
    return apply_filter(x, _kernels.frac_coeffs(d, x.shape[0] - 1))


def fracint(u, d):
    """Apply (1 - L)^{-d} to u_1..u_n with a zero pre-sample."""
    return fracdiff(u, -_check_d(d))


def fracdiff_direct(x, d):
    """O(n^2) double-loop reference for ``fracdiff``; used as a test oracle."""
    d = _check_d(d)
    x = as_series(x)
    n = x.shape[0]
    pi = _kernels.frac_coeffs(d, n - 1)
    y = np.zeros(n)
    for t in range(n):
        acc = 0.0
        for k in range(t + 1):
            acc += pi[k] * x[t - k]
        y[t] = acc
    return y
