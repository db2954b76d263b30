"""Discrete Fourier transforms at Fourier frequencies and the exact d.f.t.
decomposition of a fractionally differenced series.

Convention throughout: w_a(lam) = (2 pi n)^{-1/2} sum_{t=1}^n a_t e^{i t lam},
I_a(lam) = |w_a(lam)|^2 and lam_j = 2 pi j / n.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import _kernels
from ._errors import InvalidParameterError
from .fracfilter import _check_d, as_series, fracdiff


@dataclass(frozen=True)
class SpectralView:
    n: int
    freqs: np.ndarray
    dft: np.ndarray
    pgram: np.ndarray


def fourier_freqs(n, J):
    return 2.0 * np.pi * np.arange(1, J + 1) / n


def dft_full(a):
    """w_a(lam_j) for every j = 0..n-1."""
    a = np.asarray(a, dtype=np.float64)
    n = a.shape[0]
    lam = 2.0 * np.pi * np.arange(n) / n
    # n * ifft gives sum_{s=0}^{n-1} a_{s+1} e^{i s lam}; shift t = s + 1
    return np.fft.ifft(a) * n * np.exp(1j * lam) / math.sqrt(2.0 * np.pi * n)


def dft_grid(a, J):
    """``SpectralView`` of ``a`` at lam_1..lam_J."""
    a = as_series(a)
    n = a.shape[0]
    J = int(J)
    if not 1 <= J <= n - 1:
        raise InvalidParameterError(f"frequency count J={J} outside 1..{n - 1}")
    w = dft_full(a)[1:J + 1]
    return SpectralView(n=n, freqs=fourier_freqs(n, J), dft=w, pgram=w.real ** 2 + w.imag ** 2)


def periodogram(a, J):
    return dft_grid(a, J).pgram


def dft_direct(a, lam):
    """Direct O(n) sum for one frequency; test oracle for ``dft_grid``."""
    a = np.asarray(a, dtype=np.float64)
    t = np.arange(1, a.shape[0] + 1)
    return complex(np.sum(a * np.exp(1j * t * lam)) / math.sqrt(2.0 * np.pi * a.shape[0]))


def dn_poly(lam, d, n):
    """D_n(e^{i lam}; d) = sum_{k=0}^{n} pi_k(d) e^{i k lam}."""
    d = _check_d(d)
    n = int(n)
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    pi = _kernels.frac_coeffs(d, n)
    return complex(np.dot(pi, np.exp(1j * lam * np.arange(n + 1))))


def tail_correction(x, lam, d, direct=False):
    """Boundary term sum_{p=0}^{n-1} dtilde_p e^{-i p lam} x_{n-p}.

    ``dtilde_p = sum_{k=p+1}^{n} pi_k(d) e^{i k lam}``. The default path builds
    dtilde by a backward suffix sum in O(n); ``direct=True`` recomputes every
    dtilde_p from scratch in O(n^2) and exists only as a test oracle.
    """
    d = _check_d(d)
    x = as_series(x)
    lam = float(lam)
    if not direct:
        return _kernels.tail_sum(x, lam, d)
    n = x.shape[0]
    pi = _kernels.frac_coeffs(d, n)
    total = 0j
    for p in range(n):
        dt = 0j
        for k in range(p + 1, n + 1):
            dt += pi[k] * complex(math.cos(k * lam), math.sin(k * lam))
        total += dt * complex(math.cos(p * lam), -math.sin(p * lam)) * x[n - 1 - p]
    return total


def identity_residual(x, d, j):
    """Normalised residual of the exact d.f.t. identity at lam_j.

    With u = fracdiff(x, d) the identity reads
    w_u = D_n(e^{i lam}; d) w_x - (2 pi n)^{-1/2} e^{i n lam} Xtilde(lam; d),
    so the returned value is rounding error only.
    """
    d = _check_d(d)
    x = as_series(x)
    n = x.shape[0]
    j = int(j)
    if not 1 <= j <= n - 1:
        raise InvalidParameterError(f"frequency index j={j} outside 1..{n - 1}")
    lam = 2.0 * np.pi * j / n
    u = fracdiff(x, d)
    w_u = dft_full(u)[j]
    w_x = dft_full(x)[j]
    rhs = dn_poly(lam, d, n) * w_x - np.exp(1j * n * lam) * tail_correction(x, lam, d) / math.sqrt(2.0 * np.pi * n)
    return abs(w_u - rhs) / (abs(w_u) + 1.0)

