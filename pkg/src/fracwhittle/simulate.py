"""Reproducible simulation of truncated fractionally integrated processes.

Innovations come from a Philox4x64 counter-based generator keyed by
``(seed, stream)``: stream ``r`` is a pure function of the pair, so
replications can be generated in any order or on any worker and still be
bit-identical. Uniforms are mapped to normals through a fixed rational
inverse-CDF approximation rather than numpy's samplers.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import _kernels
from ._errors import InvalidParameterError
from .fracfilter import fracint

_MASK64 = (1 << 64) - 1
INNOVATIONS = ("gaussian-iid", "linear-filter")


@dataclass(frozen=True)
class SimSpec:
    n: int
    d: float
    seed: int = 0
    innovation: str = "gaussian-iid"
    filter_coeffs: tuple = ()

    def __post_init__(self):
        if int(self.n) < 1:
            raise InvalidParameterError(f"n must be >= 1, got {self.n}")
        if not math.isfinite(float(self.d)):
            raise InvalidParameterError(f"d must be finite, got {self.d}")
        if self.innovation not in INNOVATIONS:
            raise InvalidParameterError(f"innovation must be one of {INNOVATIONS}")
        if self.innovation == "linear-filter":
            c = np.asarray(self.filter_coeffs, dtype=np.float64)
            if c.size == 0 or not np.all(np.isfinite(c)):
                raise InvalidParameterError("linear-filter innovations need finite, non-empty coefficients")


def uniform_stream(seed, stream, size):
    """``size`` doubles in the open interval (0, 1) from stream ``(seed, stream)``."""
    key = np.array([int(seed) & _MASK64, int(stream) & _MASK64], dtype=np.uint64)
    raw = np.random.Philox(key=key).random_raw(size)
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * (1.0 / 9007199254740992.0)


def normal_stream(seed, stream, size):
    """Standard normal draws by inverse-CDF transform of ``uniform_stream``."""
    return _kernels.norm_ppf(uniform_stream(seed, stream, size))


def innovations(spec, stream=0):
    """u_1..u_n for ``spec``; linear-filter mode draws a presample so u is stationary."""
    n = int(spec.n)
    if spec.innovation == "gaussian-iid":
        return normal_stream(spec.seed, stream, n)
    c = np.asarray(spec.filter_coeffs, dtype=np.float64)
    q = c.shape[0]
    eps = normal_stream(spec.seed, stream, n + q - 1)
    return np.convolve(eps, c, mode="valid")


def gen_fractional(spec, stream=0):
    """X_t = sum_{k<t} ((d)_k / k!) u_{t-k}, t = 1..n, with u from ``innovations``."""
    return fracint(innovations(spec, stream), spec.d)
