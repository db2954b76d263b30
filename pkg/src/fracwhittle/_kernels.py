"""Backend selection for the hot kernels.

The compiled extension is used when it imports cleanly. Setting the
environment variable ``FRACWHITTLE_PURE=1`` forces the numpy fallback.
"""

import os

from . import _pykernels

if os.environ.get("FRACWHITTLE_PURE", "").strip() not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = _impl.BACKEND
frac_coeffs = _impl.frac_coeffs
causal_filter = _impl.causal_filter
tail_sum = _impl.tail_sum
dft_power = _impl.dft_power
norm_ppf = _impl.norm_ppf

__all__ = ["BACKEND", "frac_coeffs", "causal_filter", "tail_sum", "dft_power", "norm_ppf"]
