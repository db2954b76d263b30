"""Compare the compiled kernels against the numpy fallback.

Kernel timings run both backends in this process. End-to-end timings start a
fresh interpreter per backend, since the backend is chosen at import time
(``FRACWHITTLE_PURE=1`` forces the fallback).

    python3 benchmarks/bench_backends.py [--repeat 5]
"""

import argparse
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from fracwhittle import _pykernels

try:
    from fracwhittle import _ckernels
except ImportError:
    _ckernels = None

END_TO_END = r"""
import json, timeit
from fracwhittle import _kernels
from fracwhittle.elw import estimate
from fracwhittle.simulate import SimSpec, gen_fractional, normal_stream
out = {"backend": _kernels.BACKEND}
for n in (500, 2048):
    x = gen_fractional(SimSpec(n, 0.4, 1))
    out[f"estimate n={n}"] = min(timeit.repeat(lambda: estimate(x), number=5, repeat=REPEAT)) / 5
out["normal_stream 1e6"] = min(timeit.repeat(lambda: normal_stream(0, 0, 10**6), number=1, repeat=REPEAT))
print(json.dumps(out))
"""


def best(fn, repeat, number):
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def kernel_cases():
    rng = np.random.default_rng(0)
    x = rng.normal(size=2048)
    coeffs = _pykernels.frac_coeffs(0.4, 127)
    b_re, b_im = rng.normal(size=(2, 142, 2048))
    u = rng.uniform(size=100_000)
    return {
        "frac_coeffs K=2047": lambda k: k.frac_coeffs(0.4, 2047),
        "causal_filter n=2048 K=128": lambda k: k.causal_filter(x, coeffs),
        "tail_sum n=2048": lambda k: k.tail_sum(x, 0.3, 0.4),
        "dft_power 142x2048": lambda k: k.dft_power(b_re, b_im, 0.4),
        "norm_ppf 1e5": lambda k: k.norm_ppf(u),
    }


def end_to_end(pure, repeat):
    env = dict(os.environ, FRACWHITTLE_PURE="1" if pure else "0")
    code = END_TO_END.replace("REPEAT", str(repeat))
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels not built; only the fallback can be timed", file=sys.stderr)

    print(f"{'case':<30} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    for name, call in kernel_cases().items():
        t_py = best(lambda: call(_pykernels), args.repeat, 3) * 1e3
        if _ckernels is None:
            print(f"{name:<30} {t_py:>12.3f} {'-':>12} {'-':>8}")
            continue
        t_c = best(lambda: call(_ckernels), args.repeat, 3) * 1e3
        print(f"{name:<30} {t_py:>12.3f} {t_c:>12.3f} {t_py / t_c:>7.1f}x")

    py = end_to_end(True, args.repeat)
    cy = end_to_end(False, args.repeat)
    for key in py:
        if key == "backend":
            continue
        t_py, t_c = py[key] * 1e3, cy[key] * 1e3
        label = f"{key} [{cy['backend']}]"
        print(f"{label:<30} {t_py:>12.3f} {t_c:>12.3f} {t_py / t_c:>7.1f}x")


if __name__ == "__main__":
    main()
