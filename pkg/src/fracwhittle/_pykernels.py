"""Pure numpy implementations of the hot kernels.

Every function here has a twin with the same signature in the compiled
``_ckernels`` extension. ``fracwhittle._kernels`` picks one at import time.
"""

import numpy as np

BACKEND = "python"


def frac_coeffs(d, K):
    """Coefficients (-d)_k / k! for k = 0..K by the multiplicative recursion."""
    k = np.arange(1, K + 1, dtype=np.float64)
    out = np.empty(K + 1, dtype=np.float64)
    out[0] = 1.0
    if K > 0:
        np.cumprod(((k - 1.0) - d) / k, out=out[1:])
    return out


def causal_filter(x, coeffs):
    """y_t = sum_{k=0}^{t} coeffs[k] * x[t-k] for t = 0..n-1 (direct sum)."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    n = x.shape[0]
    c = np.ascontiguousarray(coeffs, dtype=np.float64)[:n]
    return np.convolve(c, x)[:n]


def tail_sum(x, lam, d):
    """Boundary term sum_p dtilde_p e^{-i p lam} x_{n-p}.

    ``dtilde_p = sum_{k=p+1}^{n} pi_k(d) e^{i k lam}`` is built as a suffix sum.
    """
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[0]
    pi = frac_coeffs(d, n)
    k = np.arange(1, n + 1)
    terms = pi[1:] * np.exp(1j * lam * k)
    # suffix[p] = sum_{k >= p+1} terms, p = 0..n-1
    suffix = np.cumsum(terms[::-1])[::-1]
    p = np.arange(n)
    return complex(np.sum(suffix * np.exp(-1j * lam * p) * x[::-1]))


def dft_power(b_re, b_im, d, c_re=None, c_im=None, mu=0.0):
    """Sum over rows j of |sum_k pi_k(d) (B[j, k] - mu * C[j, k])|^2."""
    n = b_re.shape[1]
    pi = frac_coeffs(d, n - 1)
    re = b_re @ pi
    im = b_im @ pi
    if c_re is not None and mu != 0.0:
        re -= mu * (c_re @ pi)
        im -= mu * (c_im @ pi)
    return float(np.dot(re, re) + np.dot(im, im))


_A = (3.3871328727963666080e0, 1.3314166789178437745e2, 1.9715909503065514427e3,
      1.3731693765509461125e4, 4.5921953931549871457e4, 6.7265770927008700853e4,
      3.3430575583588128105e4, 2.5090809287301226727e3)
_B = (1.0, 4.2313330701600911252e1, 6.8718700749205790830e2, 5.3941960214247511077e3,
      2.1213794301586595867e4, 3.9307895800092710610e4, 2.8729085735721942674e4,
      5.2264952788528545610e3)
_C = (1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
      3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4)
_D = (1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
      1.05075007164441684324e-9)
_E = (6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
      2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7)
_F = (1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
      2.04426310338993978564e-15)


def _horner(coefs, r):
    acc = np.full_like(r, coefs[7])
    for c in coefs[6::-1]:
        acc = acc * r + c
    return acc


def norm_ppf(u):
    """Standard normal quantile (Wichura's AS241 rational approximation).

    Accurate to about 1e-16 relative on (0, 1); endpoints map to +-inf.
    """
    p = np.asarray(u, dtype=np.float64)
    q = p - 0.5
    out = np.empty_like(p)

    central = np.abs(q) <= 0.425
    if central.any():
        qc = q[central]
        r = 0.180625 - qc * qc
        out[central] = qc * _horner(_A, r) / _horner(_B, r)

    tail = ~central
    if tail.any():
        qt = q[tail]
        pt = p[tail]
        with np.errstate(divide="ignore", invalid="ignore"):
            r = np.sqrt(-np.log(np.where(qt < 0.0, pt, 1.0 - pt)))
            val = np.empty_like(r)
            near = r <= 5.0
            rn = r[near] - 1.6
            val[near] = _horner(_C, rn) / _horner(_D, rn)
            rf = r[~near] - 5.0
            val[~near] = _horner(_E, rf) / _horner(_F, rf)
        val[np.isinf(r)] = np.inf
        out[tail] = np.where(qt < 0.0, -val, val)
    return out
