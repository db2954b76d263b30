# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled twins of the kernels in ``_pykernels``.

Signatures and return types match the numpy versions exactly.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, log, sqrt, INFINITY

cnp.import_array()

BACKEND = "cython"


cdef void _fill_coeffs(double d, Py_ssize_t K, double* out) noexcept nogil:
    cdef Py_ssize_t k
    out[0] = 1.0
    for k in range(1, K + 1):
        out[k] = out[k - 1] * (((k - 1.0) - d) / k)


def frac_coeffs(double d, Py_ssize_t K):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(K + 1, dtype=np.float64)
    _fill_coeffs(d, K, &out[0])
    return out


cdef inline double _dot(const double* a, const double* b, Py_ssize_t n) noexcept nogil:
    # four accumulators break the add dependency chain
    cdef double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0
    cdef Py_ssize_t k = 0
    while k + 4 <= n:
        s0 += a[k] * b[k]
        s1 += a[k + 1] * b[k + 1]
        s2 += a[k + 2] * b[k + 2]
        s3 += a[k + 3] * b[k + 3]
        k += 4
    while k < n:
        s0 += a[k] * b[k]
        k += 1
    return (s0 + s1) + (s2 + s3)


def causal_filter(x, coeffs):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0]
    cdef Py_ssize_t kmax = min(np.shape(coeffs)[0], n)
    # reversed taps make every output a forward dot product over contiguous memory
    cdef const double[::1] rv = np.ascontiguousarray(np.asarray(coeffs, dtype=np.float64)[:kmax][::-1])
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t t, len_
    if n == 0 or kmax == 0:
        return out
    with nogil:
        for t in range(n):
            len_ = t + 1 if t < kmax else kmax
            ov[t] = _dot(&rv[kmax - len_], &xv[t + 1 - len_], len_)
    return out


def tail_sum(x, double lam, double d):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] pi = np.empty(n + 1, dtype=np.float64)
    cdef double* pp = &pi[0]
    cdef Py_ssize_t p
    cdef double sre = 0.0, sim = 0.0   # running dtilde_p
    cdef double are = 0.0, aim = 0.0   # accumulated result
    cdef double ang
    _fill_coeffs(d, n, pp)
    with nogil:
        # walk p from n-1 down to 0; dtilde_p = dtilde_{p+1} + pi_{p+1} e^{i(p+1)lam}
        p = n - 1
        while p >= 0:
            ang = (p + 1) * lam
            sre += pp[p + 1] * cos(ang)
            sim += pp[p + 1] * sin(ang)
            ang = -p * lam
            are += xv[n - 1 - p] * (sre * cos(ang) - sim * sin(ang))
            aim += xv[n - 1 - p] * (sre * sin(ang) + sim * cos(ang))
            p -= 1
    return complex(are, aim)


def dft_power(b_re, b_im, double d, c_re=None, c_im=None, double mu=0.0):
    cdef const double[:, ::1] br = np.ascontiguousarray(b_re, dtype=np.float64)
    cdef const double[:, ::1] bi = np.ascontiguousarray(b_im, dtype=np.float64)
    cdef const double[:, ::1] cr
    cdef const double[:, ::1] ci
    cdef bint shift = c_re is not None and mu != 0.0
    if shift:
        cr = np.ascontiguousarray(c_re, dtype=np.float64)
        ci = np.ascontiguousarray(c_im, dtype=np.float64)
    cdef Py_ssize_t m = br.shape[0]
    cdef Py_ssize_t n = br.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] pi = np.empty(n, dtype=np.float64)
    cdef double* pp = &pi[0]
    cdef Py_ssize_t j, k
    cdef double re, im, total = 0.0
    _fill_coeffs(d, n - 1, pp)
    with nogil:
        for j in range(m):
            re = _dot(pp, &br[j, 0], n)
            im = _dot(pp, &bi[j, 0], n)
            if shift:
                re -= mu * _dot(pp, &cr[j, 0], n)
                im -= mu * _dot(pp, &ci[j, 0], n)
            total += re * re + im * im
    return total


cdef double[8] _A = [3.3871328727963666080e0, 1.3314166789178437745e2, 1.9715909503065514427e3,
                     1.3731693765509461125e4, 4.5921953931549871457e4, 6.7265770927008700853e4,
                     3.3430575583588128105e4, 2.5090809287301226727e3]
cdef double[8] _B = [1.0, 4.2313330701600911252e1, 6.8718700749205790830e2, 5.3941960214247511077e3,
                     2.1213794301586595867e4, 3.9307895800092710610e4, 2.8729085735721942674e4,
                     5.2264952788528545610e3]
cdef double[8] _C = [1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
                     3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
                     2.27238449892691845833e-2, 7.74545014278341407640e-4]
cdef double[8] _D = [1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
                     1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
                     1.05075007164441684324e-9]
cdef double[8] _E = [6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
                     2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
                     2.71155556874348757815e-5, 2.01033439929228813265e-7]
cdef double[8] _F = [1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
                     7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
                     2.04426310338993978564e-15]


cdef inline double _horner(const double* c, double r) noexcept nogil:
    cdef double acc = c[7]
    cdef int i
    for i in range(6, -1, -1):
        acc = acc * r + c[i]
    return acc


cdef inline double _ppf(double p) noexcept nogil:
    cdef double q = p - 0.5
    cdef double r, val
    if q <= 0.425 and q >= -0.425:
        r = 0.180625 - q * q
        return q * _horner(_A, r) / _horner(_B, r)
    r = p if q < 0.0 else 1.0 - p
    if r <= 0.0:
        val = INFINITY
    else:
        r = sqrt(-log(r))
        if r <= 5.0:
            r -= 1.6
            val = _horner(_C, r) / _horner(_D, r)
        else:
            r -= 5.0
            val = _horner(_E, r) / _horner(_F, r)
    return -val if q < 0.0 else val


def norm_ppf(u):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] flat = np.ascontiguousarray(u, dtype=np.float64).ravel()
    cdef const double[::1] uv = flat
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(flat.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(uv.shape[0]):
            ov[i] = _ppf(uv[i])
    return out.reshape(np.shape(u))
