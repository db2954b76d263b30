import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracwhittle._errors import InvalidParameterError
from fracwhittle.fracfilter import fracint
from fracwhittle.spectrum import (
    dft_direct,
    dft_full,
    dft_grid,
    dn_poly,
    identity_residual,
    periodogram,
    tail_correction,
)


def test_dft_of_constant_vanishes_on_grid():
    n = 40
    view = dft_grid(np.full(n, 3.7), n - 1)
    assert np.max(np.abs(view.dft)) < 1e-13


def test_dft_of_impulse():
    n = 32
    a = np.zeros(n)
    a[0] = 1.0
    view = dft_grid(a, n - 1)
    expected = np.exp(1j * view.freqs) / math.sqrt(2 * math.pi * n)
    np.testing.assert_allclose(view.dft, expected, rtol=1e-13, atol=1e-15)


def test_dft_matches_direct_sum():
    a = np.random.default_rng(0).normal(size=64)
    view = dft_grid(a, 63)
    ref = np.array([dft_direct(a, lam) for lam in view.freqs])
    assert np.max(np.abs(view.dft - ref)) <= 1e-12 * np.max(np.abs(ref))
    np.testing.assert_allclose(view.pgram, np.abs(ref) ** 2, rtol=1e-11)


@pytest.mark.parametrize("J", [0, 10])
def test_dft_grid_rejects_bad_count(J):
    with pytest.raises(InvalidParameterError):
        dft_grid(np.ones(10), J)


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 600), st.integers(0, 2**32 - 1))
def test_parseval_and_symmetry(n, seed):
    a = np.random.default_rng(seed).normal(size=n)
    w = dft_full(a)
    pg = np.abs(w) ** 2
    energy = np.sum(a * a) / (2 * math.pi)
    assert abs(np.sum(pg) - energy) <= 1e-10 * energy
    assert np.max(np.abs(pg[1:] - pg[1:][::-1])) <= 1e-10 * np.max(pg)
    assert np.all(periodogram(a, n - 1) >= 0)


def test_dn_poly_trivial_cases():
    for lam in (0.1, 1.0, 2.5):
        assert dn_poly(lam, 0.0, 17) == 1.0
        assert abs(dn_poly(lam, 1.0, 5) - (1 - cmath.exp(1j * lam))) < 1e-15


def test_dn_poly_low_frequency_approximation():
    lam = 2 * math.pi * 3 / 256
    d = 0.4
    approx = lam ** d * cmath.exp(-0.5j * math.pi * d)
    assert abs(dn_poly(lam, d, 256) / approx - 1) < 0.15


def test_tail_correction_trivial_cases():
    x = np.random.default_rng(1).normal(size=50)
    assert tail_correction(x, 0.3, 0.0) == 0
    assert tail_correction(np.zeros(50), 0.3, 1.7) == 0


@pytest.mark.parametrize("d", [1.3, -0.8])
def test_tail_correction_matches_double_loop(d):
    n = 200
    x = np.random.default_rng(2).normal(size=n)
    lam = 2 * math.pi * 5 / n
    fast = tail_correction(x, lam, d)
    ref = tail_correction(x, lam, d, direct=True)
    assert abs(fast - ref) <= 1e-10 * abs(ref)


def test_identity_residual_zero_for_identity_filter():
    x = np.random.default_rng(3).normal(size=300)
    for j in (1, 7, 150):
        assert identity_residual(x, 0.0, j) == 0.0


def test_identity_residual_examples():
    rng = np.random.default_rng(4)
    x = rng.normal(size=256)
    assert identity_residual(x, 2.3, 7) <= 1e-9
    y = fracint(rng.normal(size=256), 0.7)
    assert max(identity_residual(y, 0.7, j) for j in range(1, 17)) <= 1e-9


@pytest.mark.parametrize("n", [16, 128, 512])
@pytest.mark.parametrize("d", [-4.5, -2.0, -0.5, 0.0, 0.5, 1.0, 1.3, 2.3, 4.5])
def test_identity_grid(n, d):
    x = np.random.default_rng(n).normal(size=n)
    worst = max(identity_residual(x, d, j) for j in range(1, min(32, n - 1) + 1))
    assert worst <= 1e-8


def test_identity_residual_rejects_bad_index():
    with pytest.raises(InvalidParameterError):
        identity_residual(np.ones(8), 0.5, 8)
