import os
import subprocess
import sys

import numpy as np
import pytest

from branchcuts import kernels

needs_numba = pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba unavailable")


@pytest.fixture
def rng():
    return np.random.default_rng(2013)


@needs_numba
def test_poly_grid_parity(rng):
    c = rng.normal(size=(4, 3))
    xs, ys = np.linspace(-2, 2, 37), np.linspace(-1, 3, 29)
    a = kernels.poly_grid_numpy(c, xs, ys)
    b = kernels.poly_grid_numba(c, xs, ys)
    assert np.allclose(a, b, rtol=1e-12, atol=1e-12)
    x, y = xs[None, :], ys[:, None]
    want = sum(c[i, j] * x**i * y**j for i in range(4) for j in range(3))
    assert np.allclose(a, want)


@needs_numba
def test_rasterize_parity(rng):
    p = rng.uniform(-2, 2, 300) + 1j * rng.uniform(-2, 2, 300)
    args = (p.real, p.imag, -2.0, 2.0, -2.0, 2.0, 50, 40)
    assert np.array_equal(kernels.rasterize_numpy(*args), kernels.rasterize_numba(*args))


@needs_numba
def test_edge_mask_parity(rng):
    v = rng.normal(size=(30, 40)) + 1j * rng.normal(size=(30, 40))
    v[:, 20:] += 5j
    valid = rng.uniform(size=v.shape) > 0.05
    a = kernels.edge_mask_numpy(v, valid, 0.5, 4.0)
    b = kernels.edge_mask_numba(v, valid, 0.5, 4.0)
    assert np.array_equal(a, b)


@needs_numba
def test_min_dist_parity(rng):
    pts = rng.normal(size=200) + 1j * rng.normal(size=200)
    a = rng.normal(size=50) + 1j * rng.normal(size=50)
    b = a + 0.1 * (rng.normal(size=50) + 1j * rng.normal(size=50))
    args = (pts.real, pts.imag, a.real, a.imag, b.real, b.imag)
    assert np.allclose(kernels.min_dist_numpy(*args), kernels.min_dist_numba(*args), atol=1e-14)


@needs_numba
def test_oracle_cells_parity(rng):
    # Im(w) = 0 and Re(w) < 0 for w = z^2 + z: P = x^2 - y^2 + x, Q = 2xy + y
    zero_c = np.array([[0.0, 1.0], [0.0, 2.0]])
    value_c = np.array([[0.0, 0.0, -1.0], [1.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
    args = (zero_c, value_c, -np.inf, 0.0, -2.0, 2.0, -2.0, 2.0, 40, 40, 4)
    a = kernels.oracle_cells_numpy(*args)
    assert np.array_equal(a, kernels.oracle_cells_numba(*args))
    assert a.any() and not a.all()


def test_min_dist_against_brute_force(rng):
    pts = rng.normal(size=30) + 1j * rng.normal(size=30)
    a = rng.normal(size=10) + 1j * rng.normal(size=10)
    b = a + rng.normal(size=10)
    d = kernels.min_dist(pts, (a, b))
    s = np.linspace(0, 1, 20001)
    dense = a[None, :] + s[:, None] * (b - a)[None, :]
    want = np.abs(pts[:, None] - dense.ravel()[None, :]).min(axis=1)
    assert np.allclose(d, want, atol=1e-4)


def test_env_flag_disables_numba():
    env = dict(os.environ, BRANCHCUTS_NO_NUMBA="1")
    code = "from branchcuts import kernels; print(kernels.HAVE_NUMBA, kernels.BACKEND)"
    r = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True)
    assert r.stdout.split() == ["False", "numpy"]
