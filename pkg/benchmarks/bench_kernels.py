"""Compare the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--size 600]

Each kernel is run once to trigger compilation, then timed ``--repeat`` times
per backend.  Outputs of both backends are compared as a parity check.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from branchcuts import kernels
from branchcuts.expr import parse
from branchcuts.poly import re_im_decompose


def _best(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def cases(n: int):
    rb = re_im_decompose(parse("z^3 - 2*z + 1"))
    zero_c, value_c = rb.Q.coeff_matrix(), rb.P.coeff_matrix()
    w = (-4.0, 4.0, -4.0, 4.0)
    xs = np.linspace(-4, 4, n)
    grid = xs[None, :] + 1j * xs[:, None]
    vals = np.log(grid**2 + 0j)
    valid = np.ones(vals.shape, dtype=bool)
    rng = np.random.default_rng(0)
    t = np.linspace(0, 2 * np.pi, 20 * n)
    px, py = 3 * np.cos(t), 2 * np.sin(3 * t)
    pts = rng.uniform(-4, 4, 2000) + 1j * rng.uniform(-4, 4, 2000)
    seg = px + 1j * py
    f64 = kernels._f64
    return {
        "poly_grid": (
            lambda: kernels.poly_grid_numpy(f64(value_c), xs, xs),
            lambda: kernels.poly_grid_numba(f64(value_c), xs, xs),
        ),
        "oracle_cells": (
            lambda: kernels.oracle_cells_numpy(f64(zero_c), f64(value_c), -np.inf, 0.0, *w, n, n, 4),
            lambda: kernels.oracle_cells_numba(f64(zero_c), f64(value_c), -np.inf, 0.0, *w, n, n, 4),
        ),
        "rasterize": (
            lambda: kernels.rasterize_numpy(px, py, *w, n, n),
            lambda: kernels.rasterize_numba(px, py, *w, n, n),
        ),
        "edge_mask": (
            lambda: kernels.edge_mask_numpy(vals, valid, 0.5, 4.0),
            lambda: kernels.edge_mask_numba(vals, valid, 0.5, 4.0),
        ),
        "min_dist": (
            lambda: kernels.min_dist_numpy(pts.real, pts.imag, seg[:-1].real, seg[:-1].imag, seg[1:].real, seg[1:].imag),
            lambda: kernels.min_dist_numba(pts.real, pts.imag, seg[:-1].real, seg[:-1].imag, seg[1:].real, seg[1:].imag),
        ),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=600, help="grid side length")
    args = ap.parse_args(argv)

    print(f"numba available: {kernels.HAVE_NUMBA}")
    print(f"{'kernel':<14}{'numpy s':>12}{'numba s':>12}{'speedup':>10}  parity")
    for name, (np_fn, nb_fn) in cases(args.size).items():
        t_np, out_np = _best(np_fn, args.repeat)
        t_nb, out_nb = _best(nb_fn, args.repeat)
        if out_np.dtype == bool:
            same = float((out_np == out_nb).mean())
            parity = f"{same:.5f} agree"
        else:
            parity = f"{np.nanmax(np.abs(out_np - out_nb)):.2e} max diff"
        print(f"{name:<14}{t_np:12.4f}{t_nb:12.4f}{t_np / t_nb:10.1f}  {parity}")


if __name__ == "__main__":
    main()
