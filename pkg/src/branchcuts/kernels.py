"""Grid kernels: numba-compiled loops with pure-numpy fallbacks.

Set ``BRANCHCUTS_NO_NUMBA=1`` to force the numpy versions (also used when
numba is not importable).  Both implementations of every kernel are kept
importable under ``*_numba`` / ``*_numpy`` names so tests and the benchmark
can compare them directly.

Grid conventions: a window ``[x0, x1] x [y0, y1]`` split into ``nx`` by
``ny`` cells; node ``k`` along x sits at ``x0 + (x1 - x0) * k / nx``.  Cell
arrays are indexed ``[row, col] = [y, x]``.  Cells are closed, so a point
on a grid line belongs to the cells on both sides.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("BRANCHCUTS_NO_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError("numba disabled by BRANCHCUTS_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        if args and callable(args[0]):
            return args[0]
        return wrap


BACKEND = "numba" if HAVE_NUMBA else "numpy"


# -- bivariate polynomial on a grid -----------------------------------------


def poly_grid_numpy(coeffs: np.ndarray, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """``out[j, i] = sum coeffs[a, b] * xs[i]**a * ys[j]**b``."""
    dx, dy = coeffs.shape
    # Horner in y of Horner-in-x column polynomials
    colvals = np.empty((dy, xs.size))
    for b in range(dy):
        acc = np.zeros(xs.size)
        for a in range(dx - 1, -1, -1):
            acc = acc * xs + coeffs[a, b]
        colvals[b] = acc
    out = np.zeros((ys.size, xs.size))
    for b in range(dy - 1, -1, -1):
        out = out * ys[:, None] + colvals[b][None, :]
    return out


@njit(cache=True)
def _horner2(c, x, y):
    dx, dy = c.shape
    out = 0.0
    for b in range(dy - 1, -1, -1):
        acc = 0.0
        for a in range(dx - 1, -1, -1):
            acc = acc * x + c[a, b]
        out = out * y + acc
    return out


@njit(cache=True)
def poly_grid_numba(coeffs, xs, ys):
    out = np.empty((ys.size, xs.size))
    for j in range(ys.size):
        for i in range(xs.size):
            out[j, i] = _horner2(coeffs, xs[i], ys[j])
    return out


# -- dense-grid cut oracle --------------------------------------------------


def oracle_cells_numpy(zero_c, value_c, lo, hi, x0, x1, y0, y1, nx, ny, sub):
    """Cells containing a point of ``{Z = 0} and lo < V < hi`` (sub-sampled).

    Each cell is split into ``sub x sub`` sub-cells; a sub-cell is on the set
    when ``Z`` takes both signs (or zero) on its corners and ``V`` at its
    centre lies in the open interval.
    """
    kx = np.arange(nx * sub + 1)
    ky = np.arange(ny * sub + 1)
    xs = x0 + (x1 - x0) * kx / (nx * sub)
    ys = y0 + (y1 - y0) * ky / (ny * sub)
    zv = poly_grid_numpy(zero_c, xs, ys)
    xc = x0 + (x1 - x0) * (kx[:-1] + 0.5) / (nx * sub)
    yc = y0 + (y1 - y0) * (ky[:-1] + 0.5) / (ny * sub)
    vv = poly_grid_numpy(value_c, xc, yc)
    corners = np.stack([zv[:-1, :-1], zv[:-1, 1:], zv[1:, :-1], zv[1:, 1:]])
    straddle = (corners.min(axis=0) <= 0.0) & (corners.max(axis=0) >= 0.0)
    inside = (vv > lo) & (vv < hi)
    hit = straddle & inside
    return hit.reshape(ny, sub, nx, sub).any(axis=(1, 3))


@njit(cache=True)
def oracle_cells_numba(zero_c, value_c, lo, hi, x0, x1, y0, y1, nx, ny, sub):
    out = np.zeros((ny, nx), dtype=np.bool_)
    nsx = nx * sub
    nsy = ny * sub
    zrow_lo = np.empty(nsx + 1)
    zrow_hi = np.empty(nsx + 1)
    xs = np.empty(nsx + 1)
    for k in range(nsx + 1):
        xs[k] = x0 + (x1 - x0) * k / nsx
    y = y0
    for k in range(nsx + 1):
        zrow_lo[k] = _horner2(zero_c, xs[k], y)
    for r in range(nsy):
        yt = y0 + (y1 - y0) * (r + 1) / nsy
        for k in range(nsx + 1):
            zrow_hi[k] = _horner2(zero_c, xs[k], yt)
        yc = y0 + (y1 - y0) * (r + 0.5) / nsy
        row = r // sub
        for k in range(nsx):
            a = zrow_lo[k]
            b = zrow_lo[k + 1]
            c = zrow_hi[k]
            d = zrow_hi[k + 1]
            mn = min(min(a, b), min(c, d))
            mx = max(max(a, b), max(c, d))
            if mn <= 0.0 and mx >= 0.0:
                col = k // sub
                if out[row, col]:
                    continue
                xc = x0 + (x1 - x0) * (k + 0.5) / nsx
                v = _horner2(value_c, xc, yc)
                if v > lo and v < hi:
                    out[row, col] = True
        for k in range(nsx + 1):
            zrow_lo[k] = zrow_hi[k]
    return out


# -- polyline rasterization -------------------------------------------------


def _cell_span(f, n):
    """Indices of the closed cells containing fractional coordinate ``f``."""
    i = np.floor(f)
    on_line = f == i
    lo = np.where(on_line, i - 1, i)
    return lo.astype(np.int64), i.astype(np.int64)


def rasterize_numpy(px, py, x0, x1, y0, y1, nx, ny):
    """Mark cells touched by a polyline; NaN vertices break the line."""
    out = np.zeros((ny, nx), dtype=bool)
    px = np.asarray(px, dtype=float)
    py = np.asarray(py, dtype=float)
    if px.size == 0:
        return out
    fx = (px - x0) / (x1 - x0) * nx
    fy = (py - y0) / (y1 - y0) * ny
    pts_x = [fx[np.isfinite(fx) & np.isfinite(fy)]]
    pts_y = [fy[np.isfinite(fx) & np.isfinite(fy)]]
    ax, ay, bx, by = fx[:-1], fy[:-1], fx[1:], fy[1:]
    ok = np.isfinite(ax) & np.isfinite(ay) & np.isfinite(bx) & np.isfinite(by)
    ax, ay, bx, by = ax[ok], ay[ok], bx[ok], by[ok]
    if ax.size:
        steps = np.ceil(4 * np.maximum(np.abs(bx - ax), np.abs(by - ay))).astype(np.int64) + 1
        steps = np.minimum(steps, 4 * (nx + ny) + 1)
        seg = np.repeat(np.arange(ax.size), steps)
        start = np.repeat(np.cumsum(steps) - steps, steps)
        t = (np.arange(seg.size) - start) / np.repeat(steps, steps)
        pts_x.append(ax[seg] + t * (bx[seg] - ax[seg]))
        pts_y.append(ay[seg] + t * (by[seg] - ay[seg]))
    fx = np.concatenate(pts_x)
    fy = np.concatenate(pts_y)
    keep = (fx >= 0) & (fx <= nx) & (fy >= 0) & (fy <= ny)
    fx, fy = fx[keep], fy[keep]
    ilo, ihi = _cell_span(fx, nx)
    jlo, jhi = _cell_span(fy, ny)
    for ii in (ilo, ihi):
        for jj in (jlo, jhi):
            good = (ii >= 0) & (ii < nx) & (jj >= 0) & (jj < ny)
            out[jj[good], ii[good]] = True
    return out


@njit(cache=True)
def _mark(out, fx, fy, nx, ny):
    if fx < 0 or fx > nx or fy < 0 or fy > ny:
        return
    i = np.floor(fx)
    j = np.floor(fy)
    i0 = int(i) - 1 if fx == i else int(i)
    j0 = int(j) - 1 if fy == j else int(j)
    for ii in (i0, int(i)):
        for jj in (j0, int(j)):
            if ii >= 0 and ii < nx and jj >= 0 and jj < ny:
                out[jj, ii] = True


@njit(cache=True)
def rasterize_numba(px, py, x0, x1, y0, y1, nx, ny):
    out = np.zeros((ny, nx), dtype=np.bool_)
    n = px.size
    cap = 4 * (nx + ny) + 1
    for k in range(n):
        fx = (px[k] - x0) / (x1 - x0) * nx
        fy = (py[k] - y0) / (y1 - y0) * ny
        if np.isfinite(fx) and np.isfinite(fy):
            _mark(out, fx, fy, nx, ny)
        if k + 1 < n:
            gx = (px[k + 1] - x0) / (x1 - x0) * nx
            gy = (py[k + 1] - y0) / (y1 - y0) * ny
            if not (np.isfinite(fx) and np.isfinite(fy) and np.isfinite(gx) and np.isfinite(gy)):
                continue
            steps = int(np.ceil(4 * max(abs(gx - fx), abs(gy - fy)))) + 1
            steps = min(steps, cap)
            for s in range(steps):
                t = s / steps
                _mark(out, fx + t * (gx - fx), fy + t * (gy - fy), nx, ny)
    return out


# -- discontinuity edges for the top-down view ------------------------------


def edge_mask_numpy(values, valid, threshold, ratio):
    """Nodes adjacent to a grid step whose size spikes above its neighbours.

    A step between two valid nodes is an edge when it exceeds ``threshold``
    and is more than ``ratio`` times the largest neighbouring step along the
    same line.
    """
    out = np.zeros(values.shape, dtype=bool)
    for axis in (0, 1):
        v = np.moveaxis(values, axis, 0)
        ok = np.moveaxis(valid, axis, 0)
        o = np.moveaxis(out, axis, 0)
        d = np.abs(v[1:] - v[:-1])
        good = ok[1:] & ok[:-1]
        d = np.where(good, d, np.nan)
        prev = np.full_like(d, 0.0)
        nxt = np.full_like(d, 0.0)
        prev[1:] = np.where(np.isnan(d[:-1]), 0.0, d[:-1])
        nxt[:-1] = np.where(np.isnan(d[1:]), 0.0, d[1:])
        with np.errstate(invalid="ignore"):
            e = good & (d > threshold) & (d > ratio * np.maximum(prev, nxt))
        o[1:] |= e
        o[:-1] |= e
    return out


@njit(cache=True)
def edge_mask_numba(values, valid, threshold, ratio):
    ny, nx = values.shape
    out = np.zeros((ny, nx), dtype=np.bool_)
    for j in range(ny):
        for i in range(nx - 1):
            if not (valid[j, i] and valid[j, i + 1]):
                continue
            d = abs(values[j, i + 1] - values[j, i])
            if d <= threshold:
                continue
            p = 0.0
            if i > 0 and valid[j, i - 1]:
                p = abs(values[j, i] - values[j, i - 1])
            q = 0.0
            if i + 2 < nx and valid[j, i + 2]:
                q = abs(values[j, i + 2] - values[j, i + 1])
            if d > ratio * max(p, q):
                out[j, i] = True
                out[j, i + 1] = True
    for i in range(nx):
        for j in range(ny - 1):
            if not (valid[j, i] and valid[j + 1, i]):
                continue
            d = abs(values[j + 1, i] - values[j, i])
            if d <= threshold:
                continue
            p = 0.0
            if j > 0 and valid[j - 1, i]:
                p = abs(values[j, i] - values[j - 1, i])
            q = 0.0
            if j + 2 < ny and valid[j + 2, i]:
                q = abs(values[j + 2, i] - values[j + 1, i])
            if d > ratio * max(p, q):
                out[j, i] = True
                out[j + 1, i] = True
    return out


# -- point to polyline distances -------------------------------------------


def min_dist_numpy(px, py, ax, ay, bx, by, chunk=2048):
    """Distance from each point to the nearest of the segments ``a -> b``."""
    out = np.full(px.size, np.inf)
    if ax.size == 0:
        return out
    dx = bx - ax
    dy = by - ay
    ll = dx * dx + dy * dy
    safe = np.where(ll > 0, ll, 1.0)
    for s in range(0, px.size, chunk):
        qx = px[s : s + chunk, None]
        qy = py[s : s + chunk, None]
        t = ((qx - ax) * dx + (qy - ay) * dy) / safe
        t = np.where(ll > 0, np.clip(t, 0.0, 1.0), 0.0)
        cx = ax + t * dx - qx
        cy = ay + t * dy - qy
        out[s : s + chunk] = np.sqrt((cx * cx + cy * cy).min(axis=1))
    return out


@njit(cache=True)
def min_dist_numba(px, py, ax, ay, bx, by):
    out = np.empty(px.size)
    for k in range(px.size):
        best = np.inf
        for s in range(ax.size):
            dx = bx[s] - ax[s]
            dy = by[s] - ay[s]
            ll = dx * dx + dy * dy
            t = 0.0
            if ll > 0:
                t = ((px[k] - ax[s]) * dx + (py[k] - ay[s]) * dy) / ll
                if t < 0.0:
                    t = 0.0
                elif t > 1.0:
                    t = 1.0
            cx = ax[s] + t * dx - px[k]
            cy = ay[s] + t * dy - py[k]
            d = cx * cx + cy * cy
            best = min(best, d)
        out[k] = np.sqrt(best)
    return out


# -- dispatch ----------------------------------------------------------------


def _f64(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def poly_grid(coeffs, xs, ys):
    if HAVE_NUMBA:
        return poly_grid_numba(_f64(coeffs), _f64(xs), _f64(ys))
    return poly_grid_numpy(_f64(coeffs), _f64(xs), _f64(ys))


def oracle_cells(zero_c, value_c, lo, hi, window, nx, ny, sub=4):
    x0, x1, y0, y1 = (float(v) for v in window)
    f = oracle_cells_numba if HAVE_NUMBA else oracle_cells_numpy
    return f(_f64(zero_c), _f64(value_c), float(lo), float(hi), x0, x1, y0, y1, int(nx), int(ny), int(sub))


def rasterize(px, py, window, nx, ny):
    x0, x1, y0, y1 = (float(v) for v in window)
    f = rasterize_numba if HAVE_NUMBA else rasterize_numpy
    return f(_f64(px), _f64(py), x0, x1, y0, y1, int(nx), int(ny))


def edge_mask(values, valid, threshold, ratio=4.0):
    values = np.ascontiguousarray(values, dtype=np.complex128)
    valid = np.ascontiguousarray(valid, dtype=np.bool_)
    f = edge_mask_numba if HAVE_NUMBA else edge_mask_numpy
    return f(values, valid, float(threshold), float(ratio))


def min_dist(points: np.ndarray, segments: tuple) -> np.ndarray:
    """Distances from complex ``points`` to segments given as ``(starts, ends)`` complex arrays."""
    a, b = segments
    args = (_f64(points.real), _f64(points.imag), _f64(a.real), _f64(a.imag), _f64(b.real), _f64(b.imag))
    if HAVE_NUMBA:
        return min_dist_numba(*args)
    return min_dist_numpy(*args)
