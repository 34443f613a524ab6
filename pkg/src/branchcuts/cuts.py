"""Branch-cut components, cut sets, and their sampling.

A cut is one connected component in one of three representations:

* :class:`SemiAlgebraicCut` -- one coordinate fixed by an equation in the
  other (a constant, a rational function, or the k-th real root of a
  polynomial), the free coordinate ranging over an open interval;
* :class:`ParametricCut` -- ``z = s(a)`` for the real parameter ``a`` in an
  open interval;
* :class:`PolylineCut` -- an ordered list of points (numeric fallback).

Every representation exposes ``curve(t)`` over a real parameter interval;
tracing, sampling, comparison and plotting are written once on top of it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import EmptyInWindow
from .evaluate import evaluate_array
from .expr import Expr
from .poly import BiPoly, RealAlgebraic, UniPoly

CONFIRMED = "confirmed"
POSSIBLY_SPURIOUS = "possibly-spurious"
SPURIOUS = "spurious"
STATUSES = (CONFIRMED, POSSIBLY_SPURIOUS, SPURIOUS)

DEFAULT_WINDOW = (-2.0, 2.0, -2.0, 2.0)


@dataclass(frozen=True)
class Provenance:
    """Which multi-valued node induced a cut, and how it was computed."""

    path: tuple
    function: str
    argument: str
    approach: str

    def to_dict(self) -> dict:
        return {
            "path": list(self.path),
            "function": self.function,
            "argument": self.argument,
            "approach": self.approach,
        }


def _endpoint_text(v, inf: str) -> str:
    if v is None:
        return inf
    if isinstance(v, RealAlgebraic):
        return v.exact_text()
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return repr(float(v))


def _endpoint_float(v, default: float) -> float:
    return default if v is None else float(v)


@dataclass(frozen=True)
class Cut:
    provenance: tuple = ()
    status: str = CONFIRMED
    evidence: tuple = field(default=(), compare=False)
    note: str = field(default="", compare=False)

    kind = "abstract"

    def param_interval(self) -> tuple[float, float]:
        raise NotImplementedError

    def curve(self, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def identity_key(self):
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def branch_points(self) -> list[complex]:
        """Images of the finite parameter endpoints."""
        lo, hi = self.param_interval()
        out = []
        for end, step in ((lo, 1.0), (hi, -1.0)):
            if np.isfinite(end):
                p = _limit_point(self, end, step)
                if p is not None:
                    out.append(p)
        return out

    def with_status(self, status: str, evidence=(), note: str = "") -> Cut:
        return replace(self, status=status, evidence=tuple(evidence), note=note)

    def _base_dict(self) -> dict:
        return {
            "kind": self.kind,
            "fixed": None,
            "equation": None,
            "interval": None,
            "param_map": None,
            "param_range": None,
            "points": None,
            "provenance": [p.to_dict() for p in self.provenance],
            "status": self.status,
        }

    def to_dict(self) -> dict:
        d = self._base_dict()
        if self.evidence:
            d["evidence"] = [r.to_dict() for r in self.evidence]
        if self.note:
            d["note"] = self.note
        return d


def _limit_point(cut: Cut, end: float, step: float):
    scale = max(1.0, abs(end))
    ts = end + step * scale * np.array([2.0**-k for k in (20, 30, 40)])
    z = cut.curve(ts)
    z = z[np.isfinite(z)]
    if z.size == 0:
        return None
    return complex(z[-1])


# -- semi-algebraic ---------------------------------------------------------


@dataclass(frozen=True)
class ConstantEq:
    value: RealAlgebraic

    def text(self, free: str) -> str:
        return self.value.exact_text()

    def evaluate(self, t: np.ndarray) -> np.ndarray:
        return np.full(np.shape(t), float(self.value))

    def key(self):
        return ("const", self.value.exact_text())


@dataclass(frozen=True)
class RationalEq:
    num: UniPoly
    den: UniPoly

    def text(self, free: str) -> str:
        n = self.num.to_text(free)
        if self.den.degree == 0:
            return n
        return f"({n})/({self.den.to_text(free)})"

    def evaluate(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        with np.errstate(all="ignore"):
            return self.num.eval_float(t) / self.den.eval_float(t)

    def key(self):
        return ("rational", self.num.coeffs, self.den.coeffs)


@dataclass(frozen=True)
class RootEq:
    """The ``index``-th (from below) of ``nroots`` real roots in ``v`` of ``poly(u, v)``.

    ``poly`` is stored with the free coordinate in the first slot.
    """

    poly: BiPoly
    index: int
    nroots: int

    def text(self, free: str) -> str:
        return f"RootOf({self.poly.to_text(free, '_Y')}, index={self.index})"

    def evaluate(self, t: np.ndarray) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        cs = self.poly.coeffs_in_y()
        d = len(cs) - 1
        c = np.stack([p.eval_float(t) for p in cs], axis=-1)
        out = np.full(t.shape, np.nan)
        lead = c[:, -1]
        ok = lead != 0
        if not ok.any():
            return out
        mon = c[ok, :-1] / lead[ok, None]
        comp = np.zeros((mon.shape[0], d, d))
        comp[:, 0, :] = -mon[:, ::-1]
        if d > 1:
            idx = np.arange(d - 1)
            comp[:, idx + 1, idx] = 1.0
        roots = np.linalg.eigvals(comp)
        order = np.argsort(np.abs(roots.imag), axis=1)[:, : self.nroots]
        real = np.take_along_axis(roots, order, axis=1).real
        real.sort(axis=1)
        v = real[:, self.index]
        # Newton polish on the real root
        cc = c[ok]
        for _ in range(3):
            f = np.zeros_like(v)
            df = np.zeros_like(v)
            for j in range(d, -1, -1):
                df = df * v + f
                f = f * v + cc[:, j]
            step = np.where(df != 0, f / np.where(df != 0, df, 1.0), 0.0)
            small = np.abs(step) < 1e-6 * (1 + np.abs(v))
            v = np.where(small, v - step, v)
        out[ok] = v
        return out

    def key(self):
        return ("root", tuple(sorted(self.poly.terms.items())), self.index)


_COORD = {"x": "Re(z)", "y": "Im(z)"}


@dataclass(frozen=True)
class SemiAlgebraicCut(Cut):
    fixed: str = "y"
    equation: object = None
    lo: RealAlgebraic | None = None
    hi: RealAlgebraic | None = None

    kind = "semialgebraic"

    @property
    def free(self) -> str:
        return "x" if self.fixed == "y" else "y"

    def param_interval(self):
        return _endpoint_float(self.lo, -np.inf), _endpoint_float(self.hi, np.inf)

    def curve(self, t):
        t = np.asarray(t, dtype=float)
        v = self.equation.evaluate(t)
        if self.fixed == "y":
            return t + 1j * v
        return v + 1j * t

    def identity_key(self):
        return (
            "semialgebraic",
            self.fixed,
            self.equation.key(),
            _endpoint_text(self.lo, "-inf"),
            _endpoint_text(self.hi, "inf"),
        )

    def on_real_axis(self) -> bool:
        return self.fixed == "y" and isinstance(self.equation, ConstantEq) and self.equation.value == RealAlgebraic.rational(0)

    def interval_text(self) -> str:
        return f"({_endpoint_text(self.lo, '-inf')},{_endpoint_text(self.hi, 'inf')})"

    def describe(self) -> str:
        if self.on_real_axis():
            return f"z in {self.interval_text()}"
        lhs = _COORD[self.fixed]
        free = _COORD[self.free]
        eq = f"{lhs} = {self.equation.text(free)}"
        lo, hi = self.lo, self.hi
        if lo is None and hi is None:
            return eq
        if lo is None:
            return f"{eq} and {free} < {_endpoint_text(hi, 'inf')}"
        if hi is None:
            return f"{eq} and {free} > {_endpoint_text(lo, '-inf')}"
        return f"{eq} and {_endpoint_text(lo, '-inf')} < {free} < {_endpoint_text(hi, 'inf')}"

    def _base_dict(self):
        d = super()._base_dict()
        d["fixed"] = self.fixed
        d["equation"] = f"{_COORD[self.fixed]} = {self.equation.text(_COORD[self.free])}"
        d["interval"] = [_endpoint_text(self.lo, "-inf"), _endpoint_text(self.hi, "inf")]
        d["interval_approx"] = [v if np.isfinite(v) else None for v in self.param_interval()]
        if isinstance(self.equation, RootEq):
            pts = []
            for piece in trace(self, DEFAULT_WINDOW, h=0.05):
                pts.extend([[round(float(p.real), 12), round(float(p.imag), 12)] for p in piece[1]])
            d["points"] = pts
        return d


# -- parametric -------------------------------------------------------------


@dataclass(frozen=True)
class ParametricCut(Cut):
    param_map: Expr = None
    lo: object = None
    hi: object = None

    kind = "parametric"

    def param_interval(self):
        return _endpoint_float(self.lo, -np.inf), _endpoint_float(self.hi, np.inf)

    def curve(self, t):
        t = np.asarray(t, dtype=float)
        values, _ = evaluate_array(self.param_map, t + 0j, variable="a")
        return values

    def identity_key(self):
        return ("parametric", self.param_map, _endpoint_text(self.lo, "-inf"), _endpoint_text(self.hi, "inf"))

    def range_text(self) -> str:
        return f"({_endpoint_text(self.lo, '-inf')},{_endpoint_text(self.hi, 'inf')})"

    def describe(self) -> str:
        return f"z = {self.param_map}, a in {self.range_text()}"

    def _base_dict(self):
        d = super()._base_dict()
        d["param_map"] = str(self.param_map)
        d["param_range"] = [_endpoint_text(self.lo, "-inf"), _endpoint_text(self.hi, "inf")]
        return d


# -- polyline ---------------------------------------------------------------


@dataclass(frozen=True)
class PolylineCut(Cut):
    points: tuple = ()

    kind = "polyline"

    def param_interval(self):
        return 0.0, float(len(self.points) - 1)

    def curve(self, t):
        t = np.asarray(t, dtype=float)
        pts = np.asarray(self.points, dtype=complex)
        idx = np.arange(pts.size, dtype=float)
        return np.interp(t, idx, pts.real) + 1j * np.interp(t, idx, pts.imag)

    def identity_key(self):
        return ("polyline", self.points)

    def branch_points(self):
        return []

    def describe(self) -> str:
        a, b = self.points[0], self.points[-1]
        return (
            f"numeric curve of {len(self.points)} points from "
            f"{a.real:.6g}{a.imag:+.6g}*I to {b.real:.6g}{b.imag:+.6g}*I"
        )

    def _base_dict(self):
        d = super()._base_dict()
        d["points"] = [[float(p.real), float(p.imag)] for p in self.points]
        return d


# -- tracing and sampling --------------------------------------------------


def _initial_grid(lo: float, hi: float) -> np.ndarray:
    lin = np.linspace(0.0, 1.0, 65)[1:-1]
    near = 2.0 ** -np.arange(7, 41, dtype=float)
    far = 2.0 ** np.arange(0, 31, dtype=float)
    if np.isfinite(lo) and np.isfinite(hi):
        w = hi - lo
        t = np.concatenate([lo + w * lin, lo + w * near, hi - w * near])
    elif np.isfinite(lo):
        t = np.concatenate([lo + lin, lo + near, lo + far])
    elif np.isfinite(hi):
        t = np.concatenate([hi - lin, hi - near, hi - far])
    else:
        t = np.concatenate([[0.0], lin, -lin, far, -far])
    t = np.unique(t)
    return t[(t > lo) & (t < hi)]


def _bbox_hits(a: np.ndarray, b: np.ndarray, window, margin: float) -> np.ndarray:
    x0, x1, y0, y1 = window
    lox = np.minimum(a.real, b.real)
    hix = np.maximum(a.real, b.real)
    loy = np.minimum(a.imag, b.imag)
    hiy = np.maximum(a.imag, b.imag)
    return (hix >= x0 - margin) & (lox <= x1 + margin) & (hiy >= y0 - margin) & (loy <= y1 + margin)


def trace(cut: Cut, window=DEFAULT_WINDOW, h: float | None = None, max_points: int = 200_000):
    """Densely sample ``cut`` inside ``window``.

    Returns a list of ``(t, z)`` array pairs, one per run of consecutive
    samples inside the window; consecutive samples are at most ``h`` apart
    except where refinement stalls at a genuine gap.
    """
    x0, x1, y0, y1 = window
    if h is None:
        h = max(x1 - x0, y1 - y0) / 1000.0
    if isinstance(cut, PolylineCut):
        t = np.arange(len(cut.points), dtype=float)
    else:
        lo, hi = cut.param_interval()
        t = _initial_grid(lo, hi)
    z = cut.curve(t)
    for _ in range(60):
        ok = np.isfinite(z)
        a, b = z[:-1], z[1:]
        gap = np.abs(b - a)
        need = ok[:-1] & ok[1:] & (gap > h) & _bbox_hits(a, b, window, h)
        tmid = 0.5 * (t[:-1] + t[1:])
        need &= (tmid > t[:-1]) & (tmid < t[1:])
        if not need.any() or t.size > max_points:
            break
        tn = tmid[need]
        zn = cut.curve(tn)
        t = np.concatenate([t, tn])
        z = np.concatenate([z, zn])
        order = np.argsort(t, kind="stable")
        t, z = t[order], z[order]
    inside = np.isfinite(z) & (z.real >= x0) & (z.real <= x1) & (z.imag >= y0) & (z.imag <= y1)
    pieces = []
    start = None
    for i, flag in enumerate(np.append(inside, False)):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            pt, pz = t[start:i], z[start:i]
            # extend each end to where the curve leaves the window
            if start > 0 and np.isfinite(z[start - 1]):
                et, ez = _exit_point(cut, t[start], t[start - 1], window)
                pt, pz = np.concatenate([[et], pt]), np.concatenate([[ez], pz])
            if i < t.size and np.isfinite(z[i]):
                et, ez = _exit_point(cut, t[i - 1], t[i], window)
                pt, pz = np.concatenate([pt, [et]]), np.concatenate([pz, [ez]])
            pieces.append((pt, pz))
            start = None
    return pieces


def _exit_point(cut: Cut, t_in: float, t_out: float, window) -> tuple[float, complex]:
    """Bisect between an inside and an outside parameter for the last inside point."""
    x0, x1, y0, y1 = window
    a, b = t_in, t_out
    za = complex(cut.curve(np.array([a]))[0])
    for _ in range(60):
        m = 0.5 * (a + b)
        if m == a or m == b:
            break
        zm = complex(cut.curve(np.array([m]))[0])
        if np.isfinite(zm) and x0 <= zm.real <= x1 and y0 <= zm.imag <= y1:
            a, za = m, zm
        else:
            b = m
    return a, za


def traced_polyline(cut: Cut, window=DEFAULT_WINDOW, h: float | None = None) -> np.ndarray:
    """All traced pieces joined into one complex array with NaN separators."""
    parts = []
    for _, z in trace(cut, window, h):
        parts.append(z)
        parts.append(np.array([np.nan + 0j * np.nan]))
    if not parts:
        return np.zeros(0, dtype=complex)
    return np.concatenate(parts[:-1])


def _tangent(cut: Cut, t: float, t_lo: float, t_hi: float) -> complex:
    dt = 1e-6 * max(1.0, abs(t))
    a = max(t - dt, t_lo + 0.5 * (t - t_lo)) if np.isfinite(t_lo) else t - dt
    b = min(t + dt, t_hi - 0.5 * (t_hi - t)) if np.isfinite(t_hi) else t + dt
    za, zb = cut.curve(np.array([a, b]))
    d = complex(zb - za)
    return d / abs(d) if abs(d) > 0 else 1 + 0j


def sample_cut(cut: Cut, n: int, window=DEFAULT_WINDOW, h: float | None = None, offset: float = 0.0):
    """``n`` points spread evenly by arc length over the part of ``cut`` inside ``window``.

    Each point comes with a unit normal (the tangent turned clockwise).  The
    arc-length targets are ``L * (k + 1 + offset) / (n + 1)``, so ``offset``
    shifts every sample along the cut when a resample is needed.
    """
    if n < 2:
        raise ValueError("need at least two samples")
    pieces = trace(cut, window, h)
    seglens = []
    for t, z in pieces:
        seglens.append(np.concatenate([[0.0], np.cumsum(np.abs(np.diff(z)))]))
    total = sum(float(s[-1]) for s in seglens)
    if not pieces or total <= 0:
        raise EmptyInWindow(f"cut {cut.describe()} has no extent inside the window")
    lo, hi = cut.param_interval()
    out = []
    base = 0.0
    targets = [total * (k + 1 + offset) / (n + 1) for k in range(n)]
    ti = 0
    for (t, z), s in zip(pieces, seglens):
        length = float(s[-1])
        while ti < len(targets) and targets[ti] <= base + length:
            local = targets[ti] - base
            tt = float(np.interp(local, s, t))
            p = complex(cut.curve(np.array([tt]))[0])
            if not np.isfinite(p):
                p = complex(np.interp(local, s, z.real) + 1j * np.interp(local, s, z.imag))
            tangent = _tangent(cut, tt, lo, hi) if not isinstance(cut, PolylineCut) else _poly_tangent(z, s, local)
            out.append((p, -1j * tangent))
            ti += 1
        base += length
    return out


def _poly_tangent(z: np.ndarray, s: np.ndarray, local: float) -> complex:
    # averages the two adjacent segment directions at a vertex
    k = int(np.clip(np.searchsorted(s, local), 1, z.size - 1))
    d = complex(z[k] - z[k - 1])
    if abs(local - s[k]) < 1e-12 and k + 1 < z.size:
        d2 = complex(z[k + 1] - z[k])
        d = d / abs(d) + d2 / abs(d2) if abs(d) and abs(d2) else d
    return d / abs(d) if abs(d) else 1 + 0j


# -- comparison -------------------------------------------------------------


def _refined_distance(points: np.ndarray, cut: Cut, poly_t: np.ndarray, poly_z: np.ndarray) -> np.ndarray:
    """Distance from points to ``cut`` by golden-section search around the nearest vertex."""
    if poly_z.size < 2:
        return np.full(points.size, np.inf)
    d = np.abs(points[:, None] - poly_z[None, :])
    k = d.argmin(axis=1)
    a = poly_t[np.maximum(k - 1, 0)]
    b = poly_t[np.minimum(k + 1, poly_t.size - 1)]
    g = (np.sqrt(5) - 1) / 2
    c = b - g * (b - a)
    e = a + g * (b - a)
    fc = np.abs(cut.curve(c) - points)
    fe = np.abs(cut.curve(e) - points)
    for _ in range(80):
        left = fc < fe
        b = np.where(left, e, b)
        a = np.where(left, a, c)
        e_new = np.where(left, c, a + g * (b - a))
        c_new = np.where(left, b - g * (b - a), e)
        fe = np.where(left, fc, np.abs(cut.curve(e_new) - points))
        fc = np.where(left, np.abs(cut.curve(c_new) - points), fe)
        c, e = c_new, e_new
        # recompute the untouched side to keep arrays consistent
        fc = np.abs(cut.curve(c) - points)
        fe = np.abs(cut.curve(e) - points)
    return np.minimum(np.minimum(fc, fe), d.min(axis=1))


def same_point_set(a: Cut, b: Cut, window=(-8.0, 8.0, -8.0, 8.0), tol: float = 1e-9, n: int = 64) -> bool:
    """Decide whether two cuts describe the same point set.

    Identical representations compare by key; otherwise both cuts are
    sampled inside ``window`` and each sample must lie within ``tol`` of
    the other cut.
    """
    if type(a) is type(b) and a.identity_key() == b.identity_key():
        return True
    pa = trace(a, window, h=0.05)
    pb = trace(b, window, h=0.05)
    if not pa and not pb:
        return False
    if not pa or not pb:
        return False
    for x, px, y, py in ((a, pa, b, pb), (b, pb, a, pa)):
        zx = np.concatenate([z for _, z in px])
        if zx.size > n:
            zx = zx[np.linspace(0, zx.size - 1, n).astype(int)]
        ty = np.concatenate([t for t, _ in py])
        zy = np.concatenate([z for _, z in py])
        segs = _segments(py)
        coarse = kernels.min_dist(zx, segs)
        if np.any(coarse > 1e-3):
            return False
        if isinstance(y, PolylineCut):
            dist = coarse
        else:
            dist = _refined_distance(zx, y, ty, zy)
        if np.any(dist > tol):
            return False
    return True


def _segments(pieces) -> tuple[np.ndarray, np.ndarray]:
    a = []
    b = []
    for _, z in pieces:
        if z.size == 1:
            a.append(z)
            b.append(z)
        else:
            a.append(z[:-1])
            b.append(z[1:])
    return np.concatenate(a), np.concatenate(b)


def hausdorff(a_points: np.ndarray, b_pieces) -> float:
    """Largest distance from ``a_points`` to the polyline pieces ``b_pieces``."""
    if a_points.size == 0:
        return 0.0
    if not b_pieces:
        return np.inf
    return float(kernels.min_dist(a_points, _segments(b_pieces)).max())


# -- cut sets ---------------------------------------------------------------


def anchor_point(cut: Cut, window=(-8.0, 8.0, -8.0, 8.0)) -> complex | None:
    """The point halfway along the traced part of ``cut`` inside ``window``."""
    pieces = trace(cut, window, h=0.05)
    if not pieces:
        return None
    z = np.concatenate([zz for _, zz in pieces])
    s = np.concatenate([[0.0], np.cumsum(np.abs(np.diff(z)))])
    k = int(np.searchsorted(s, s[-1] / 2))
    return complex(z[min(k, z.size - 1)])


def _sort_key(c: Cut):
    # provenance first, then counter-clockwise from the positive real axis
    paths = [p.path for p in c.provenance] or [()]
    p = anchor_point(c)
    if p is None:
        angle = 2 * np.pi
    else:
        angle = float(np.arctan2(round(p.imag, 9), round(p.real, 9)) % (2 * np.pi))
    return (min(paths), round(angle, 6), c.describe())


@dataclass(frozen=True)
class CutSet:
    source: Expr
    cuts: tuple = ()

    def __iter__(self):
        return iter(self.cuts)

    def __len__(self):
        return len(self.cuts)

    def sorted(self) -> CutSet:
        return CutSet(self.source, tuple(sorted(self.cuts, key=_sort_key)))

    def to_dict(self) -> dict:
        return {"expression": str(self.source), "cuts": [c.to_dict() for c in self.cuts]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False)

    def describe(self) -> str:
        if not self.cuts:
            return "no branch cuts"
        parts = []
        for c in self.cuts:
            s = c.describe()
            if c.status != CONFIRMED:
                s += f" [{c.status}]"
            parts.append(s)
        return "; ".join(parts)

    def to_text(self) -> str:
        return f"{self.source}\n{self.describe()}"


_RANK = {CONFIRMED: 0, POSSIBLY_SPURIOUS: 1, SPURIOUS: 2}


def union_cuts(a: CutSet, b: CutSet, window=(-8.0, 8.0, -8.0, 8.0)) -> CutSet:
    """Union of two cut sets, merging cuts that describe the same point set."""
    merged: list[Cut] = []
    for c in list(a.cuts) + list(b.cuts):
        for i, m in enumerate(merged):
            if same_point_set(m, c, window):
                prov = m.provenance + tuple(p for p in c.provenance if p not in m.provenance)
                status = min((m.status, c.status), key=_RANK.__getitem__)
                merged[i] = replace(m, provenance=prov, status=status)
                break
        else:
            merged.append(c)
    return CutSet(a.source, tuple(merged)).sorted()
