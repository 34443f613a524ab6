"""Deterministic plot artifacts: SVG cut diagrams, CSV meshes and PPM rasters."""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from . import kernels
from .catalog import DEFAULT_CONVENTIONS, Conventions
from .cuts import CONFIRMED, DEFAULT_WINDOW, POSSIBLY_SPURIOUS, SPURIOUS, CutSet, trace
from .evaluate import evaluate_array
from .expr import Expr


@dataclass(frozen=True)
class Window:
    x0: float = -2.0
    x1: float = 2.0
    y0: float = -2.0
    y1: float = 2.0
    nx: int = 200
    ny: int = 200

    def __post_init__(self):
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise ValueError("window needs x0 < x1 and y0 < y1")
        if self.nx < 2 or self.ny < 2:
            raise ValueError("grid needs at least 2 nodes per side")

    @property
    def bounds(self) -> tuple:
        return (self.x0, self.x1, self.y0, self.y1)

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        return np.linspace(self.x0, self.x1, self.nx), np.linspace(self.y0, self.y1, self.ny)

    def grid(self) -> np.ndarray:
        """Complex node array with row 0 at ``y0``."""
        xs, ys = self.nodes()
        return xs[None, :] + 1j * ys[:, None]


DEFAULT = Window(*DEFAULT_WINDOW)


# -- 2d ---------------------------------------------------------------------

_DASH = {CONFIRMED: None, POSSIBLY_SPURIOUS: "6,4", SPURIOUS: "1,4"}
_PALETTE = ("#1f4e9c", "#b8322a", "#2b8a3e", "#8a4fb0", "#c77700", "#137a7f", "#6b4b2a", "#b03a7a")

_SIZE = 600.0
_MARGIN = 40.0


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def plot2d(cuts: CutSet, window: Window = DEFAULT) -> str:
    """SVG diagram of ``cuts`` inside ``window``."""
    x0, x1, y0, y1 = window.bounds
    w = _SIZE
    h = _SIZE * (y1 - y0) / (x1 - x0)
    m = _MARGIN

    def sx(x):
        return m + (x - x0) / (x1 - x0) * w

    def sy(y):
        return m + (y1 - y) / (y1 - y0) * h

    out = io.StringIO()
    legend_h = 18 * (len(_provenances(cuts)) + 4)
    width, height = w + 2 * m, h + 2 * m + legend_h
    out.write(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">\n'
    )
    out.write(f'<rect x="{_fmt(m)}" y="{_fmt(m)}" width="{_fmt(w)}" height="{_fmt(h)}" fill="white" stroke="#444"/>\n')
    if x0 < 0 < x1:
        out.write(f'<line x1="{_fmt(sx(0))}" y1="{_fmt(m)}" x2="{_fmt(sx(0))}" y2="{_fmt(m + h)}" stroke="#bbb"/>\n')
    if y0 < 0 < y1:
        out.write(f'<line x1="{_fmt(m)}" y1="{_fmt(sy(0))}" x2="{_fmt(m + w)}" y2="{_fmt(sy(0))}" stroke="#bbb"/>\n')
    out.write(f'<text x="{_fmt(m)}" y="{_fmt(m + h + 14)}" font-size="11">{x0:g}</text>\n')
    out.write(f'<text x="{_fmt(m + w)}" y="{_fmt(m + h + 14)}" font-size="11" text-anchor="end">{x1:g}</text>\n')
    out.write(f'<text x="{_fmt(m - 4)}" y="{_fmt(m + h)}" font-size="11" text-anchor="end">{y0:g}</text>\n')
    out.write(f'<text x="{_fmt(m - 4)}" y="{_fmt(m + 10)}" font-size="11" text-anchor="end">{y1:g}</text>\n')
    out.write(f'<text x="{_fmt(m + w / 2)}" y="{_fmt(m - 12)}" font-size="13" text-anchor="middle">{_esc(str(cuts.source))}</text>\n')

    provs = _provenances(cuts)
    px_size = (x1 - x0) / w
    drawn = 0
    circles = []
    for cut in cuts:
        color = _PALETTE[provs.index(_prov_label(cut)) % len(_PALETTE)]
        dash = _DASH.get(cut.status)
        style = f'fill="none" stroke="{color}" stroke-width="2"'
        if dash:
            style += f' stroke-dasharray="{dash}" stroke-linecap="round"'
        for _, z in trace(cut, window.bounds, h=px_size):
            pts = _decimate(z, px_size * 0.5)
            if pts.size < 2:
                continue
            d = "M" + " L".join(f"{_fmt(sx(p.real))},{_fmt(sy(p.imag))}" for p in pts)
            out.write(f'<path d="{d}" {style}/>\n')
            drawn += 1
        for bp in cut.branch_points():
            if x0 <= bp.real <= x1 and y0 <= bp.imag <= y1:
                circles.append((round(bp.real, 9), round(bp.imag, 9), color))
    for x, y, color in sorted(set(circles)):
        out.write(f'<circle cx="{_fmt(sx(x))}" cy="{_fmt(sy(y))}" r="4" fill="white" stroke="{color}" stroke-width="1.5"/>\n')
    if not drawn:
        note = "no branch cuts" if not cuts.cuts else "no branch cuts in window"
        out.write(f'<text x="{_fmt(m + w / 2)}" y="{_fmt(m + h / 2)}" font-size="14" text-anchor="middle" fill="#666">{note}</text>\n')

    ly = m + h + 34
    for i, label in enumerate(provs):
        color = _PALETTE[i % len(_PALETTE)]
        out.write(f'<line x1="{_fmt(m)}" y1="{_fmt(ly - 4)}" x2="{_fmt(m + 24)}" y2="{_fmt(ly - 4)}" stroke="{color}" stroke-width="2"/>\n')
        out.write(f'<text x="{_fmt(m + 30)}" y="{_fmt(ly)}" font-size="11">{_esc(label)}</text>\n')
        ly += 18
    for status in (CONFIRMED, POSSIBLY_SPURIOUS, SPURIOUS):
        dash = _DASH[status]
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        out.write(f'<line x1="{_fmt(m)}" y1="{_fmt(ly - 4)}" x2="{_fmt(m + 24)}" y2="{_fmt(ly - 4)}" stroke="#444" stroke-width="2"{extra}/>\n')
        out.write(f'<text x="{_fmt(m + 30)}" y="{_fmt(ly)}" font-size="11">{status}</text>\n')
        ly += 18
    out.write("</svg>\n")
    return out.getvalue()


def _prov_label(cut) -> str:
    if not cut.provenance:
        return "unknown"
    p = cut.provenance[0]
    path = ",".join(str(i) for i in p.path)
    return f"{p.function}({p.argument}) at [{path}] via {p.approach}"


def _provenances(cuts: CutSet) -> list[str]:
    seen = []
    for c in cuts:
        label = _prov_label(c)
        if label not in seen:
            seen.append(label)
    return seen


def _decimate(z: np.ndarray, step: float) -> np.ndarray:
    keep = [0]
    for i in range(1, z.size - 1):
        if abs(z[i] - z[keep[-1]]) >= step:
            keep.append(i)
    if z.size > 1:
        keep.append(z.size - 1)
    return z[keep]


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


# -- 3d ---------------------------------------------------------------------


@dataclass(frozen=True)
class SurfaceGrid:
    window: Window
    values: np.ndarray
    mask: np.ndarray

    @property
    def re(self) -> np.ndarray:
        return self.values.real

    @property
    def im(self) -> np.ndarray:
        return self.values.imag

    def part(self, which: str) -> np.ndarray:
        if which not in ("re", "im"):
            raise ValueError("part must be 're' or 'im'")
        return self.re if which == "re" else self.im

    def to_csv(self) -> str:
        xs, ys = self.window.nodes()
        out = io.StringIO()
        out.write("x,y,re,im,mask\n")
        for j, y in enumerate(ys):
            for i, x in enumerate(xs):
                if self.mask[j, i]:
                    out.write(f"{x:.10g},{y:.10g},nan,nan,1\n")
                else:
                    v = self.values[j, i]
                    out.write(f"{x:.10g},{y:.10g},{v.real:.17g},{v.imag:.17g},0\n")
        return out.getvalue()


def plot3d(e: Expr, window: Window = DEFAULT, conventions: Conventions = DEFAULT_CONVENTIONS) -> SurfaceGrid:
    """Principal values of ``e`` on the window's grid; singular nodes masked."""
    values, mask = evaluate_array(e, window.grid(), conventions)
    return SurfaceGrid(window, values, mask)


# -- 32d ----------------------------------------------------------------------


def edge_overlay(surface: SurfaceGrid, threshold: float = 0.5, ratio: float = 4.0) -> np.ndarray:
    """Nodes next to a grid step that jumps above ``threshold`` and spikes above its neighbours."""
    return kernels.edge_mask(np.nan_to_num(surface.values), ~surface.mask, threshold, ratio)


def plot32d(
    e: Expr,
    window: Window = DEFAULT,
    part: str = "im",
    conventions: Conventions = DEFAULT_CONVENTIONS,
    threshold: float = 0.5,
) -> bytes:
    """Top-down binary PPM: grayscale of one part, blue masked nodes, red edges."""
    surface = plot3d(e, window, conventions)
    v = surface.part(part)
    ok = ~surface.mask
    gray = np.full(v.shape, 128.0)
    if ok.any():
        lo, hi = np.percentile(v[ok], [1, 99])
        if hi > lo:
            gray = np.clip((v - lo) / (hi - lo), 0.0, 1.0) * 255.0
    g = np.where(ok, np.round(gray), 0).astype(np.uint8)
    rgb = np.stack([g, g, g], axis=-1)
    rgb[surface.mask] = (0, 0, 255)
    rgb[edge_overlay(surface, threshold)] = (255, 0, 0)
    # image rows run from the top (largest imaginary part) down
    rgb = rgb[::-1]
    header = f"P6\n{window.nx} {window.ny}\n255\n".encode("ascii")
    return header + rgb.tobytes()


def read_ppm(data: bytes) -> np.ndarray:
    """Decode a binary PPM written by :func:`plot32d` into an ``(ny, nx, 3)`` array."""
    parts = data.split(b"\n", 3)
    if parts[0] != b"P6":
        raise ValueError("not a binary PPM")
    nx, ny = (int(t) for t in parts[1].split())
    return np.frombuffer(parts[3], dtype=np.uint8).reshape(ny, nx, 3)
