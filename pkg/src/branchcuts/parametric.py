"""Branch cuts of ``f(g(z))`` by inverting ``g`` along the defining cut.

For each parametric piece ``w = c(a)`` of ``f``'s defining cut, the equation
``g(z) = c(a)`` is solved for ``z``.  Invertible outer layers of ``g`` are
peeled one at a time; when ``z`` occurs more than once and ``g`` is algebraic,
radicals are eliminated by resultants and the resulting polynomial is solved
in closed form when its degree allows.  Every candidate family ``z = s(a)``
is then checked numerically against ``g(s(a)) = c(a)`` and its parameter
range trimmed to where that holds.

When no closed form exists the equation is solved numerically on a grid of
parameter values and the roots are linked into polylines.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy
from scipy.optimize import linear_sum_assignment

from .catalog import ALPHA, DEFAULT_CONVENTIONS, Conventions, DefiningCut, ParamPiece
from .cuts import (
    CONFIRMED,
    POSSIBLY_SPURIOUS,
    ParametricCut,
    PolylineCut,
    _initial_grid,
)
from .errors import InversionFailure
from .evaluate import evaluate_array
from .expr import (
    Add,
    Expr,
    Func,
    ImagUnit,
    Mul,
    Neg,
    Pow,
    Rational,
    Var,
    add,
    const,
    contains_var,
    func,
    mul,
    neg,
    power,
    substitute,
)
from .poly import polynomial_argument

EXP_SHEETS = 2


@dataclass(frozen=True)
class Family:
    """A candidate solution ``z = mapping(a)``."""

    mapping: Expr
    principal: bool = True


# -- light simplification of constructed maps ------------------------------


def _neg(x: Expr) -> Expr:
    if isinstance(x, Neg):
        return x.child
    if isinstance(x, Rational) and x.value == 0:
        return x
    return neg(x)


def _scale(x: Expr, c: Fraction) -> Expr:
    if c == 1:
        return x
    if c == -1:
        return _neg(x)
    if isinstance(x, Rational):
        return const(x.value * c)
    if c < 0:
        return _neg(mul(const(-c), x))
    return mul(const(c), x)


def _pow(x: Expr, q: Fraction) -> Expr:
    q = Fraction(q)
    if q == 1:
        return x
    if isinstance(x, Neg) and q.denominator == 1:
        inner = _pow(x.child, q)
        return inner if q.numerator % 2 == 0 else _neg(inner)
    if isinstance(x, Rational) and q.denominator == 1:
        return const(x.value**q.numerator)
    return power(x, q)


def _root_of_unity(k: int, m: int) -> Expr | None:
    """``exp(2*pi*I*k/m)`` as ``(-1)^(2k/m)``; None for 1."""
    q = Fraction(2 * k, m) % 2
    if q == 0:
        return None
    if q == 1:
        return const(-1)
    return Pow(Neg(Rational(Fraction(1))), q)


def _times(w: Expr | None, x: Expr) -> Expr:
    if w is None:
        return x
    if isinstance(w, Neg) and isinstance(w.child, Rational) and w.child.value == 1:
        return _neg(x)
    return mul(w, x)


def _recip(x: Expr) -> Expr:
    return _pow(x, Fraction(-1))


def _constant_factor(factors) -> tuple[Fraction, list]:
    c = Fraction(1)
    rest = []
    for f in factors:
        if isinstance(f, Rational):
            c *= f.value
        elif isinstance(f, Neg) and isinstance(f.child, Rational):
            c *= -f.child.value
        else:
            rest.append(f)
    return c, rest


def _forward(name: str, t: Expr) -> Expr:
    """The single-valued function inverted by ``name``, applied to ``t``."""
    ipos = func("exp", mul(ImagUnit(), t))
    ineg = func("exp", _neg(mul(ImagUnit(), t)))
    pos = func("exp", t)
    negx = func("exp", _neg(t))
    half = Fraction(1, 2)
    if name == "arcsin":
        return mul(_scale(ImagUnit(), -half), add(ipos, _neg(ineg)))
    if name == "arccos":
        return _scale(add(ipos, ineg), half)
    if name == "arctan":
        return _neg(mul(ImagUnit(), add(ipos, _neg(ineg)), _recip(add(ipos, ineg))))
    if name == "arccot":
        return mul(ImagUnit(), add(ipos, ineg), _recip(add(ipos, _neg(ineg))))
    if name == "arcsinh":
        return _scale(add(pos, _neg(negx)), half)
    if name == "arccosh":
        return _scale(add(pos, negx), half)
    if name == "arctanh":
        return mul(add(pos, _neg(negx)), _recip(add(pos, negx)))
    if name == "arccoth":
        return mul(add(pos, negx), _recip(add(pos, _neg(negx))))
    raise InversionFailure(f"cannot invert {name}")


# -- peeling ---------------------------------------------------------------


def _peel(h: Expr, t: Expr, principal: bool, sheets: int) -> list[Family]:
    """Solve ``h(z) = t`` for z; ``t`` is an expression in ``a``."""
    if isinstance(h, Var):
        return [Family(t, principal)]
    holders = [c for c in h.children() if contains_var(c, "z")]
    if len(holders) != 1:
        return _algebraic(h, t, principal)
    inner = holders[0]
    if isinstance(h, Neg):
        return _peel(inner, _neg(t), principal, sheets)
    if isinstance(h, Add):
        rest = [_neg(c) for c in h.terms if c is not inner]
        return _peel(inner, add(t, *rest), principal, sheets)
    if isinstance(h, Mul):
        c, rest = _constant_factor([f for f in h.factors if f is not inner])
        target = _scale(t, 1 / c)
        for f in rest:
            target = mul(target, _recip(f)) if not isinstance(f, ImagUnit) else _neg(mul(ImagUnit(), target))
        return _peel(inner, target, principal, sheets)
    if isinstance(h, Pow):
        return _peel_power(inner, h.exponent, t, principal, sheets)
    if isinstance(h, Func):
        if h.name == "sqrt":
            return _peel_power(inner, Fraction(1, 2), t, principal, sheets)
        if h.name == "ln":
            return _peel(inner, func("exp", t), principal, sheets)
        if h.name == "exp":
            out = []
            for k in range(-sheets, sheets + 1):
                target = func("ln", t)
                if k:
                    target = add(target, _scale(func("ln", const(-1)), Fraction(2 * k)))
                out.extend(_peel(inner, target, principal and k == 0, sheets))
            return out
        return _peel(inner, _forward(h.name, t), principal, sheets)
    raise InversionFailure(f"cannot invert {h}")


def _peel_power(inner: Expr, q: Fraction, t: Expr, principal: bool, sheets: int) -> list[Family]:
    """Solve ``inner^q = t``: all values ``t^(1/q)`` times the matching roots of unity."""
    p, r = q.numerator, q.denominator
    if p < 0:
        t = _recip(t)
        p = -p
    # inner = exp((r/p) (Log t + 2 pi i k)), distinct for k mod p
    base = _pow(t, Fraction(r, p))
    out = []
    for k in range(p):
        w = _root_of_unity(k * r, p)
        out.extend(_peel(inner, _times(w, base), principal and k == 0, sheets))
    return out


# -- algebraic route -------------------------------------------------------

_ZS = sympy.Symbol("z")
_WS = sympy.Symbol("w")


def _to_sym(e: Expr, rels: list) -> sympy.Expr:
    if isinstance(e, Var):
        if e.name != "z":
            raise InversionFailure(f"unexpected variable {e.name}")
        return _ZS
    if isinstance(e, Rational):
        return sympy.Rational(e.value.numerator, e.value.denominator)
    if isinstance(e, ImagUnit):
        return sympy.I
    if isinstance(e, Neg):
        return -_to_sym(e.child, rels)
    if isinstance(e, Add):
        return sympy.Add(*(_to_sym(c, rels) for c in e.terms))
    if isinstance(e, Mul):
        return sympy.Mul(*(_to_sym(c, rels) for c in e.factors))
    q = None
    if isinstance(e, Pow):
        q, b = e.exponent, e.base
    elif isinstance(e, Func) and e.name == "sqrt":
        q, b = Fraction(1, 2), e.arg
    if q is None:
        raise InversionFailure(f"{e} is not algebraic")
    bs = _to_sym(b, rels)
    if q.denominator == 1:
        return bs ** int(q)
    y = sympy.Symbol(f"_r{len(rels)}")
    rel = sympy.numer(sympy.together(y ** q.denominator - bs ** q.numerator))
    rels.append((y, sympy.expand(rel)))
    return y


def _from_sym(s) -> Expr:
    if s.is_Symbol:
        if s == _ZS:
            return Var("z")
        if s == _WS:
            return Var("w")
        raise InversionFailure(f"unexpected symbol {s}")
    if s is sympy.I:
        return ImagUnit()
    if s.is_Rational:
        return const(Fraction(int(s.p), int(s.q)))
    if s.is_Add:
        return add(*(_from_sym(a) for a in s.args))
    if s.is_Mul:
        c = Fraction(1)
        rest = []
        for a in s.args:
            if a.is_Rational:
                c *= Fraction(int(a.p), int(a.q))
            else:
                rest.append(_from_sym(a))
        body = mul(*rest) if rest else const(1)
        return _scale(body, c)
    if s.is_Pow and s.exp.is_Rational:
        return _pow(_from_sym(s.base), Fraction(int(s.exp.p), int(s.exp.q)))
    raise InversionFailure(f"cannot convert {s}")


def _solve_factor(F: sympy.Poly, rationalized: bool) -> list[Family]:
    """Closed-form roots in z of one factor, as maps in the symbol w."""
    degs = [m[0] for m in F.monoms() if m[0] > 0]
    step = int(np.gcd.reduce(degs))
    n = F.degree() // step
    if n > 2:
        raise InversionFailure(f"degree {F.degree()} has no closed form here")
    coeffs = [sympy.expand(F.coeff_monomial(_ZS ** (step * j))) for j in range(n + 1)]
    if n == 1:
        us = [(sympy.simplify(-coeffs[0] / coeffs[1]), True)]
    else:
        c0, c1, c2 = coeffs
        disc = sympy.factor_terms(sympy.expand(c1**2 - 4 * c2 * c0))
        root = sympy.sqrt(disc)
        us = [
            (sympy.expand(-c1 / (2 * c2)) + root / (2 * c2), True),
            (sympy.expand(-c1 / (2 * c2)) - root / (2 * c2), False),
        ]
    out = []
    for u, top in us:
        ue = _from_sym(u)
        base = _pow(ue, Fraction(1, step)) if step > 1 else ue
        for k in range(step):
            w = _root_of_unity(k, step)
            out.append(Family(_times(w, base), top and k == 0 and not rationalized))
    return out


def _algebraic(h: Expr, t: Expr, principal: bool) -> list[Family]:
    rels: list = []
    expr = _to_sym(h, rels)
    num = sympy.numer(sympy.together(expr - _WS))
    num = sympy.expand(num)
    for y, rel in reversed(rels):
        if num.has(y):
            num = sympy.expand(sympy.resultant(num, rel, y))
    if num == 0:
        raise InversionFailure(f"elimination for {h} degenerated")
    _, factors = sympy.factor_list(num, _ZS, _WS, gaussian=True)
    families = []
    for fac, _ in factors:
        poly = sympy.Poly(fac, _ZS)
        if poly.degree() < 1:
            continue
        families.extend(_solve_factor(poly, bool(rels)))
    out = []
    for fam in families:
        mapped = substitute(fam.mapping, "w", t)
        out.append(Family(mapped, fam.principal and principal))
    return out


# -- consistency and ranges ------------------------------------------------


def _matches(g: Expr, fam: Family, piece: ParamPiece, a: np.ndarray, conventions) -> np.ndarray:
    """Per parameter value: 1 if g(s(a)) = c(a), 0 if not, -1 if undecidable."""
    z, zbad = evaluate_array(fam.mapping, a + 0j, conventions, variable="a")
    target, _ = evaluate_array(piece.mapping, a + 0j, conventions, variable="a")
    gz, gbad = evaluate_array(g, np.where(zbad, 0, z), conventions)
    out = np.where(np.abs(gz - target) <= 1e-7 * np.abs(target), 1, 0)
    out[zbad | gbad] = -1
    return out


def _bisect(g, fam, piece, a0: float, a1: float, conventions, iters: int = 60) -> float:
    f0 = _matches(g, fam, piece, np.array([a0]), conventions)[0]
    for _ in range(iters):
        m = 0.5 * (a0 + a1)
        if m in (a0, a1):
            break
        fm = _matches(g, fam, piece, np.array([m]), conventions)[0]
        if fm == f0:
            a0 = m
        else:
            a1 = m
    return 0.5 * (a0 + a1)


def valid_ranges(g: Expr, fam: Family, piece: ParamPiece, conventions=DEFAULT_CONVENTIONS) -> list[tuple]:
    """Sub-intervals of the piece's range on which the family solves ``g(z) = c(a)``.

    Endpoints of the piece are kept exact; interior endpoints found by
    bisection are floats.
    """
    lo = -np.inf if piece.lo is None else float(piece.lo)
    hi = np.inf if piece.hi is None else float(piece.hi)
    a = _initial_grid(lo, hi)
    flags = _matches(g, fam, piece, a, conventions)
    known = flags >= 0
    a, flags = a[known], flags[known]
    if flags.size == 0 or not flags.any():
        return []
    if flags.all():
        return [(piece.lo, piece.hi)]
    out = []
    start = piece.lo if flags[0] else None
    inside = bool(flags[0])
    for i in range(1, flags.size):
        if bool(flags[i]) == inside:
            continue
        b = _bisect(g, fam, piece, float(a[i - 1]), float(a[i]), conventions)
        if inside:
            out.append((start, b))
        else:
            start = b
        inside = bool(flags[i])
    if inside:
        out.append((start, piece.hi))
    return out


# -- numeric fallback ------------------------------------------------------


def _alpha_grid(lo: float, hi: float) -> np.ndarray:
    lin = np.linspace(0.0, 1.0, 66)[1:-1]
    geo = 2.0 ** np.arange(0, 11, dtype=float)
    near = 2.0 ** -np.arange(7, 41, dtype=float)
    parts = []
    if np.isfinite(lo) and np.isfinite(hi):
        w = hi - lo
        parts += [lo + w * lin, lo + w * near, hi - w * near]
    elif np.isfinite(lo):
        parts += [lo + lin, lo + near, lo + geo]
    elif np.isfinite(hi):
        parts += [hi - lin, hi - near, hi - geo]
    else:
        parts += [np.array([0.0]), lin, -lin, geo, -geo]
    t = np.unique(np.concatenate(parts))
    return t[(t > lo) & (t < hi)]


class _Solver:
    """Roots of ``g(z) = c(a)`` for arrays of ``a``."""

    def __init__(self, g: Expr, piece: ParamPiece, window, conventions):
        self.g = g
        self.piece = piece
        self.conventions = conventions
        self.window = window
        self.cp = polynomial_argument(g)

    def target(self, a: np.ndarray) -> np.ndarray:
        t, _ = evaluate_array(self.piece.mapping, a + 0j, self.conventions, variable="a")
        return t

    def critical_params(self, lo: float, hi: float) -> np.ndarray:
        """Parameters where two roots collide, for polynomial ``g`` and affine mappings."""
        if self.cp is None or self.cp.degree < 2:
            return np.zeros(0)
        t0, t1, t2 = self.target(np.array([0.0, 1.0, 2.0]))
        slope = t1 - t0
        if slope == 0 or abs(t2 - 2 * t1 + t0) > 1e-12 * (1 + abs(t1)):
            return np.zeros(0)
        c = self.cp.numpy_coeffs()
        zc = np.roots(np.polyder(c))
        a = (np.polyval(c, zc) - t0) / slope
        a = a.real[np.abs(a.imag) <= 1e-9 * (1 + np.abs(a))]
        return np.unique(a[(a > lo) & (a < hi)])

    def roots(self, a: np.ndarray, seeds: list | None = None) -> list[np.ndarray]:
        if self.cp is not None and self.cp.degree >= 1:
            return self._poly_roots(a)
        return self._newton_roots(a, seeds)

    def _poly_roots(self, a):
        c = self.cp.numpy_coeffs()
        d = c.size - 1
        tgt = self.target(a)
        mon = np.tile(c[1:] / c[0], (a.size, 1)).astype(complex)
        mon[:, -1] -= tgt / c[0]
        if d == 1:
            return [np.array([-m[0]]) for m in mon]
        comp = np.zeros((a.size, d, d), dtype=complex)
        comp[:, 0, :] = -mon
        idx = np.arange(d - 1)
        comp[:, idx + 1, idx] = 1.0
        return list(np.linalg.eigvals(comp))

    def _newton_roots(self, a, seeds):
        x0, x1, y0, y1 = self.window
        gx = np.linspace(2 * x0, 2 * x1, 20)
        gy = np.linspace(2 * y0, 2 * y1, 20)
        grid = (gx[None, :] + 1j * gy[:, None]).ravel()
        tgt = self.target(a)
        starts = [grid if seeds is None or seeds[i] is None else np.concatenate([grid, seeds[i]]) for i in range(a.size)]
        owner = np.concatenate([np.full(s.size, i) for i, s in enumerate(starts)])
        z, ok = self._newton(np.concatenate(starts), tgt[owner])
        out = [_merge_roots(z[ok & (owner == i)], np.zeros(0, complex)) for i in range(a.size)]
        if seeds is None:
            # continuation sweeps carry roots into regions the grid seeds miss
            for order in (range(1, a.size), range(a.size - 2, -1, -1)):
                for i in order:
                    prev = out[i - 1] if order.step == 1 else out[i + 1]
                    if prev.size:
                        z, ok = self._newton(prev, np.full(prev.size, tgt[i]))
                        out[i] = _merge_roots(out[i], z[ok])
        return out

    def _newton(self, z: np.ndarray, target: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Polish ``z`` toward ``g(z) = target``; returns the points and a converged mask."""
        z = z.astype(complex)
        live = np.arange(z.size)
        for _ in range(50):
            if live.size == 0:
                break
            zl, tl = z[live], target[live]
            f, _ = evaluate_array(self.g, zl, self.conventions)
            h = 1e-7 * (1 + np.abs(zl))
            f2, _ = evaluate_array(self.g, zl + h, self.conventions)
            with np.errstate(divide="ignore", invalid="ignore"):
                step = (f - tl) / ((f2 - f) / h)
            finite = np.isfinite(step)
            step[~finite] = 0
            z[live] = zl - step
            moving = finite & (np.abs(step) > 1e-13 * (1 + np.abs(zl))) & (np.abs(z[live]) < 1e12)
            live = live[moving]
        f, bad = evaluate_array(self.g, z, self.conventions)
        ok = ~bad & np.isfinite(z) & (np.abs(f - target) < 1e-9 * (1 + np.abs(target)))
        z = np.where(ok, np.round(z, 9), z)
        return z, ok


def _merge_roots(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    z = np.concatenate([a, b])
    z = z[np.isfinite(z)]
    if z.size == 0:
        return z
    z = np.sort_complex(z)
    keep = np.concatenate([[True], np.abs(np.diff(z)) > 1e-7])
    return z[keep]


def _link(a: np.ndarray, roots: list[np.ndarray], jump: float) -> list[list]:
    """Connect roots at consecutive parameter values into tracks of (a, z)."""
    tracks: list[list] = []
    active: list[int] = []
    for i, r in enumerate(roots):
        if not active:
            active = []
            for z in r:
                tracks.append([(a[i], z)])
                active.append(len(tracks) - 1)
            continue
        ends = np.array([tracks[k][-1][1] for k in active])
        cost = np.abs(ends[:, None] - r[None, :]) if r.size else np.zeros((len(active), 0))
        rows, cols = linear_sum_assignment(cost) if r.size else (np.array([], int), np.array([], int))
        new_active = []
        used = set()
        for ri, ci in zip(rows, cols):
            if cost[ri, ci] <= jump:
                tracks[active[ri]].append((a[i], r[ci]))
                new_active.append(active[ri])
                used.add(ci)
        for ci in range(r.size):
            if ci not in used:
                tracks.append([(a[i], r[ci])])
                new_active.append(len(tracks) - 1)
        active = new_active
    return tracks


def numeric_cuts(
    g: Expr,
    piece: ParamPiece,
    window=(-2.0, 2.0, -2.0, 2.0),
    conventions: Conventions = DEFAULT_CONVENTIONS,
    h: float | None = None,
    max_rounds: int = 30,
) -> list[PolylineCut]:
    """Solve ``g(z) = c(a)`` numerically and link the roots into polylines.

    Parameter values come from a linear grid plus geometric samples toward
    every endpoint and are bisected until neighbouring points on a track
    inside the (doubled) window are within ``h``.
    """
    x0, x1, y0, y1 = window
    size = max(x1 - x0, y1 - y0)
    if h is None:
        h = size / 2000.0
    ext = (x0 - 0.5 * size, x1 + 0.5 * size, y0 - 0.5 * size, y1 + 0.5 * size)
    lo = -np.inf if piece.lo is None else float(piece.lo)
    hi = np.inf if piece.hi is None else float(piece.hi)
    solver = _Solver(g, piece, window, conventions)
    a = np.union1d(_alpha_grid(lo, hi), solver.critical_params(lo, hi))
    roots = solver.roots(a)
    jump = 0.25 * size
    for _ in range(max_rounds):
        need = _gaps(a, roots, ext, h)
        if not need or a.size > 50_000:
            break
        if solver.cp is None:
            _reseed(solver, a, roots)
        new = np.array(need)
        seeds = None
        if solver.cp is None:
            seeds = [_neighbour_seeds(a, roots, m) for m in new]
        new_roots = solver.roots(new, seeds)
        a = np.concatenate([a, new])
        roots = roots + list(new_roots)
        order = np.argsort(a, kind="stable")
        a = a[order]
        roots = [roots[i] for i in order]
    tracks = _link(a, roots, jump)
    cuts = []
    for tr in tracks:
        zs = np.array([p[1] for p in tr])
        inside = _in_box(zs, ext)
        start = None
        for i, flag in enumerate(np.append(inside, False)):
            if flag and start is None:
                start = i
            elif not flag and start is not None:
                if i - start >= 2:
                    pts = tuple(complex(round(z.real, 12), round(z.imag, 12)) for z in zs[start:i])
                    cuts.append(PolylineCut(points=pts, status=POSSIBLY_SPURIOUS, note="numeric"))
                start = None
    return cuts


def _reseed(solver, a: np.ndarray, roots: list) -> None:
    """Re-solve points that found fewer roots than a neighbour, seeded by that neighbour."""
    for i in range(a.size):
        for j in (i - 1, i + 1):
            if 0 <= j < a.size and roots[j].size > roots[i].size:
                z, ok = solver._newton(roots[j], np.full(roots[j].size, solver.target(a[i : i + 1])[0]))
                roots[i] = _merge_roots(roots[i], z[ok])


def _gaps(a: np.ndarray, roots: list, ext, h: float) -> list[float]:
    """Midpoints of parameter steps whose root sets move more than ``h`` near the window."""
    need = []
    for i in range(a.size - 1):
        r0, r1 = roots[i], roots[i + 1]
        m = 0.5 * (a[i] + a[i + 1])
        if not (a[i] < m < a[i + 1]):
            continue
        near0, near1 = _in_box(r0, ext), _in_box(r1, ext)
        if not (near0.any() or near1.any()):
            continue
        if r0.size != r1.size:
            need.append(m)
            continue
        cost = np.abs(r0[:, None] - r1[None, :])
        rows, cols = linear_sum_assignment(cost)
        moved = cost[rows, cols] > h
        if np.any(moved & (near0[rows] | near1[cols])):
            need.append(m)
    return need


def _neighbour_seeds(a: np.ndarray, roots: list, m: float):
    i = int(np.searchsorted(a, m))
    parts = [roots[j] for j in (i - 1, i) if 0 <= j < len(roots)]
    return np.concatenate(parts) if parts else None


def _in_box(z: np.ndarray, box) -> np.ndarray:
    x0, x1, y0, y1 = box
    return (z.real >= x0) & (z.real <= x1) & (z.imag >= y0) & (z.imag <= y1)


# -- entry point -------------------------------------------------------------


def closed_form_families(g: Expr, piece: ParamPiece, sheets: int = EXP_SHEETS) -> list[Family]:
    """Candidate solution families of ``g(z) = c(a)`` before the consistency check."""
    fams = _peel(g, piece.mapping, True, sheets)
    seen = set()
    out = []
    for f in fams:
        if f.mapping not in seen:
            seen.add(f.mapping)
            out.append(f)
    return out


def parametric_cuts(
    g: Expr,
    defining: DefiningCut,
    conventions: Conventions = DEFAULT_CONVENTIONS,
    numeric_fallback: bool = True,
    force_numeric: bool = False,
    window=(-2.0, 2.0, -2.0, 2.0),
    sheets: int = EXP_SHEETS,
) -> list:
    """Cut components of ``f(g(z))`` obtained by solving ``g(z) = c(a)``."""
    cuts = []
    for piece in defining.params:
        if force_numeric:
            cuts.extend(numeric_cuts(g, piece, window, conventions))
            continue
        try:
            fams = closed_form_families(g, piece, sheets)
        except InversionFailure:
            if not numeric_fallback:
                raise
            cuts.extend(numeric_cuts(g, piece, window, conventions))
            continue
        for fam in fams:
            status = CONFIRMED if fam.principal else POSSIBLY_SPURIOUS
            for lo, hi in valid_ranges(g, fam, piece, conventions):
                cuts.append(ParametricCut(param_map=fam.mapping, lo=lo, hi=hi, status=status))
    return cuts


__all__ = [
    "ALPHA",
    "Family",
    "closed_form_families",
    "numeric_cuts",
    "parametric_cuts",
    "valid_ranges",
]
