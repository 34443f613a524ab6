"""Branch cuts of ``f(g(z))`` for polynomial ``g`` as exact semi-algebraic sets.

With ``g(x + iy) = P + iQ``, a cut piece on the real axis of the argument
plane pulls back to ``{Q = 0, lo < P < hi}`` and a piece on the imaginary
axis to ``{P = 0, lo < Q < hi}``.  The zero set of the fixed part is split
into irreducible factors; each factor ``F`` is solved for one coordinate
(``v``) as a function of the other (``u``).

Over the real line of ``u`` the critical points are the roots of the leading
coefficient and discriminant of ``F`` in ``v`` (where branches of the curve
appear, vanish or meet) and of ``res_v(F, V - c)`` for the finite endpoints
``c`` of the piece (where the varying part crosses an endpoint).  Between
consecutive critical points the number of real branches is constant and each
branch is either wholly inside the piece or wholly outside, so one exact test
at a rational sample decides it.
"""

from __future__ import annotations

import os
from fractions import Fraction

import numpy as np

from .catalog import CutPiece, DefiningCut
from .cuts import ConstantEq, RationalEq, RootEq, SemiAlgebraicCut
from .errors import EngineLimit
from .poly import (
    BiPoly,
    RealAlgebraic,
    UniPoly,
    discriminant_y,
    factor_bipoly,
    re_im_decompose,
    real_roots,
    resultant_y,
    sample_between,
    sign_at_algebraic,
)

DEFAULT_MAX_DEGREE = 8


def max_degree_default() -> int:
    return int(os.environ.get("BRANCHCUTS_MAX_DEGREE", DEFAULT_MAX_DEGREE))


def _orient(F: BiPoly) -> tuple[str, BiPoly]:
    """Pick the fixed coordinate for ``F`` and return it with ``F`` in ``(u, v)`` slots."""
    dx, dy = F.degree_in("x"), F.degree_in("y")
    if dy == 0:
        return "x", F.swap()
    if dx == 0:
        return "y", F
    if dy == 1:
        return "y", F
    if dx == 1:
        return "x", F.swap()
    return "y", F


def _product(polys) -> UniPoly:
    out = UniPoly([1])
    for p in polys:
        if not p.is_zero() and p.degree >= 1:
            out = out * p
    return out


def _v_poly_at(V: BiPoly, s: Fraction) -> UniPoly:
    return V.at_x(s)


def _inside(F: BiPoly, V: BiPoly, s: Fraction, piece: CutPiece) -> list[bool]:
    """For each real root ``v_k`` of ``F(s, v)``, whether ``V(s, v_k)`` lies in the piece."""
    roots = real_roots(F.at_x(s))
    vs = V.at_x(s)
    flags = []
    for r in roots:
        ok = True
        if piece.lo is not None:
            ok &= sign_at_algebraic(vs - UniPoly([piece.lo]), r) > 0
        if ok and piece.hi is not None:
            ok &= sign_at_algebraic(vs - UniPoly([piece.hi]), r) < 0
        flags.append(ok)
    return flags


def _equation(F: BiPoly, s: Fraction, k: int, n: int):
    cs = F.coeffs_in_y()
    if F.degree_in("x") <= 0:
        return ConstantEq(real_roots(F.at_x(s))[k])
    if len(cs) == 2:
        a0, a1 = cs
        if a1.degree == 0:
            return RationalEq(-a0 * (1 / a1.coeffs[0]), UniPoly([1]))
        return RationalEq(-a0, a1)
    return RootEq(F, k, n)


def _crosses_endpoint(F: BiPoly, V: BiPoly, u: RealAlgebraic, k: int, n: int, piece: CutPiece) -> bool:
    """Whether branch ``k`` has ``V`` at a piece endpoint when ``u`` is the critical point."""
    uf = float(u)
    vals = RootEq(F, k, n).evaluate(np.array([uf]))
    v = float(vals[0])
    if not np.isfinite(v):
        return True
    c = V.coeff_matrix()
    w = sum(c[i, j] * uf**i * v**j for i in range(c.shape[0]) for j in range(c.shape[1]))
    for end in (piece.lo, piece.hi):
        if end is not None and abs(w - float(end)) <= 1e-7 * (1 + abs(float(end))):
            return True
    return False


def _factor_cuts(F: BiPoly, V: BiPoly, piece: CutPiece, fixed: str) -> list[SemiAlgebraicCut]:
    endpoints = [c for c in (piece.lo, piece.hi) if c is not None]
    endpoint_res = []
    for c in endpoints:
        r = resultant_y(F, V - BiPoly.constant(c))
        if r.is_zero():
            # V is identically the endpoint along F: nothing strictly inside
            return []
        endpoint_res.append(r)
    cs = F.coeffs_in_y()
    structural = _product([cs[-1], discriminant_y(F)])
    structural_roots = real_roots(structural) if structural.degree >= 1 else []
    crit = real_roots(_product([structural] + endpoint_res))
    bounds = [None] + crit + [None]
    cells = []
    for i in range(len(bounds) - 1):
        a, b = bounds[i], bounds[i + 1]
        s = sample_between(a, b)
        flags = _inside(F, V, s, piece)
        cells.append((a, b, s, flags))
    out = []
    open_runs: dict[int, list] = {}
    for idx, (a, b, s, flags) in enumerate(cells):
        n = len(flags)
        next_runs = {}
        for k, ok in enumerate(flags):
            if not ok:
                continue
            run = open_runs.get(k)
            if (
                run is not None
                and run[3] == n
                and a is not None
                and not any(a == r for r in structural_roots)
                and not _crosses_endpoint(F, V, a, k, n, piece)
            ):
                run[1] = b
                next_runs[k] = run
            else:
                next_runs[k] = [a, b, s, n, k]
        for k, run in open_runs.items():
            if next_runs.get(k) is not run:
                out.append(run)
        open_runs = next_runs
    out.extend(open_runs.values())
    cuts = []
    for lo, hi, s, n, k in out:
        cuts.append(SemiAlgebraicCut(fixed=fixed, equation=_equation(F, s, k, n), lo=lo, hi=hi))
    return cuts


def semialgebraic_cuts(g, defining: DefiningCut, max_degree: int | None = None) -> list[SemiAlgebraicCut]:
    """Exact cut components of ``f(g(z))`` for a polynomial ``g``.

    Raises :class:`NotPolynomial` if ``g`` is not polynomial and
    :class:`EngineLimit` if its degree exceeds ``max_degree``.
    """
    if max_degree is None:
        max_degree = max_degree_default()
    rb = re_im_decompose(g)
    deg = max(rb.P.total_degree, rb.Q.total_degree)
    if deg > max_degree:
        raise EngineLimit(f"argument degree {deg} exceeds the limit {max_degree}")
    cuts = []
    for axis in ("real", "imag"):
        pieces = [p for p in defining.pieces if p.axis == axis]
        if not pieces:
            continue
        zero, value = (rb.Q, rb.P) if axis == "real" else (rb.P, rb.Q)
        for F in factor_bipoly(zero):
            fixed, Fuv = _orient(F)
            Vuv = value if fixed == "y" else value.swap()
            for piece in pieces:
                cuts.extend(_factor_cuts(Fuv, Vuv, piece, fixed))
    return cuts
