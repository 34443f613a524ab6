"""Principal-branch evaluation and two-sided jump probing.

All evaluation goes through :func:`evaluate_array`; the scalar :func:`evaluate`
is the same code path applied to a one-element array, so grid values and
point values agree bit for bit.

numpy's complex elementary functions honour the sign of a zero component when
the argument sits on a branch cut.  Before each multi-valued function is
applied, zeros are made positive and then, for arguments lying exactly on a
cut, given the sign selecting the counter-clockwise side from
:meth:`CutPiece.closure_side`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .catalog import DEFAULT_CONVENTIONS, Conventions, defining_cut
from .errors import PoleOrSingularity
from .expr import Add, Expr, Func, ImagUnit, Mul, Neg, Pow, Rational, Var

ComplexPoint = complex

_NUMPY_FUNCS = {
    "ln": np.log,
    "exp": np.exp,
    "sqrt": np.sqrt,
    "arcsin": np.arcsin,
    "arccos": np.arccos,
    "arctan": np.arctan,
    "arcsinh": np.arcsinh,
    "arccosh": np.arccosh,
    "arctanh": np.arctanh,
}


def _positive_zeros(w: np.ndarray) -> np.ndarray:
    return w + 0.0


def _apply_closure(w: np.ndarray, symbol: str, conventions: Conventions) -> np.ndarray:
    """Return a copy of ``w`` whose on-cut entries carry the closure-side signed zero."""
    w = _positive_zeros(w)
    re = w.real.copy()
    im = w.imag.copy()
    for piece in defining_cut(symbol, conventions).pieces:
        if piece.axis == "real":
            on = im == 0.0
            t = re
        else:
            on = re == 0.0
            t = im
        if piece.lo is not None:
            on &= t > float(piece.lo)
        if piece.hi is not None:
            on &= t < float(piece.hi)
        if not on.any():
            continue
        for idx in np.flatnonzero(on.ravel()):
            side = piece.closure_side(float(t.flat[idx]))
            if piece.axis == "real":
                im.flat[idx] = math.copysign(0.0, side.imag)
            else:
                re.flat[idx] = math.copysign(0.0, side.real)
    return _join(re, im)


def _join(re: np.ndarray, im: np.ndarray) -> np.ndarray:
    out = np.empty(re.shape, dtype=complex)
    out.real = re
    out.imag = im
    return out


def _int_power(w: np.ndarray, n: int) -> np.ndarray:
    if n == 0:
        return np.ones_like(w)
    result = None
    base = w
    k = abs(n)
    while k:
        if k & 1:
            result = base if result is None else result * base
        k >>= 1
        if k:
            base = base * base
    if n < 0:
        return 1.0 / result
    return result


def _apply_func(name: str, w: np.ndarray, conventions: Conventions) -> np.ndarray:
    if name == "exp":
        return np.exp(w)
    if name == "arccot":
        return _arccot(w, conventions)
    if name == "arccoth":
        return _arccoth(w, conventions)
    closed = _apply_closure(w, name, conventions)
    return _NUMPY_FUNCS[name](closed)


def _arccot(w: np.ndarray, conventions: Conventions) -> np.ndarray:
    closed = _apply_closure(w, "arccot", conventions)
    if conventions.arccot == "as64":
        return np.pi / 2 - np.arctan(closed)
    on_cut = (closed.real == 0.0) & (np.abs(closed.imag) < 1.0)
    inv = 1.0 / closed
    re = inv.real.copy()
    im = inv.imag.copy()
    # 1/(+-0 + iy) = +-0 - i/y: the approach side carries over to 1/w
    re[on_cut] = np.copysign(0.0, closed.real[on_cut])
    im[on_cut] = -1.0 / closed.imag[on_cut]
    out = np.arctan(_join(re, im))
    zero = on_cut & (closed.imag == 0.0)
    out[zero] = np.copysign(np.pi / 2, closed.real[zero])
    return out


def _arccoth(w: np.ndarray, conventions: Conventions) -> np.ndarray:
    closed = _apply_closure(w, "arccoth", conventions)
    on_cut = (closed.imag == 0.0) & (np.abs(closed.real) < 1.0)
    inv = 1.0 / closed
    re = inv.real.copy()
    im = inv.imag.copy()
    # 1/(x +- i0) = 1/x -+ i0
    re[on_cut] = 1.0 / closed.real[on_cut]
    im[on_cut] = -np.copysign(0.0, closed.imag[on_cut])
    out = np.arctanh(_join(re, im))
    zero = on_cut & (closed.real == 0.0)
    out[zero] = -1j * np.copysign(np.pi / 2, closed.imag[zero])
    return out


def _eval(e: Expr, z: np.ndarray, bad: np.ndarray, env: dict, conventions: Conventions) -> np.ndarray:
    if isinstance(e, Var):
        v = env.get(e.name)
        if v is None:
            raise ValueError(f"no value bound for variable {e.name!r}")
        return v
    if isinstance(e, Rational):
        return np.full(z.shape, complex(float(e.value), 0.0))
    if isinstance(e, ImagUnit):
        return np.full(z.shape, 1j)
    if isinstance(e, Neg):
        return -_eval(e.child, z, bad, env, conventions)
    if isinstance(e, Add):
        acc = _eval(e.terms[0], z, bad, env, conventions)
        for t in e.terms[1:]:
            acc = acc + _eval(t, z, bad, env, conventions)
        return acc
    if isinstance(e, Mul):
        acc = _eval(e.factors[0], z, bad, env, conventions)
        for f in e.factors[1:]:
            acc = acc * _eval(f, z, bad, env, conventions)
        return acc
    if isinstance(e, Pow):
        w = _eval(e.base, z, bad, env, conventions)
        q = e.exponent
        if q.denominator == 1:
            out = _int_power(w, q.numerator)
        elif q == Fraction(1, 2):
            out = np.sqrt(_apply_closure(w, "sqrt", conventions))
        else:
            closed = _apply_closure(w, "pow", conventions)
            zero = closed == 0
            out = np.exp(float(q) * np.log(np.where(zero, 1.0, closed)))
            if zero.any():
                out[zero] = 0.0 if q > 0 else np.nan
        _flag(out, bad)
        return out
    if isinstance(e, Func):
        w = _eval(e.arg, z, bad, env, conventions)
        out = _apply_func(e.name, w, conventions)
        _flag(out, bad)
        return out
    raise TypeError(f"not an expression node: {e!r}")


def _flag(values: np.ndarray, bad: np.ndarray) -> None:
    bad |= ~np.isfinite(values)


def evaluate_array(
    e: Expr,
    z,
    conventions: Conventions = DEFAULT_CONVENTIONS,
    variable: str = "z",
) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate ``e`` at every point of ``z``.

    Returns ``(values, singular)``; singular entries (poles, logarithms of
    zero, overflow) are set to NaN in ``values`` and flagged True.
    """
    z = np.asarray(z, dtype=complex)
    bad = np.zeros(z.shape, dtype=bool)
    with np.errstate(all="ignore"):
        out = _eval(e, z, bad, {variable: z}, conventions)
        out = np.array(np.broadcast_to(out, z.shape), dtype=complex)
        bad |= ~np.isfinite(out)
    out[bad] = np.nan
    return out, bad


def evaluate(e: Expr, p: complex, conventions: Conventions = DEFAULT_CONVENTIONS) -> complex:
    """Principal value of ``e`` at the point ``p``."""
    p = complex(p)
    if not (math.isfinite(p.real) and math.isfinite(p.imag)):
        raise ValueError(f"point must be finite, got {p!r}")
    values, bad = evaluate_array(e, np.array([p]), conventions)
    if bad[0]:
        raise PoleOrSingularity(f"{e} is singular at {p}")
    return complex(values[0])


@dataclass(frozen=True)
class JumpReport:
    """Evidence of (dis)continuity of a function across a point.

    ``value_a``/``value_b`` are the one-sided limits on the ``+normal`` and
    ``-normal`` sides, each extrapolated linearly from samples at ``eps`` and
    ``2*eps``; ``raw_difference`` is the plain difference at ``+-eps``.
    """

    point: complex
    normal: complex
    eps: float
    value_a: complex
    value_b: complex
    magnitude: float
    component: str
    raw_difference: float

    def to_dict(self) -> dict:
        return {
            "point": [self.point.real, self.point.imag],
            "normal": [self.normal.real, self.normal.imag],
            "eps": self.eps,
            "value_a": [self.value_a.real, self.value_a.imag],
            "value_b": [self.value_b.real, self.value_b.imag],
            "magnitude": self.magnitude,
            "component": self.component,
        }


def _component(d: complex, magnitude: float) -> str:
    if magnitude == 0.0:
        return "none"
    re_share = abs(d.real) / magnitude
    im_share = abs(d.imag) / magnitude
    if im_share < 1e-2:
        return "re"
    if re_share < 1e-2:
        return "im"
    return "both"


def jump_probe(
    e: Expr,
    p: complex,
    normal: complex,
    eps: float = 1e-6,
    conventions: Conventions = DEFAULT_CONVENTIONS,
) -> JumpReport:
    """Measure the jump of ``e`` across ``p`` along the unit direction ``normal``."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    p = complex(p)
    n = complex(normal)
    if abs(n) == 0:
        raise ValueError("normal must be non-zero")
    n = n / abs(n)
    pts = np.array([p + eps * n, p + 2 * eps * n, p - eps * n, p - 2 * eps * n])
    values, bad = evaluate_array(e, pts, conventions)
    if bad.any():
        raise PoleOrSingularity(f"{e} is singular near {p}")
    a = 2 * values[0] - values[1]
    b = 2 * values[2] - values[3]
    d = complex(a - b)
    mag = abs(d)
    return JumpReport(
        point=p,
        normal=n,
        eps=eps,
        value_a=complex(a),
        value_b=complex(b),
        magnitude=mag,
        component=_component(d, mag),
        raw_difference=float(abs(values[0] - values[2])),
    )
