"""Exact polynomial arithmetic over the rationals.

``UniPoly`` and ``BiPoly`` hold :class:`fractions.Fraction` coefficients so
that every sign decision made by the plane solver is exact.  Real roots are
isolated with Sturm sequences; sympy is only used for factorization and
resultants, which are reached through :func:`factor_bipoly`,
:func:`resultant_y` and :func:`discriminant_y`.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from itertools import pairwise

import numpy as np
import sympy

from .errors import NotPolynomial
from .expr import Add, Expr, Func, ImagUnit, Mul, Neg, Pow, Rational, Var

ZERO = Fraction(0)
ONE = Fraction(1)


# -- univariate ------------------------------------------------------------


class UniPoly:
    """Dense univariate polynomial, coefficients stored low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def constant(cls, a) -> UniPoly:
        return cls([a])

    @classmethod
    def x(cls) -> UniPoly:
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __add__(self, other: UniPoly) -> UniPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (ZERO,) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    def __neg__(self) -> UniPoly:
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other: UniPoly) -> UniPoly:
        return self + (-other)

    def __mul__(self, other) -> UniPoly:
        if not isinstance(other, UniPoly):
            return UniPoly(c * Fraction(other) for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> UniPoly:
        result = UniPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [ZERO] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lc = other.lead
        while len(rem) - 1 >= d and any(rem):
            shift = len(rem) - 1 - d
            f = rem[-1] / lc
            q[shift] = f
            for i, b in enumerate(other.coeffs):
                rem[shift + i] -= f * b
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return UniPoly(q), UniPoly(rem)

    def __mod__(self, other: UniPoly) -> UniPoly:
        return self.divmod(other)[1]

    def monic(self) -> UniPoly:
        if self.is_zero():
            return self
        return self * (1 / self.lead)

    def derivative(self) -> UniPoly:
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def __call__(self, x):
        acc = ZERO if isinstance(x, Fraction) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x):
        acc = np.zeros_like(np.asarray(x, dtype=float))
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def sign_at(self, x: Fraction) -> int:
        v = self(x)
        return (v > 0) - (v < 0)

    def compose(self, other: UniPoly) -> UniPoly:
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + UniPoly([c])
        return acc

    def to_text(self, var: str = "x") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree(p: UniPoly) -> UniPoly:
    if p.degree <= 0:
        return p
    g = poly_gcd(p, p.derivative())
    return p.divmod(g)[0].monic()


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            break
        seq.append(r)
    return [s for s in seq if not s.is_zero()]


def _sign_changes(values: Sequence) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in pairwise(signs) if (a > 0) != (b > 0))


def _variations(seq: list[UniPoly], x: Fraction) -> int:
    return _sign_changes([s(x) for s in seq])


def cauchy_bound(p: UniPoly) -> Fraction:
    """A power of two strictly larger than the modulus of every root."""
    lc = abs(p.lead)
    m = max((abs(c) / lc for c in p.coeffs[:-1]), default=ZERO)
    bound = 1 + m
    b = ONE
    while b <= bound:
        b *= 2
    return b


def isolate_real_roots(p: UniPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint open intervals each containing exactly one real root of ``p``.

    ``p`` must be squarefree with no rational roots on dyadic points hit by
    the bisection; callers pass irreducible factors of degree >= 2, which
    have no rational roots at all.
    """
    if p.degree < 1:
        return []
    seq = sturm_sequence(p)
    b = cauchy_bound(p)
    out = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = _variations(seq, lo) - _variations(seq, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    out.sort()
    return out


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational with the smallest denominator strictly inside ``(lo, hi)``."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo >= hi:
        raise ValueError("empty interval")
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -simplest_between(-hi, -lo)
    n = math.floor(lo) + 1
    if n < hi:
        return Fraction(n)
    fl = n - 1
    if lo == fl:
        return fl + Fraction(1, math.floor(1 / (hi - fl)) + 1)
    return fl + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl))


# -- real algebraic numbers -------------------------------------------------


@total_ordering
class RealAlgebraic:
    """A real root of an irreducible rational polynomial, pinned by an interval.

    Rational numbers are stored with a linear defining polynomial and a
    degenerate interval ``lo == hi``.
    """

    __slots__ = ("hi", "lo", "poly")

    def __init__(self, poly: UniPoly, lo: Fraction, hi: Fraction):
        self.poly = poly
        self.lo = lo
        self.hi = hi

    @classmethod
    def rational(cls, q) -> RealAlgebraic:
        q = Fraction(q)
        return cls(UniPoly([-q, 1]), q, q)

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("irrational algebraic number has no exact rational value")
        return self.lo

    def refine(self, width: Fraction) -> None:
        while not self.is_rational and self.hi - self.lo > width:
            mid = (self.lo + self.hi) / 2
            s_mid = self.poly.sign_at(mid)
            if s_mid == 0:
                self.lo = self.hi = mid
                return
            if s_mid == self.poly.sign_at(self.lo):
                self.lo = mid
            else:
                self.hi = mid

    def __float__(self) -> float:
        if self.is_rational:
            return float(self.lo)
        self.refine(Fraction(1, 2**60) * max(1, abs(self.hi)))
        return float((self.lo + self.hi) / 2)

    def __eq__(self, other):
        if not isinstance(other, RealAlgebraic):
            return NotImplemented
        if self.is_rational or other.is_rational:
            if self.is_rational and other.is_rational:
                return self.lo == other.lo
            return False
        if self.poly.monic() != other.poly.monic():
            return False
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return lo < hi and count_roots_between(self.poly, lo, hi) > 0

    def __hash__(self):
        if self.is_rational:
            return hash(self.lo)
        return hash(self.poly.monic())

    def __lt__(self, other: RealAlgebraic) -> bool:
        if self == other:
            return False
        while True:
            if self.hi <= other.lo:
                return True
            if other.hi <= self.lo:
                return False
            self.refine((self.hi - self.lo) / 2)
            other.refine((other.hi - other.lo) / 2)

    def exact_text(self) -> str:
        if self.is_rational:
            q = self.lo
            return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        idx = real_roots_of_irreducible(self.poly).index(self)
        return f"RootOf({self.poly.monic().to_text('_t')}, index={idx})"

    def __repr__(self):
        return self.exact_text() if self.is_rational else f"{self.exact_text()}~{float(self):.12g}"


def _to_sympy_uni(p: UniPoly, var):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], var, domain="QQ")


def _from_sympy_uni(sp) -> UniPoly:
    return UniPoly(Fraction(int(c.p), int(c.q)) for c in reversed(sp.all_coeffs()))


_T = sympy.Symbol("_t")


def factor_uni(p: UniPoly) -> list[UniPoly]:
    """Distinct irreducible factors (monic) of ``p`` over the rationals."""
    if p.degree < 1:
        return []
    _, facs = _to_sympy_uni(p, _T).factor_list()
    return [_from_sympy_uni(f).monic() for f, _ in facs]


def real_roots_of_irreducible(f: UniPoly) -> list[RealAlgebraic]:
    if f.degree == 1:
        return [RealAlgebraic.rational(-f.coeffs[0] / f.coeffs[1])]
    return [RealAlgebraic(f, lo, hi) for lo, hi in isolate_real_roots(f)]


def real_roots(p: UniPoly) -> list[RealAlgebraic]:
    """All distinct real roots of ``p`` in increasing order."""
    roots = []
    for f in factor_uni(p):
        roots.extend(real_roots_of_irreducible(f))
    roots.sort()
    return roots


def count_roots_between(p: UniPoly, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval ``(lo, hi]``."""
    if p.degree < 1:
        return 0
    seq = sturm_sequence(squarefree(p))
    return _variations(seq, lo) - _variations(seq, hi)


def sign_at_algebraic(g: UniPoly, a: RealAlgebraic) -> int:
    """Exact sign of ``g`` at the algebraic number ``a``."""
    if a.is_rational:
        return g.sign_at(a.lo)
    r = g % a.poly
    if r.is_zero():
        return 0
    while count_roots_between(r, a.lo, a.hi) > 0 or r.sign_at(a.hi) == 0:
        a.refine((a.hi - a.lo) / 2)
        if a.is_rational:
            return r.sign_at(a.lo)
    return r.sign_at(a.hi)


def sample_between(a: RealAlgebraic | None, b: RealAlgebraic | None) -> Fraction:
    """A simple rational strictly between two algebraic numbers (None = infinity)."""
    if a is None and b is None:
        return Fraction(0)
    if a is None:
        b.refine(ONE)
        return Fraction(math.floor(b.lo) - 1)
    if b is None:
        a.refine(ONE)
        return Fraction(math.floor(a.hi) + 1)
    while a.hi >= b.lo:
        a.refine((a.hi - a.lo) / 2 or ONE)
        b.refine((b.hi - b.lo) / 2 or ONE)
    return simplest_between(a.hi, b.lo)


# -- bivariate -------------------------------------------------------------


class BiPoly:
    """Sparse polynomial in ``x`` and ``y``: a map ``(i, j) -> coeff of x^i y^j``."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def constant(cls, c) -> BiPoly:
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> BiPoly:
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> BiPoly:
        return cls({(0, 1): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"BiPoly({self.to_text()})"

    def __add__(self, other: BiPoly) -> BiPoly:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return BiPoly(out)

    def __neg__(self) -> BiPoly:
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: BiPoly) -> BiPoly:
        return self + (-other)

    def __mul__(self, other) -> BiPoly:
        if not isinstance(other, BiPoly):
            s = Fraction(other)
            return BiPoly({k: v * s for k, v in self.terms.items()})
        out: dict = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                key = (i + k, j + l)
                out[key] = out.get(key, ZERO) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> BiPoly:
        result = BiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        idx = 0 if var == "x" else 1
        return max((k[idx] for k in self.terms), default=-1)

    def __call__(self, x, y):
        return sum((c * x**i * y**j for (i, j), c in self.terms.items()), ZERO)

    def coeff_matrix(self) -> np.ndarray:
        """Float coefficient array ``C[i, j]`` of ``x^i y^j`` (for the grid kernels)."""
        dx = max(self.degree_in("x"), 0)
        dy = max(self.degree_in("y"), 0)
        c = np.zeros((dx + 1, dy + 1))
        for (i, j), v in self.terms.items():
            c[i, j] = float(v)
        return c

    def swap(self) -> BiPoly:
        return BiPoly({(j, i): v for (i, j), v in self.terms.items()})

    def coeffs_in_y(self) -> list[UniPoly]:
        """Coefficients of ``y^0, y^1, ...`` as polynomials in ``x``."""
        dy = self.degree_in("y")
        cols = [[ZERO] * (self.degree_in("x") + 1) for _ in range(dy + 1)]
        for (i, j), v in self.terms.items():
            cols[j][i] = v
        return [UniPoly(c) for c in cols]

    def at_x(self, x0: Fraction) -> UniPoly:
        """Specialize ``x = x0`` and return the polynomial in ``y``."""
        return UniPoly(c(x0) for c in self.coeffs_in_y())

    def at_y(self, y0: Fraction) -> UniPoly:
        return self.swap().at_x(y0)

    def to_text(self, xname: str = "x", yname: str = "y") -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[0])):
            c = self.terms[(i, j)]
            mono = []
            if i:
                mono.append(xname if i == 1 else f"{xname}^{i}")
            if j:
                mono.append(yname if j == 1 else f"{yname}^{j}")
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = "*".join(mono)
            else:
                body = "*".join([str(mag)] + mono)
            parts.append(("-" if c < 0 else "+", body))
        s, b = parts[0]
        out = ("-" if s == "-" else "") + b
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out


_X, _Y = sympy.symbols("x y")


def to_sympy(p: BiPoly):
    return sympy.Poly.from_dict(
        {k: sympy.Rational(v.numerator, v.denominator) for k, v in p.terms.items()} or {(0, 0): 0},
        _X,
        _Y,
        domain="QQ",
    )


def from_sympy(sp) -> BiPoly:
    sp = sympy.Poly(sp, _X, _Y, domain="QQ")
    return BiPoly({k: Fraction(int(v.p), int(v.q)) for k, v in sp.as_dict().items()})


def factor_bipoly(p: BiPoly) -> list[BiPoly]:
    """Distinct non-constant irreducible factors of ``p`` over the rationals."""
    if p.total_degree < 1:
        return []
    _, facs = to_sympy(p).factor_list()
    out = []
    for f, _ in facs:
        bp = from_sympy(f)
        if bp.total_degree >= 1:
            out.append(_normalize(bp))
    return sorted(out, key=lambda q: (q.total_degree, q.to_text()))


def _normalize(p: BiPoly) -> BiPoly:
    """Scale so the leading term (highest total degree, then highest x power) is 1."""
    key = max(p.terms, key=lambda k: (k[0] + k[1], k[0]))
    return p * (1 / p.terms[key])


def resultant_y(f: BiPoly, g: BiPoly) -> UniPoly:
    """Resultant of ``f`` and ``g`` with respect to ``y``, a polynomial in ``x``."""
    r = sympy.resultant(to_sympy(f).as_expr(), to_sympy(g).as_expr(), _Y)
    return _from_sympy_uni(sympy.Poly(r, _X, domain="QQ"))


def discriminant_y(f: BiPoly) -> UniPoly:
    if f.degree_in("y") < 2:
        return UniPoly([1])
    d = sympy.discriminant(to_sympy(f).as_expr(), _Y)
    return _from_sympy_uni(sympy.Poly(d, _X, domain="QQ"))


# -- complex polynomials in z ----------------------------------------------


@dataclass(frozen=True)
class ComplexPoly:
    """Polynomial in ``z`` with Gaussian rational coefficients (low degree first)."""

    coeffs: tuple  # of (re, im) Fraction pairs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def numpy_coeffs(self) -> np.ndarray:
        """High-degree-first complex coefficients, as ``numpy.roots`` expects."""
        return np.array([complex(float(a), float(b)) for a, b in reversed(self.coeffs)])

    def __call__(self, z: complex) -> complex:
        acc = 0j
        for a, b in reversed(self.coeffs):
            acc = acc * z + complex(float(a), float(b))
        return acc


def _cp_trim(c: list) -> list:
    while c and c[-1] == (ZERO, ZERO):
        c.pop()
    return c


def _cp_add(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = []
    for k in range(n):
        x = a[k] if k < len(a) else (ZERO, ZERO)
        y = b[k] if k < len(b) else (ZERO, ZERO)
        out.append((x[0] + y[0], x[1] + y[1]))
    return _cp_trim(out)


def _cp_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [(ZERO, ZERO)] * (len(a) + len(b) - 1)
    for i, (p, q) in enumerate(a):
        for j, (r, s) in enumerate(b):
            re, im = out[i + j]
            out[i + j] = (re + p * r - q * s, im + p * s + q * r)
    return _cp_trim(out)


def _complex_coeffs(e: Expr) -> list:
    if isinstance(e, Var):
        if e.name != "z":
            raise NotPolynomial(f"unexpected variable {e.name!r}")
        return [(ZERO, ZERO), (ONE, ZERO)]
    if isinstance(e, Rational):
        return _cp_trim([(e.value, ZERO)])
    if isinstance(e, ImagUnit):
        return [(ZERO, ONE)]
    if isinstance(e, Neg):
        return [(-a, -b) for a, b in _complex_coeffs(e.child)]
    if isinstance(e, Add):
        acc: list = []
        for t in e.terms:
            acc = _cp_add(acc, _complex_coeffs(t))
        return acc
    if isinstance(e, Mul):
        acc = [(ONE, ZERO)]
        for f in e.factors:
            acc = _cp_mul(acc, _complex_coeffs(f))
        return acc
    if isinstance(e, Pow):
        q = e.exponent
        if q.denominator != 1 or q < 0:
            raise NotPolynomial(f"non-polynomial power in {e}")
        base = _complex_coeffs(e.base)
        acc = [(ONE, ZERO)]
        for _ in range(q.numerator):
            acc = _cp_mul(acc, base)
        return acc
    if isinstance(e, Func):
        raise NotPolynomial(f"function {e.name} is not polynomial")
    raise TypeError(f"not an expression node: {e!r}")


def polynomial_argument(e: Expr) -> ComplexPoly | None:
    """Normalized polynomial form of ``e`` in ``z``, or ``None`` if not polynomial."""
    try:
        return ComplexPoly(tuple(_complex_coeffs(e)))
    except NotPolynomial:
        return None


@dataclass(frozen=True)
class RealBiPoly:
    """``g(x + iy) = P(x, y) + i Q(x, y)`` with exact rational coefficients."""

    P: BiPoly
    Q: BiPoly


def _decompose(e: Expr) -> tuple[BiPoly, BiPoly]:
    if isinstance(e, Var):
        if e.name != "z":
            raise NotPolynomial(f"unexpected variable {e.name!r}")
        return BiPoly.x(), BiPoly.y()
    if isinstance(e, Rational):
        return BiPoly.constant(e.value), BiPoly()
    if isinstance(e, ImagUnit):
        return BiPoly(), BiPoly.constant(1)
    if isinstance(e, Neg):
        p, q = _decompose(e.child)
        return -p, -q
    if isinstance(e, Add):
        p, q = BiPoly(), BiPoly()
        for t in e.terms:
            a, b = _decompose(t)
            p, q = p + a, q + b
        return p, q
    if isinstance(e, Mul):
        p, q = BiPoly.constant(1), BiPoly()
        for f in e.factors:
            a, b = _decompose(f)
            p, q = p * a - q * b, p * b + q * a
        return p, q
    if isinstance(e, Pow):
        n = e.exponent
        if n.denominator != 1 or n < 0:
            raise NotPolynomial(f"non-polynomial power in {e}")
        a, b = _decompose(e.base)
        p, q = BiPoly.constant(1), BiPoly()
        for _ in range(n.numerator):
            p, q = p * a - q * b, p * b + q * a
        return p, q
    if isinstance(e, Func):
        raise NotPolynomial(f"function {e.name} is not polynomial")
    raise TypeError(f"not an expression node: {e!r}")


def re_im_decompose(g: Expr) -> RealBiPoly:
    """Split a polynomial expression into real and imaginary parts over ``z = x + iy``."""
    p, q = _decompose(g)
    return RealBiPoly(p, q)
