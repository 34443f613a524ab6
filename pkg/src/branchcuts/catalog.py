"""Defining branch cuts of the supported function symbols.

Every cut is a list of open intervals on the real or imaginary axis of the
argument plane (``w``).  The same set is also given parametrically as
``w = a`` or ``w = I*a`` over an interval of the real parameter ``a``; that
form drives the inversion approach in :mod:`branchcuts.parametric`.

On-cut values follow counter-clockwise continuity: a point on a cut takes
the limit reached by turning counter-clockwise around the cut's nearest
branch point.  ``closure_side`` returns that approach direction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import UnknownFunction
from .expr import FUNCTIONS, Expr, I, Var, mul

# the fractional power z^(p/q), q > 1, shares sqrt's cut
SYMBOLS = FUNCTIONS + ("pow",)
ARCCOT_CONVENTIONS = ("recip", "as64")

ALPHA = Var("a")


@dataclass(frozen=True)
class Conventions:
    """Evaluation conventions in force.

    ``arccot='recip'`` is ``arctan(1/z)`` with its cut on the imaginary
    segment between ``-i`` and ``i``; ``arccot='as64'`` is
    ``pi/2 - arctan(z)`` whose cuts run along the imaginary axis beyond
    ``+-i`` like arctan's.
    """

    arccot: str = "recip"

    def __post_init__(self):
        if self.arccot not in ARCCOT_CONVENTIONS:
            raise ValueError(f"unknown arccot convention {self.arccot!r}")


DEFAULT_CONVENTIONS = Conventions()


@dataclass(frozen=True)
class CutPiece:
    """Open interval ``(lo, hi)`` of the real (``axis='real'``) or imaginary axis.

    ``None`` stands for an infinite endpoint.
    """

    axis: str
    lo: Fraction | None
    hi: Fraction | None

    def contains(self, t: float) -> bool:
        return (self.lo is None or t > self.lo) and (self.hi is None or t < self.hi)

    def point(self, t: float) -> complex:
        return complex(t, 0.0) if self.axis == "real" else complex(0.0, t)

    def branch_points(self) -> list[complex]:
        return [self.point(float(v)) for v in (self.lo, self.hi) if v is not None]

    def closure_side(self, t: float) -> complex:
        """Unit direction from which the on-cut value at coordinate ``t`` is approached."""
        if self.lo is not None and self.hi is not None:
            mid = (self.lo + self.hi) / 2
            inward = -1.0 if t >= mid else 1.0
        elif self.lo is None and self.hi is None:
            inward = -1.0
        else:
            inward = 1.0 if self.hi is None else -1.0
        direction = complex(inward, 0.0) if self.axis == "real" else complex(0.0, inward)
        return -1j * direction

    def interval_text(self) -> str:
        lo = "-inf" if self.lo is None else _frac(self.lo)
        hi = "inf" if self.hi is None else _frac(self.hi)
        return f"({lo},{hi})"


@dataclass(frozen=True)
class ParamPiece:
    """``w = mapping(a)`` for the real parameter ``a`` in ``(lo, hi)``."""

    mapping: Expr
    lo: Fraction | None
    hi: Fraction | None


@dataclass(frozen=True)
class DefiningCut:
    symbol: str
    pieces: tuple
    params: tuple

    @property
    def empty(self) -> bool:
        return not self.pieces

    def to_dict(self) -> dict:
        return {
            "symbol": self.symbol,
            "region": [
                {"axis": p.axis, "interval": [_endpoint(p.lo, "-inf"), _endpoint(p.hi, "inf")]}
                for p in self.pieces
            ],
            "parametric": [
                {"map": str(p.mapping), "range": [_endpoint(p.lo, "-inf"), _endpoint(p.hi, "inf")]}
                for p in self.params
            ],
        }

    def to_text(self) -> str:
        if self.empty:
            return f"{self.symbol}: no branch cuts"
        arg = "z"
        parts = []
        for p in self.pieces:
            if p.axis == "imag":
                parts.append(f"Re({arg}) = 0 and {_range_text(f'Im({arg})', p)}")
            else:
                parts.append(_range_text(arg, p))
        return f"[{self.symbol}(z), " + ", ".join(parts) + "]"


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _endpoint(v, inf: str) -> str:
    return inf if v is None else _frac(v)


def _range_text(name: str, p: CutPiece) -> str:
    if p.lo is None and p.hi is not None:
        return f"{name} < {_frac(p.hi)}"
    if p.hi is None and p.lo is not None:
        return f"{name} > {_frac(p.lo)}"
    if p.lo is None and p.hi is None:
        return f"{name} in (-inf,inf)"
    return f"{_frac(p.lo)} < {name} < {_frac(p.hi)}"


def _pieces(axis: str, *intervals) -> tuple:
    return tuple(
        CutPiece(axis, None if lo is None else Fraction(lo), None if hi is None else Fraction(hi))
        for lo, hi in intervals
    )


def _params(pieces: tuple) -> tuple:
    out = []
    for p in pieces:
        mapping = ALPHA if p.axis == "real" else mul(I, ALPHA)
        out.append(ParamPiece(mapping, p.lo, p.hi))
    return tuple(out)


_OUTER = ((None, -1), (1, None))

_TABLE = {
    "ln": _pieces("real", (None, 0)),
    "sqrt": _pieces("real", (None, 0)),
    "pow": _pieces("real", (None, 0)),
    "exp": (),
    "arcsin": _pieces("real", *_OUTER),
    "arccos": _pieces("real", *_OUTER),
    "arctan": _pieces("imag", *_OUTER),
    "arcsinh": _pieces("imag", *_OUTER),
    "arccosh": _pieces("real", (None, 1)),
    "arctanh": _pieces("real", *_OUTER),
    "arccoth": _pieces("real", (-1, 1)),
}

_ARCCOT = {
    "recip": _pieces("imag", (-1, 1)),
    "as64": _pieces("imag", *_OUTER),
}


def defining_cut(symbol: str, conventions: Conventions = DEFAULT_CONVENTIONS) -> DefiningCut:
    """Catalog entry for ``symbol`` under the conventions in force."""
    if symbol == "arccot":
        pieces = _ARCCOT[conventions.arccot]
    elif symbol in _TABLE:
        pieces = _TABLE[symbol]
    else:
        raise UnknownFunction(f"unknown function {symbol!r}")
    return DefiningCut(symbol, pieces, _params(pieces))


def catalog(conventions: Conventions = DEFAULT_CONVENTIONS) -> list[DefiningCut]:
    return [defining_cut(s, conventions) for s in SYMBOLS]


def catalog_json(symbol: str | None = None, conventions: Conventions = DEFAULT_CONVENTIONS) -> str:
    entries = [defining_cut(symbol, conventions)] if symbol else catalog(conventions)
    return json.dumps([e.to_dict() for e in entries], indent=2, allow_nan=False)
