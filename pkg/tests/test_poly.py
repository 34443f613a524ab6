from fractions import Fraction
from itertools import pairwise

import numpy as np
import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from branchcuts.errors import NotPolynomial
from branchcuts.expr import parse
from branchcuts.poly import (
    BiPoly,
    RealAlgebraic,
    UniPoly,
    count_roots_between,
    discriminant_y,
    isolate_real_roots,
    polynomial_argument,
    re_im_decompose,
    real_roots,
    resultant_y,
    sample_between,
    sign_at_algebraic,
    simplest_between,
)

small_ints = st.integers(-5, 5)
coeff_lists = st.lists(small_ints, min_size=2, max_size=6).filter(lambda c: c[-1] != 0)


def test_unipoly_arithmetic():
    x = UniPoly.x()
    p = x * x - UniPoly.constant(2)
    assert p.degree == 2
    assert p(Fraction(3)) == 7
    q, r = (p * (x + UniPoly.constant(1)) + UniPoly.constant(5)).divmod(x + UniPoly.constant(1))
    assert q == p and r == UniPoly.constant(5)
    assert p.derivative() == UniPoly([0, 2])
    assert (x**3).compose(x + UniPoly.constant(1)) == UniPoly([1, 3, 3, 1])


def test_sqrt2_isolation_and_sign():
    p = UniPoly([-2, 0, 1])
    roots = real_roots(p)
    assert len(roots) == 2
    assert float(roots[0]) == pytest.approx(-np.sqrt(2), abs=1e-12)
    assert float(roots[1]) == pytest.approx(np.sqrt(2), abs=1e-12)
    # x - 1 is negative at -sqrt2 and positive at sqrt2
    assert sign_at_algebraic(UniPoly([-1, 1]), roots[0]) == -1
    assert sign_at_algebraic(UniPoly([-1, 1]), roots[1]) == 1
    assert sign_at_algebraic(p, roots[1]) == 0
    assert roots[0] < roots[1]


def test_rational_roots_are_exact():
    roots = real_roots(UniPoly([-6, 11, -6, 1]))  # (x-1)(x-2)(x-3)
    assert [r.value for r in roots] == [1, 2, 3]
    assert all(r.is_rational for r in roots)


def test_simplest_between():
    assert simplest_between(Fraction(-1), Fraction(1)) == 0
    assert simplest_between(Fraction(1, 3), Fraction(1, 2)) == Fraction(2, 5)
    assert simplest_between(Fraction(2), Fraction(5, 2)) == Fraction(7, 3)
    with pytest.raises(ValueError):
        simplest_between(Fraction(1), Fraction(1))


@settings(max_examples=100, deadline=None)
@given(st.fractions(-20, 20, max_denominator=50), st.fractions(-20, 20, max_denominator=50))
def test_simplest_between_is_simplest(a, b):
    assume(a < b)
    s = simplest_between(a, b)
    assert a < s < b
    for d in range(1, s.denominator):
        # no fraction with a smaller denominator fits
        lo = int(np.floor(a * d)) + 1
        assert Fraction(lo, d) >= b


def test_sample_between_algebraic():
    r = real_roots(UniPoly([-2, 0, 1]))
    s = sample_between(r[0], r[1])
    assert -np.sqrt(2) < s < np.sqrt(2)
    assert sample_between(None, r[0]) < -np.sqrt(2)
    assert sample_between(r[1], None) > np.sqrt(2)


@settings(max_examples=150, deadline=None)
@given(coeff_lists)
def test_real_roots_match_sympy(c):
    p = UniPoly(c)
    ours = real_roots(p)
    theirs = sorted({float(r) for r in sympy.Poly(c[::-1], sympy.Symbol("x")).real_roots()})
    assert len(ours) == len(theirs)
    assert np.allclose([float(r) for r in ours], theirs, atol=1e-12)
    assert all(a < b for a, b in pairwise(ours))


@settings(max_examples=100, deadline=None)
@given(coeff_lists, st.fractions(-10, 10), st.fractions(-10, 10))
def test_sturm_count_matches_sympy(c, a, b):
    assume(a < b)
    p = UniPoly(c)
    expected = len([r for r in sympy.Poly(c[::-1], sympy.Symbol("x")).real_roots() if a < r <= b])
    distinct = len({r for r in sympy.Poly(c[::-1], sympy.Symbol("x")).real_roots() if a < r <= b})
    assert count_roots_between(p, a, b) == distinct <= expected


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=3, max_size=6).filter(lambda c: c[-1] != 0))
def test_isolation_intervals_hold_one_root_each(c):
    x = sympy.Symbol("x")
    for f, _ in sympy.factor_list(sympy.Poly(c[::-1], x))[1]:
        if f.degree() < 2:
            continue
        g = UniPoly([int(v) for v in reversed(f.all_coeffs())])
        ivs = isolate_real_roots(g)
        assert len(ivs) == len(f.real_roots())
        for (a, b), (a2, _) in pairwise(ivs):
            assert b <= a2
        for a, b in ivs:
            assert count_roots_between(g, a, b) == 1


def test_bipoly_and_resultant():
    x, y = BiPoly.x(), BiPoly.y()
    circle = x * x + y * y - BiPoly.constant(1)
    line = y - x
    r = resultant_y(circle, line)
    # y = x on the unit circle: 2x^2 - 1 = 0
    assert [float(t) for t in real_roots(r)] == pytest.approx([-np.sqrt(0.5), np.sqrt(0.5)])
    d = discriminant_y(circle)
    assert [float(t) for t in real_roots(d)] == pytest.approx([-1.0, 1.0])
    assert circle(Fraction(3, 5), Fraction(4, 5)) == 0


def test_polynomial_argument():
    cp = polynomial_argument(parse("2*z^2 - I*z + 3"))
    assert cp.degree == 2
    assert cp(1 + 1j) == pytest.approx(2 * (1 + 1j) ** 2 - 1j * (1 + 1j) + 3)
    assert polynomial_argument(parse("sqrt(z)")) is None
    assert polynomial_argument(parse("z^(-1)")) is None


def test_decompose_rejects_functions():
    with pytest.raises(NotPolynomial):
        re_im_decompose(parse("exp(z)"))


@st.composite
def gaussian_polys(draw):
    deg = draw(st.integers(1, 4))
    re = draw(st.lists(st.integers(-3, 3), min_size=deg + 1, max_size=deg + 1))
    im = draw(st.lists(st.integers(-3, 3), min_size=deg + 1, max_size=deg + 1))
    assume(re[-1] != 0 or im[-1] != 0)
    terms = [f"({a} + ({b})*I)*z^{k}" for k, (a, b) in enumerate(zip(re, im))]
    return " + ".join(terms), np.array(re) + 1j * np.array(im)


@settings(max_examples=100, deadline=None)
@given(gaussian_polys(), st.floats(-3, 3), st.floats(-3, 3))
def test_re_im_decomposition(poly, x, y):
    text, c = poly
    rb = re_im_decompose(parse(text))
    w = np.polyval(c[::-1], complex(x, y))
    assert float(rb.P(x, y)) == pytest.approx(w.real, abs=1e-9 * (1 + abs(w)))
    assert float(rb.Q(x, y)) == pytest.approx(w.imag, abs=1e-9 * (1 + abs(w)))


def test_real_algebraic_equality_and_order():
    a = RealAlgebraic.rational(Fraction(1, 2))
    b = RealAlgebraic.rational(Fraction(1, 2))
    assert a == b and hash(a) == hash(b)
    s = real_roots(UniPoly([-2, 0, 1]))[1]
    assert a < s
    assert "RootOf" in s.exact_text() or "sqrt" in s.exact_text()
