from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hnnkit.polyring import (
    X,
    Y,
    Z,
    PolySyntaxError,
    Polynomial,
    add,
    evaluate,
    format_poly,
    mul,
    neg,
    parse_poly,
    poly_sqrt,
    pow,
    quadratic_roots_in_var,
    substitute,
)

from conftest import polynomials

P = parse_poly


def test_ring_examples():
    assert add(X, neg(X)).is_zero()
    assert mul(X + 1, X - 1) == X ** 2 - 1
    assert pow(X + Y, 2) == X ** 2 + 2 * X * Y + Y ** 2


def test_substitute_examples():
    p = X * Y - X
    assert substitute(p, {"y": Polynomial.const(2)}) == X
    assert substitute(p, {"y": X ** 2 - 1}) == X ** 3 - 2 * X
    assert substitute(p, {}) == p


def test_eval_examples():
    assert evaluate(P("x^2 + y^2 + z^2 - x*y*z - 2"), {"x": 2, "y": 2, "z": 2}) == 2
    assert evaluate(X, {"x": Fraction(5, 3), "y": 0, "z": 0}) == Fraction(5, 3)
    # 2*2 - 3
    assert evaluate(X * Y - Z, {"x": 2, "y": 2, "z": 3}) == 1


def test_poly_sqrt_examples():
    assert poly_sqrt(P("x^4 - 6*x^2 + 9")) == P("x^2 - 3")
    assert poly_sqrt(Polynomial.const(4)) == Polynomial.const(2)
    assert poly_sqrt(X) is None
    assert poly_sqrt(P("x^2 + 1")) is None
    assert poly_sqrt(-(X ** 2)) is None
    assert poly_sqrt(Polynomial()) == Polynomial()


def test_quadratic_roots_examples():
    quad = P("y^2 - (1 + x^2)*y + 2*x^2 - 2")
    roots = quadratic_roots_in_var(quad, "y")
    assert roots == (Polynomial.const(2), P("x^2 - 1"))
    # brute check: each root kills the quadratic
    for r in roots:
        assert quad.substitute({"y": r}).is_zero()
    assert quadratic_roots_in_var(Y ** 2, "y") == (Polynomial(), Polynomial())
    assert quadratic_roots_in_var(Y ** 2 + 1, "y") is None


def test_quadratic_sign_and_errors():
    assert quadratic_roots_in_var(-(Y ** 2) + 4, "y") == (Polynomial.const(-2), Polynomial.const(2))
    with pytest.raises(ValueError):
        quadratic_roots_in_var(Y ** 3, "y")
    with pytest.raises(ValueError):
        quadratic_roots_in_var(2 * Y ** 2, "y")
    with pytest.raises(ValueError):
        quadratic_roots_in_var(X * Y ** 2, "y")
    # roots not integral: y^2 + y
    assert quadratic_roots_in_var(Y ** 2 + X * Y, "y") == (Polynomial(), -X)
    assert quadratic_roots_in_var(Y ** 2 + Y + X, "y") is None


def test_printing_is_deglex():
    assert format_poly(P("1 - 2*x*y + x^3*z")) == "x^3*z - 2*x*y + 1"
    assert format_poly(Polynomial()) == "0"
    assert format_poly(P("-x")) == "-x"
    assert format_poly(P("y^2 + x^2 + z")) == "x^2 + y^2 + z"


def test_parse_accepts_implicit_products():
    assert P("2x y^2") == 2 * X * Y ** 2
    assert P("x(y - 1)") == X * Y - X
    assert P("-(x - 1)^2") == -(X - 1) ** 2


@pytest.mark.parametrize("bad", ["x +", "w", "x^-1", "(x", "x ) "])
def test_parse_errors(bad):
    with pytest.raises(PolySyntaxError):
        P(bad)


def test_mismatched_variables():
    other = Polynomial.var("u", ("u", "v"))
    with pytest.raises(ValueError):
        X + other


@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p + q == q + p
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert p - p == Polynomial()


@given(polynomials())
def test_print_parse_roundtrip(p):
    assert P(format_poly(p)) == p


point = st.fractions(min_value=-4, max_value=4, max_denominator=5)


@given(polynomials(), polynomials(max_deg=3), polynomials(max_deg=3), point, point, point)
def test_eval_commutes_with_substitute(p, s1, s2, px, py, pz):
    sigma = {"x": s1, "z": s2}
    pt = {"x": px, "y": py, "z": pz}
    inner = {"x": s1.eval(pt), "y": py, "z": s2.eval(pt)}
    assert p.substitute(sigma).eval(pt) == p.eval(inner)


@given(polynomials(max_deg=5, max_terms=5))
def test_sqrt_of_square(q):
    r = poly_sqrt(q * q)
    assert r is not None
    assert r == q or r == -q
    if not q.is_zero():
        assert r.leading_term()[1] > 0


@given(polynomials(max_deg=3, max_terms=3), polynomials(max_deg=3, max_terms=3))
def test_quadratic_roots_vanish(r1, r2):
    # (y - r1)(y - r2) with r1, r2 free of y
    r1 = r1.substitute({"y": Polynomial()})
    r2 = r2.substitute({"y": Polynomial()})
    quad = (Y - r1) * (Y - r2)
    roots = quadratic_roots_in_var(quad, "y")
    assert roots is not None
    assert set(roots) == {r1, r2}
    for r in roots:
        assert quad.substitute({"y": r}).is_zero()
