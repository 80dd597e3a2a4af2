"""Multivariate polynomials with integer coefficients.

Polynomials live over an ordered tuple of variable names, ``("x", "y",
"z")`` by default.  Monomials are exponent tuples in that order and the
canonical term order is degree-lexicographic with earlier variables larger,
so ``x > y > z``.  Evaluation points are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt
from typing import Iterable, Mapping, Union

Monomial = tuple[int, ...]
DEFAULT_VARS = ("x", "y", "z")

Rational = Fraction
Coercible = Union["Polynomial", int]


def _mono_key(m: Monomial) -> tuple:
    return (sum(m), m)


class Polynomial:
    __slots__ = ("vars", "_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None, vars: tuple[str, ...] = DEFAULT_VARS):
        self.vars = tuple(vars)
        clean = {}
        for mono, c in (terms or {}).items():
            if len(mono) != len(self.vars):
                raise ValueError(f"monomial {mono} does not match variables {self.vars}")
            if c:
                clean[tuple(mono)] = int(c)
        self._terms = clean
        self._hash = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def const(cls, c: int, vars: tuple[str, ...] = DEFAULT_VARS) -> Polynomial:
        return cls({(0,) * len(vars): c}, vars)

    @classmethod
    def var(cls, name: str, vars: tuple[str, ...] = DEFAULT_VARS) -> Polynomial:
        i = vars.index(name)
        return cls({tuple(int(j == i) for j in range(len(vars))): 1}, vars)

    def _coerce(self, other: Coercible) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise ValueError(f"variable sets differ: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, int):
            return Polynomial.const(other, self.vars)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    # -- inspection ----------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self):
        """Terms in canonical (descending deglex) order."""
        return sorted(self._terms.items(), key=lambda t: _mono_key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0,) * len(self.vars), 0)

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def degree_in(self, v: str) -> int:
        i = self.vars.index(v)
        return max((m[i] for m in self._terms), default=-1)

    def variables(self) -> set[str]:
        return {v for i, v in enumerate(self.vars) if any(m[i] for m in self._terms)}

    def free_of(self, v: str) -> bool:
        return self.degree_in(v) <= 0

    def leading_term(self) -> tuple[Monomial, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self.items()[0]

    def coefficient_in(self, v: str, k: int) -> Polynomial:
        """Coefficient of ``v**k``, a polynomial free of ``v``."""
        i = self.vars.index(v)
        out = {}
        for m, c in self._terms.items():
            if m[i] == k:
                out[m[:i] + (0,) + m[i + 1:]] = c
        return Polynomial(out, self.vars)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: Coercible) -> Polynomial:
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(out, self.vars)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial({m: -c for m, c in self._terms.items()}, self.vars)

    def __sub__(self, other: Coercible) -> Polynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Coercible) -> Polynomial:
        return self._coerce(other) - self

    def __mul__(self, other: Coercible) -> Polynomial:
        other = self._coerce(other)
        out: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(out, self.vars)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div_int(self, d: int) -> Polynomial | None:
        """Divide every coefficient by ``d``; ``None`` if some is not divisible."""
        if any(c % d for c in self._terms.values()):
            return None
        return Polynomial({m: c // d for m, c in self._terms.items()}, self.vars)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.const(other, self.vars)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self._terms.items())))
        return self._hash

    # -- substitution and evaluation -----------------------------------------

    def substitute(self, sigma: Mapping[str, Coercible]) -> Polynomial:
        """Simultaneous substitution; variables missing from ``sigma`` are kept."""
        images = []
        for v in self.vars:
            img = sigma.get(v)
            images.append(Polynomial.var(v, self.vars) if img is None else self._coerce(img))
        powers: list[dict[int, Polynomial]] = [{0: Polynomial.const(1, self.vars)} for _ in self.vars]

        def power(i: int, k: int) -> Polynomial:
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        result = Polynomial(vars=self.vars)
        for m, c in self._terms.items():
            term = Polynomial.const(c, self.vars)
            for i, k in enumerate(m):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def eval(self, point: Mapping[str, Fraction | int]) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            term = Fraction(c)
            for v, k in zip(self.vars, m):
                if k:
                    if v not in point:
                        raise KeyError(f"no value for variable {v}")
                    term *= Fraction(point[v]) ** k
            total += term
        return total

    # -- printing ------------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_poly(self)!r})"


def format_poly(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i, (m, c) in enumerate(p.items()):
        factors = [v if k == 1 else f"{v}^{k}" for v, k in zip(p.vars, m) if k]
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


# -- parsing -----------------------------------------------------------------

_PTOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")


class PolySyntaxError(ValueError):
    pass


def parse_poly(text: str, vars: tuple[str, ...] = DEFAULT_VARS) -> Polynomial:
    """Parse expressions like ``"x^3*z - 2*x*y + 1"``; ``*`` may be omitted."""
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _PTOKEN.match(text, pos)
        if not m:
            raise PolySyntaxError(f"unexpected character {text[pos]!r} at position {pos}: {text!r}")
        tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    i = 0

    def peek():
        return tokens[i]

    def fail(msg):
        raise PolySyntaxError(f"{msg} at position {peek()[2]}: {text!r}")

    def expr() -> Polynomial:
        nonlocal i
        sign = 1
        if peek()[1] in "+-" and peek()[0] == "op":
            sign = -1 if peek()[1] == "-" else 1
            i += 1
        acc = term() * sign
        while peek()[0] == "op" and peek()[1] in "+-":
            op = peek()[1]
            i += 1
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term() -> Polynomial:
        nonlocal i
        acc = factor()
        while True:
            kind, val, _ = peek()
            if kind == "op" and val == "*":
                i += 1
                acc = acc * factor()
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                acc = acc * factor()
            else:
                return acc

    def factor() -> Polynomial:
        nonlocal i
        base = atom()
        if peek()[0] == "op" and peek()[1] == "^":
            i += 1
            if peek()[0] != "num":
                fail("expected non-negative integer exponent")
            n = int(peek()[1])
            i += 1
            base = base ** n
        return base

    def atom() -> Polynomial:
        nonlocal i
        kind, val, _ = peek()
        if kind == "num":
            i += 1
            return Polynomial.const(int(val), vars)
        if kind == "name":
            if val not in vars:
                fail(f"unknown variable {val!r}")
            i += 1
            return Polynomial.var(val, vars)
        if kind == "op" and val == "(":
            i += 1
            inner = expr()
            if peek()[1] != ")":
                fail("expected ')'")
            i += 1
            return inner
        if kind == "op" and val == "-":
            i += 1
            return -factor()
        fail(f"unexpected {val or 'end of input'!r}")

    result = expr()
    if peek()[0] != "end":
        fail(f"unexpected {peek()[1]!r}")
    return result


# -- module-level API ----------------------------------------------------------

X = Polynomial.var("x")
Y = Polynomial.var("y")
Z = Polynomial.var("z")


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def neg(p: Polynomial) -> Polynomial:
    return -p


def pow(p: Polynomial, n: int) -> Polynomial:  # noqa: A001
    return p ** n


def substitute(p: Polynomial, sigma: Mapping[str, Coercible]) -> Polynomial:
    return p.substitute(sigma)


def evaluate(p: Polynomial, point: Mapping[str, Fraction | int]) -> Fraction:
    return p.eval(point)


def _divide_monomial(a: Monomial, b: Monomial) -> Monomial | None:
    if all(x >= y for x, y in zip(a, b)):
        return tuple(x - y for x, y in zip(a, b))
    return None


def poly_sqrt(p: Polynomial) -> Polynomial | None:
    """Integer square root of a polynomial, leading coefficient positive.

    Takes the root of the leading term, then repeatedly peels the leading
    term of the remainder ``p - q**2`` by ``2 * lt(q)``.
    """
    if p.is_zero():
        return p
    lead_m, lead_c = p.leading_term()
    if lead_c < 0 or any(k % 2 for k in lead_m):
        return None
    r = isqrt(lead_c)
    if r * r != lead_c:
        return None
    root_m = tuple(k // 2 for k in lead_m)
    q = Polynomial({root_m: r}, p.vars)
    two_lead = 2 * r
    while True:
        rem = p - q * q
        if rem.is_zero():
            return q
        m, c = rem.leading_term()
        quot = _divide_monomial(m, root_m)
        # lm(rem) strictly decreases each round and quot stays below root_m,
        # of which there are finitely many monomials, so the loop ends
        if quot is None or c % two_lead or _mono_key(quot) >= _mono_key(root_m):
            return None
        q = q + Polynomial({quot: c // two_lead}, p.vars)


def quadratic_roots_in_var(p: Polynomial, v: str) -> tuple[Polynomial, Polynomial] | None:
    """Roots of ``p`` viewed as a monic (up to sign) quadratic in ``v``.

    Returns the two roots as polynomials free of ``v``, ordered by
    (total degree, printed form), or ``None`` when the discriminant is not a
    perfect square or the roots are not integral.
    """
    if p.degree_in(v) != 2:
        raise ValueError(f"{p} has degree {p.degree_in(v)} in {v}, expected 2")
    lead = p.coefficient_in(v, 2)
    if lead not in (Polynomial.const(1, p.vars), Polynomial.const(-1, p.vars)):
        raise ValueError(f"leading coefficient {lead} in {v} is not +-1")
    sign = lead.constant_value()
    b = p.coefficient_in(v, 1) * sign
    c = p.coefficient_in(v, 0) * sign
    disc = b * b - 4 * c
    s = poly_sqrt(disc)
    if s is None:
        return None
    r1 = (-b + s).exact_div_int(2)
    r2 = (-b - s).exact_div_int(2)
    if r1 is None or r2 is None:
        return None
    roots = sorted([r1, r2], key=lambda r: (r.total_degree(), format_poly(r)))
    return roots[0], roots[1]


def discriminant_in_var(p: Polynomial, v: str) -> Polynomial:
    lead = p.coefficient_in(v, 2)
    return p.coefficient_in(v, 1) ** 2 - 4 * lead * p.coefficient_in(v, 0)
