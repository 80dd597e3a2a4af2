"""Trace varieties of endomorphisms of F2 and a small triangular solver.

A pair ``(A, B)`` conjugate to ``(phi(A), phi(B))`` has equal Fricke
coordinates, so it lies on ``tr phi(a) = x, tr phi(b) = y, tr phi(ab) = z``.
:func:`solve_triangular` handles the systems that fall apart by linear
elimination plus at most one monic quadratic; anything else comes back as
:class:`Unsolved` with the residual equations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Union

from .polyring import DEFAULT_VARS, Polynomial, discriminant_in_var, format_poly, quadratic_roots_in_var
from .trace import TraceContext, is_solvable_triple, trace_poly
from .words import AlphabetError, Endomorphism, FreeWord

ELIMINATION_ORDER = ("z", "y", "x")


@dataclass(frozen=True)
class TraceSystem:
    phi: Endomorphism
    equations: tuple[Polynomial, Polynomial, Polynomial]

    def __iter__(self):
        return iter(self.equations)


@dataclass(frozen=True)
class Component:
    """A substitution ``sigma`` solving the system; ``free`` are its parameters."""

    sigma: Mapping[str, Polynomial]
    free: tuple[str, ...]

    def total(self) -> dict[str, Polynomial]:
        out = {v: Polynomial.var(v) for v in DEFAULT_VARS}
        out.update(self.sigma)
        return out

    @property
    def dimension(self) -> int:
        return len(self.free)

    def __str__(self) -> str:
        bound = [v for v in DEFAULT_VARS if v in self.sigma]
        return ", ".join(f"{v}={format_poly(self.sigma[v]).replace(' ', '')}" for v in bound)


@dataclass(frozen=True)
class Solved:
    components: tuple[Component, ...]
    free: tuple[str, ...]
    quadratic: Polynomial | None = None
    quadratic_var: str | None = None
    discriminant: Polynomial | None = None
    steps: tuple[str, ...] = ()

    @property
    def dimension(self) -> int:
        return len(self.free)


@dataclass(frozen=True)
class Unsolved:
    residual: tuple[Polynomial, ...]
    partial: Mapping[str, Polynomial] = field(default_factory=dict)
    steps: tuple[str, ...] = ()

    @property
    def dimension(self) -> int:
        # combinatorial count: one dimension lost per elimination or residual equation
        return len(DEFAULT_VARS) - len(self.partial) - len(self.residual)


SolveResult = Union[Solved, Unsolved]


def build_system(phi: Endomorphism, ctx: TraceContext | None = None) -> TraceSystem:
    if phi.rank != 2:
        raise AlphabetError(f"trace varieties need an endomorphism of F2, got rank {phi.rank}")
    a, b = phi.domain
    ctx = ctx or TraceContext((a, b))
    ga, gb = FreeWord.gen(a), FreeWord.gen(b)
    eqs = (
        trace_poly(phi(ga), ctx) - Polynomial.var("x"),
        trace_poly(phi(gb), ctx) - Polynomial.var("y"),
        trace_poly(phi(ga * gb), ctx) - Polynomial.var("z"),
    )
    return TraceSystem(phi, eqs)


def check_component(system: TraceSystem, sigma: Mapping[str, Polynomial] | Component) -> bool:
    if isinstance(sigma, Component):
        sigma = sigma.total()
    return all(e.substitute(sigma).is_zero() for e in system.equations)


# -- elimination -------------------------------------------------------------

_LEX = {"z": 0, "y": 1, "x": 2}


def _lex_key(p: Polynomial, mono) -> tuple:
    return tuple(mono[p.vars.index(v)] for v in ELIMINATION_ORDER)


def _lex_leading(p: Polynomial):
    return max(p.terms.items(), key=lambda t: _lex_key(p, t[0]))


def _divide_out(f: Polynomial, g: Polynomial) -> Polynomial:
    """Remainder of ``f`` on division by ``g`` (lex z > y > x), when ``g`` is monic up to sign."""
    g_mono, g_coef = _lex_leading(g)
    if g_coef not in (1, -1) or not any(g_mono):
        return f
    changed = True
    while changed:
        changed = False
        for mono, c in sorted(f.terms.items(), key=lambda t: _lex_key(f, t[0]), reverse=True):
            if all(a >= b for a, b in zip(mono, g_mono)):
                quot = Polynomial({tuple(a - b for a, b in zip(mono, g_mono)): c * g_coef}, f.vars)
                f = f - quot * g
                changed = True
                break
    return f


def _simpler(p: Polynomial, q: Polynomial) -> bool:
    return (p.total_degree(), len(p.terms)) < (q.total_degree(), len(q.terms))


def _interreduce(eqs: list[Polynomial]) -> tuple[list[Polynomial], bool]:
    changed = False
    progress = True
    while progress:
        progress = False
        for i in range(len(eqs)):
            for j in range(len(eqs)):
                if i == j or eqs[i].is_zero() or eqs[j].is_zero():
                    continue
                r = _divide_out(eqs[i], eqs[j])
                if _simpler(r, eqs[i]):
                    eqs[i] = r
                    progress = changed = True
    return [e for e in eqs if not e.is_zero()], changed


def _linear_candidates(eqs: list[Polynomial]):
    for idx, e in enumerate(eqs):
        for v in ELIMINATION_ORDER:
            if e.degree_in(v) != 1:
                continue
            c = e.coefficient_in(v, 1)
            if not c.is_constant() or c.constant_value() not in (1, -1):
                continue
            rest = e.coefficient_in(v, 0)
            value = rest * (-c.constant_value())
            yield (value.total_degree(), _LEX[v]), idx, v, value


def solve_triangular(system: TraceSystem) -> SolveResult:
    eqs = [e for e in system.equations if not e.is_zero()]
    sigma: dict[str, Polynomial] = {}
    steps: list[str] = []

    while eqs:
        eqs, reduced = _interreduce(eqs)
        if reduced:
            steps.append("interreduce: " + " ; ".join(map(str, eqs)))
        best = min(_linear_candidates(eqs), default=None, key=lambda t: t[0])
        if best is None:
            break
        _, idx, v, value = best
        steps.append(f"eliminate {v} = {value}")
        sub = {v: value}
        sigma = {k: p.substitute(sub) for k, p in sigma.items()}
        sigma[v] = value
        eqs = [e.substitute(sub) for i, e in enumerate(eqs) if i != idx]
        eqs = [e for e in eqs if not e.is_zero()]

    bound = set(sigma)
    if not eqs:
        if not sigma:
            return Unsolved((), {}, tuple(steps))
        free = tuple(v for v in DEFAULT_VARS if v not in bound)
        comp = Component(dict(sigma), free)
        _assert_component(system, comp)
        return Solved((comp,), free, steps=tuple(steps))

    if len(eqs) == 1:
        (eq,) = eqs
        for v in ELIMINATION_ORDER:
            if v in bound or eq.degree_in(v) != 2:
                continue
            lead = eq.coefficient_in(v, 2)
            if not lead.is_constant() or lead.constant_value() not in (1, -1):
                continue
            roots = quadratic_roots_in_var(eq, v)
            if roots is None:
                continue
            disc = discriminant_in_var(eq, v)
            steps.append(f"quadratic in {v}: {eq}; discriminant {disc}")
            free = tuple(u for u in DEFAULT_VARS if u not in bound and u != v)
            comps = []
            for r in roots:
                sub = {v: r}
                s = {k: p.substitute(sub) for k, p in sigma.items()}
                s[v] = r
                comp = Component(dict(sorted(s.items())), free)
                _assert_component(system, comp)
                comps.append(comp)
            return Solved(tuple(comps), free, eq, v, disc, tuple(steps))

    return Unsolved(tuple(eqs), dict(sigma), tuple(steps))


def _assert_component(system: TraceSystem, comp: Component) -> None:
    if not check_component(system, comp):
        raise AssertionError(f"solver produced a non-solution {comp}")


def solvable_pair_probe(sigma: Mapping[str, Polynomial] | Component, u: FreeWord, v: FreeWord,
                        ctx: TraceContext | None = None) -> bool:
    """Whether ``u`` and ``v`` have commutator trace 2 identically on ``sigma``."""
    pu, pv, puv = solvable_pair_traces(sigma, u, v, ctx)
    return is_solvable_triple(pu, pv, puv)


def solvable_pair_traces(sigma, u: FreeWord, v: FreeWord, ctx: TraceContext | None = None):
    if isinstance(sigma, Component):
        sigma = sigma.total()
    return tuple(trace_poly(w, ctx).substitute(sigma) for w in (u, v, u * v))
