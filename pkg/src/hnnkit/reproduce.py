"""End-to-end reproduction report for the worked examples.

Each check records an expected and a computed value in printed form.  For
the two hand-derived trace polynomials the matrix oracle is the arbiter:
when the printed polynomial disagrees with the computed one but the oracle
confirms the computed one, the check passes and carries a conflict note.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .hnn import (
    FinitePresentation,
    HnnPresentation,
    check_homomorphism,
    equal,
    magnus_rewrite,
    no_power_inner_sufficient,
    parse_hnn_word,
)
from .polyring import X, Y, Z, Polynomial, parse_poly
from .quotients import affine_witness, is_witness
from .subgroups import is_injective
from .trace import TraceContext, eval_word, fricke_point, kappa, random_sl2, trace_poly
from .variety import Solved, build_system, check_component, solve_triangular, solvable_pair_probe
from .words import commutator, parse_endomorphism, parse_word

EXPECTED = {
    "commutator-trace": "x^2 + y^2 + z^2 - x*y*z - 2",
    "example-system": "0 | x^2 + y^2 + z^2 - x*y*z - 2 - y | x*(x^2 + y^2 + z^2 - x*y*z - 2) - x - z",
    "example-curves": "y=2, z=x | y=x^2-1, z=x^3-2*x",
    "example-discriminant": "(x^2 - 3)^2",
    "trace-w": "-3*y - 4*x*z + 5*y*x^2 + x*z^3 - 2*y*x^2*z^2 + y*z^2 + y^3 - y^3*x^2 + y^2*x^3*z + x^3*z - y*x^4",
    "trace-wa": ("x^4*y^2*z - x^5*y - x^3*y^3 - 2*x^3*y*z^2 + x^4*z - x^2*y^2*z + x^2*z^3 + 6*x^3*y"
                 " + 2*x*y^3 + 3*x*y*z^2 - 5*x^2*z - y^2*z - z^3 - 7*x*y + 3*z"),
    "curve-substitution": "2 | x",
    "solvable-pairs": "true | true",
    "second-example-dimension": "2",
    "magnus-embedding": "true",
    "subgroup-relations": "true | true",
    "affine-witness": "Affine(7): a=(1,1), t=(3,0); order 42",
}

WORD_W = "a b^-1 a^-1 b a^-1 b^-1 a"
CURVE_1 = {"y": Polynomial.const(2), "z": X}
CURVE_2 = {"y": parse_poly("x^2 - 1"), "z": parse_poly("x^3 - 2*x")}
ORACLE_PAIRS = 20


@dataclass
class Check:
    name: str
    passed: bool
    expected: str
    computed: str
    note: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def as_dict(self) -> dict:
        d = {"name": self.name, "status": self.status, "expected": self.expected, "computed": self.computed}
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def as_dict(self) -> dict:
        return {"status": self.status, "checks": [c.as_dict() for c in self.checks]}

    def format(self) -> str:
        lines = []
        for i, c in enumerate(self.checks, 1):
            lines.append(f"[{c.status.upper()}] {i:2d} {c.name}")
            lines.append(f"      expected: {c.expected}")
            lines.append(f"      computed: {c.computed}")
            if c.note:
                lines.append(f"      note:     {c.note}")
        n = sum(c.passed for c in self.checks)
        lines.append(f"{n}/{len(self.checks)} checks passed: {self.status}")
        return "\n".join(lines)


def oracle_agrees(word, poly: Polynomial, pairs: int = ORACLE_PAIRS, seed: int = 0) -> bool:
    rng = random.Random(seed)
    for _ in range(pairs):
        A, B = random_sl2(rng), random_sl2(rng)
        if poly.eval(fricke_point(A, B)) != eval_word(word, A, B).trace():
            return False
    return True


def _printed_poly_check(name: str, word, expected_text: str) -> tuple[Check, Polynomial]:
    computed = trace_poly(word)
    printed = parse_poly(expected_text)
    oracle_ok = oracle_agrees(word, computed)
    note = f"oracle on {ORACLE_PAIRS} matrix pairs: {'agrees' if oracle_ok else 'DISAGREES'}"
    if printed != computed and oracle_ok:
        diff = printed - computed
        note += f"; printed polynomial conflicts with the oracle (printed - computed = {diff}), oracle value kept"
    return Check(name, oracle_ok, expected_text, str(computed), note), computed


def verify_paper(expected: dict[str, str] | None = None) -> Report:
    exp = dict(EXPECTED)
    exp.update(expected or {})
    report = Report()
    add = report.checks.append
    a, b = parse_word("a"), parse_word("b")

    # 1. commutator trace
    got = trace_poly(commutator(a, b))
    add(Check("commutator-trace", got == parse_poly(exp["commutator-trace"]) and got == kappa(X, Y, Z),
              exp["commutator-trace"], str(got)))

    # 2. trace system of a -> a, b -> [a,b]
    phi = parse_endomorphism("a -> a ; b -> [a,b]")
    system = build_system(phi)
    want = [parse_poly(s) for s in exp["example-system"].split("|")]
    add(Check("example-system", list(system.equations) == want, exp["example-system"],
              " | ".join(map(str, system.equations))))

    # 3. two curves
    result = solve_triangular(system)
    comps = " | ".join(map(str, result.components)) if isinstance(result, Solved) else "unsolved"
    disc = str(result.discriminant) if isinstance(result, Solved) else "-"
    curves_ok = (
        isinstance(result, Solved)
        and comps == exp["example-curves"]
        and result.discriminant == parse_poly(exp["example-discriminant"])
        and all(check_component(system, c) for c in result.components)
    )
    add(Check("example-curves", curves_ok, f"{exp['example-curves']}; discriminant {exp['example-discriminant']}",
              f"{comps}; discriminant {disc}"))

    # 4. hand-derived trace polynomials against the oracle
    w = parse_word(WORD_W)
    check_w, tw = _printed_poly_check("trace-w", w, exp["trace-w"])
    check_wa, twa = _printed_poly_check("trace-wa", w * a, exp["trace-wa"])
    add(Check("trace-polynomials", check_w.passed and check_wa.passed,
              f"w: {check_w.expected} | wa: {check_wa.expected}",
              f"w: {check_w.computed} | wa: {check_wa.computed}",
              "; ".join(f"{c.name}: {c.note}" for c in (check_w, check_wa))))

    # 5. restriction to the second curve
    sub_w, sub_wa = tw.substitute(CURVE_2), twa.substitute(CURVE_2)
    want_w, want_wa = (parse_poly(s) for s in exp["curve-substitution"].split("|"))
    add(Check("curve-substitution", sub_w == want_w and sub_wa == want_wa, exp["curve-substitution"],
              f"{sub_w} | {sub_wa}"))

    # 6. solvable pairs on each curve
    probe1 = solvable_pair_probe(CURVE_1, a, b)
    probe2 = solvable_pair_probe(CURVE_2, w, a)
    got = f"{str(probe1).lower()} | {str(probe2).lower()}"
    add(Check("solvable-pairs", got == exp["solvable-pairs"], exp["solvable-pairs"], got,
              "curve y=2: (a, b); curve y=x^2-1: (w, a)"))

    # 7. two-dimensional variety of a -> a, b -> (ba) b (ba)^-1
    system2 = build_system(parse_endomorphism("a -> a ; b -> (b a) b (b a)^-1"))
    result2 = solve_triangular(system2)
    e1, e2, e3 = system2.equations
    ok = e1.is_zero() and e2.is_zero() and not e3.is_zero() and str(result2.dimension) == exp["second-example-dimension"]
    add(Check("second-example-dimension", ok, exp["second-example-dimension"], str(result2.dimension),
              f"E1 = {e1}, E2 = {e2}, E3 = {e3}"))

    # 8. Magnus rewriting and the embedding a -> b0, b -> b1, t -> t^2
    P = magnus_rewrite(2, parse_word("a^2"))
    source = FinitePresentation.parse("a b t", ["t a t^-1 = a^2", "t b t^-1 = b^2"])
    hom = check_homomorphism(source, P, {"a": "b0", "b": "b1", "t": "t^2"})
    relator = equal(P, parse_hnn_word("t^2 b0 t^-2"), parse_hnn_word("b0^2"))
    ok8 = hom and relator and is_injective(P.phi) and no_power_inner_sufficient(P.phi) is True
    add(Check("magnus-embedding", ok8 and exp["magnus-embedding"] == "true", exp["magnus-embedding"],
              str(ok8).lower(), f"rewritten: {P.phi}; t^2 b0 t^-2 = b0^2: {relator}; relators preserved: {hom}"))

    # 9. relations in < a, b, t | t a t^-1 = a^2, t b t^-1 = b^-1 >
    C = HnnPresentation(parse_endomorphism("a -> a^2 ; b -> b^-1"))
    r1 = equal(C, parse_hnn_word("t^2 a t^-2"), parse_hnn_word("a^4"))
    r2 = equal(C, parse_hnn_word("t^2 b a b^-1 t^-2"), parse_hnn_word("b a^4 b^-1"))
    got = f"{str(r1).lower()} | {str(r2).lower()}"
    add(Check("subgroup-relations", got == exp["subgroup-relations"], exp["subgroup-relations"], got))

    # 10. a finite quotient in which a survives
    T = FinitePresentation.parse("a t", ["t^2 a t^-2 a^-2"])
    A = affine_witness(T, a, 7)
    got = f"{A}; order {A.image_order()}" if A else "none"
    add(Check("affine-witness", A is not None and is_witness(A, T, a) and got == exp["affine-witness"],
              exp["affine-witness"], got))
    return report
