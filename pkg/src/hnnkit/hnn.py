"""Ascending HNN extensions of free groups.

``HNN(phi) = < F, t | t g t^-1 = phi(g) >`` for an injective endomorphism
``phi`` of a free group ``F``.  Every element can be written
``t^-p w t^q`` with ``p, q >= 0``; requiring ``w`` outside ``phi(F)``
whenever ``p`` and ``q`` are both positive makes the triple unique, which
solves the word problem.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .subgroups import SubgroupGraph, image_graph, is_injective
from .words import (
    AlphabetError,
    Endomorphism,
    FreeWord,
    IDENTITY,
    Syllable,
    WordSyntaxError,
    format_word,
    is_generator_name,
    parse_endomorphism,
    parse_word,
)

HnnWord = tuple[Syllable, ...]


class NotInjective(ValueError):
    pass


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class HnnNormalForm:
    p: int
    w: FreeWord
    q: int

    def format(self, stable: str = "t") -> str:
        parts = []
        if self.p:
            parts.append(f"{stable}^-{self.p}")
        if not self.w.is_identity or not (self.p or self.q):
            parts.append(format_word(self.w))
        if self.q:
            parts.append(stable if self.q == 1 else f"{stable}^{self.q}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class HnnPresentation:
    """``< base, stable | stable g stable^-1 = phi(g) >`` with ``phi`` injective.

    ``source_map`` translates letters of an original presentation (as left by
    Magnus rewriting) into words of this one.
    """

    phi: Endomorphism
    stable: str = "t"
    source_map: Mapping[str, FreeWord] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.stable in self.phi.domain:
            raise AlphabetError(f"stable letter {self.stable!r} clashes with base generators")
        if not is_generator_name(self.stable):
            raise AlphabetError(f"invalid stable letter {self.stable!r}")
        if not is_injective(self.phi):
            raise NotInjective(f"{self.phi} is not injective")

    @property
    def base(self) -> tuple[str, ...]:
        return self.phi.domain

    @cached_property
    def image(self) -> SubgroupGraph:
        return image_graph(self.phi)

    @cached_property
    def _powers(self) -> list[Endomorphism]:
        return [Endomorphism.identity(self.base)]

    def phi_power(self, k: int) -> Endomorphism:
        powers = self._powers
        while len(powers) <= k:
            powers.append(self.phi.compose(powers[-1]))
        return powers[k]

    def translate(self, u: Iterable[Syllable]) -> HnnWord:
        """Rewrite letters of the source presentation, if any, into this one."""
        if not self.source_map:
            return tuple(u)
        out: list[Syllable] = []
        for g, e in u:
            img = self.source_map.get(g)
            if img is None:
                out.append((g, e))
            else:
                out.extend((img ** e).syllables)
        return tuple(out)

    def __str__(self) -> str:
        lines = [f"gens: {' '.join(self.base)}"]
        if self.stable != "t":
            lines.append(f"stable: {self.stable}")
        lines.append(f"phi: {self.phi}")
        return "\n".join(lines)


def normal_form(P: HnnPresentation, u: Iterable[Syllable] | FreeWord) -> HnnNormalForm:
    p, w, q = 0, IDENTITY, 0
    base = set(P.base)
    for g, e in u:
        if g == P.stable:
            for _ in range(abs(e)):
                if e > 0:
                    q += 1
                elif q > 0:
                    q -= 1
                else:
                    p += 1
                    w = P.phi(w)
        elif g in base:
            w = w * P.phi_power(q).image(g) ** e
        else:
            raise AlphabetError(f"unknown letter {g!r}")
    graph = P.image
    while p > 0 and q > 0 and graph.contains(w):
        w = graph.express(w)
        p -= 1
        q -= 1
    return HnnNormalForm(p, w, q)


def equal(P: HnnPresentation, u, v) -> bool:
    return normal_form(P, u) == normal_form(P, v)


def magnus_rewrite(n: int, w: FreeWord, stable: str = "t") -> HnnPresentation:
    """Rewrite ``< a, t | t^n a t^-n = w(a) >`` over ``b_i = t^i a t^-i``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    letters = w.generators()
    if len(letters) > 1:
        raise AlphabetError(f"{w} is not a word in one generator")
    a = next(iter(letters)) if letters else "a"
    names = tuple(f"b{i}" for i in range(n))
    images = [FreeWord.gen(names[i + 1]) for i in range(n - 1)]
    images.append(w.substitute({a: FreeWord.gen(names[0])}))
    phi = Endomorphism(names, tuple(images))
    if not is_injective(phi):
        raise NotInjective(f"Magnus rewriting gives the non-injective map {phi}")
    return HnnPresentation(phi, stable, {a: FreeWord.gen(names[0])})


@dataclass(frozen=True)
class FinitePresentation:
    gens: tuple[str, ...]
    relators: tuple[FreeWord, ...]

    def __post_init__(self):
        for r in self.relators:
            extra = r.generators() - set(self.gens)
            if extra:
                raise AlphabetError(f"relator {r} uses unknown letters {sorted(extra)}")

    @classmethod
    def parse(cls, gens: str | Sequence[str], relators: Sequence[str]) -> FinitePresentation:
        if isinstance(gens, str):
            gens = gens.split()
        rels = []
        for r in relators:
            if "=" in r:
                lhs, rhs = r.split("=", 1)
                rels.append(parse_word(lhs) * ~parse_word(rhs))
            else:
                rels.append(parse_word(r))
        return cls(tuple(gens), tuple(rels))


def map_word(images: Mapping[str, FreeWord], r: FreeWord) -> FreeWord:
    missing = r.generators() - set(images)
    if missing:
        raise AlphabetError(f"no image for {sorted(missing)}")
    return r.substitute(dict(images))


def check_homomorphism(source: FinitePresentation, target: HnnPresentation,
                       images: Mapping[str, FreeWord | str]) -> bool:
    """True iff every source relator maps to the identity of ``target``."""
    imgs = {g: parse_word(v) if isinstance(v, str) else v for g, v in images.items()}
    missing = set(source.gens) - set(imgs)
    if missing:
        raise AlphabetError(f"no image for {sorted(missing)}")
    trivial = HnnNormalForm(0, IDENTITY, 0)
    return all(normal_form(target, map_word(imgs, r)) == trivial for r in source.relators)


def abelianization_matrix(phi: Endomorphism) -> list[list[int]]:
    """Column ``j`` holds the exponent sums of ``phi(gen_j)``."""
    return [[img.exponent_sum(g) for img in phi.images] for g in phi.domain]


def determinant(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    rows = [[Fraction(v) for v in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        for r in range(col + 1, n):
            f = rows[r][col] / rows[col][col]
            if f:
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return int(det)


def no_power_inner_sufficient(phi: Endomorphism) -> bool | None:
    """``True`` when no nonzero power of ``phi`` can be inner; ``None`` if undecided.

    Inner automorphisms act trivially on the abelianization, so a power
    ``phi^m`` can only be inner if ``det(M)^m = 1``.
    """
    if determinant(abelianization_matrix(phi)) not in (1, -1):
        return True
    return None


# -- text formats --------------------------------------------------------------

_RAW_TERM = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?")


def parse_hnn_word(text: str) -> HnnWord:
    """Parse a word without free reduction, so cancelling pairs survive.

    Falls back to the full word grammar (brackets, parentheses) when the
    text is not a plain list of terms.
    """
    text = text.strip()
    if text == "1":
        return ()
    out, pos = [], 0
    while pos < len(text):
        m = _RAW_TERM.match(text, pos)
        if not m:
            return parse_word(text).syllables
        exp = int(m.group(2)) if m.group(2) else 1
        if exp == 0:
            raise WordSyntaxError("exponent must be nonzero", text, m.start(2))
        out.append((m.group(1), exp))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    if not out:
        raise WordSyntaxError("empty word (use '1' for the identity)", text, 0)
    return tuple(out)


def _parse_rel(rel: str, gens: Sequence[str], stable: str) -> HnnPresentation:
    lhs, sep, rhs = rel.partition("=")
    if not sep:
        raise PresentationError(f"relation {rel!r} needs '='")
    left = parse_word(lhs).syllables
    others = [g for g in gens if g != stable]
    if len(others) != 1:
        raise PresentationError("relator form needs exactly one base generator besides the stable letter")
    a = others[0]
    shape_ok = (
        len(left) == 3
        and left[0][0] == stable and left[2][0] == stable
        and left[1] == (a, 1)
        and left[0][1] == -left[2][1] and left[0][1] >= 1
    )
    if not shape_ok:
        raise PresentationError(f"relation must read '{stable}^n {a} {stable}^-n = w({a})', got {lhs.strip()!r}")
    w = parse_word(rhs)
    if w.generators() - {a}:
        raise PresentationError(f"right-hand side {rhs.strip()!r} must be a word in {a}")
    P = magnus_rewrite(left[0][1], w, stable)
    return HnnPresentation(P.phi, stable, {a: FreeWord.gen(P.base[0])})


def _read_fields(text: str) -> dict[str, list[str]]:
    fields: dict[str, list[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip().lower()
        if not sep or key not in ("gens", "stable", "phi", "rel"):
            raise PresentationError(f"line {lineno}: expected 'gens:', 'stable:', 'phi:' or 'rel:', got {raw!r}")
        if key != "rel" and key in fields:
            raise PresentationError(f"line {lineno}: duplicate '{key}:'")
        fields.setdefault(key, []).append(value.strip())
    if "gens" not in fields:
        raise PresentationError("missing 'gens:' line")
    if "rel" in fields and "phi" in fields:
        raise PresentationError("give either 'phi:' or 'rel:', not both")
    if "rel" not in fields and "phi" not in fields:
        raise PresentationError("missing 'phi:' or 'rel:' line")
    return fields


def parse_presentation(text: str) -> HnnPresentation:
    """Read the ``gens:`` / ``stable:`` / ``phi:`` (or ``rel:``) line format."""
    fields = _read_fields(text)
    gens = fields["gens"][0].split()
    stable = fields.get("stable", ["t"])[0]
    if "rel" in fields:
        if len(fields["rel"]) != 1:
            raise PresentationError("Magnus rewriting takes exactly one 'rel:' line")
        return _parse_rel(fields["rel"][0], gens, stable)
    base = [g for g in gens if g != stable]
    phi = parse_endomorphism(fields["phi"][0], base)
    return HnnPresentation(phi, stable)


def parse_finite_presentation(text: str) -> FinitePresentation:
    """Same file format, read as generators and relators.

    A ``phi:`` presentation contributes the relators ``t g t^-1 phi(g)^-1``.
    """
    fields = _read_fields(text)
    gens = fields["gens"][0].split()
    if "rel" in fields:
        return FinitePresentation.parse(gens, fields["rel"])
    stable = fields.get("stable", ["t"])[0]
    base = [g for g in gens if g != stable]
    phi = parse_endomorphism(fields["phi"][0], base)
    t = FreeWord.gen(stable)
    rels = tuple(t * FreeWord.gen(g) * ~t * ~phi.image(g) for g in base)
    return FinitePresentation(tuple(base) + (stable,), rels)
