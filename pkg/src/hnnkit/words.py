"""Reduced words in free groups, endomorphisms, and the textual word grammar.

A word is stored run-length encoded as a tuple of ``(generator, exponent)``
syllables.  Construction always freely reduces, so every ``FreeWord`` value
is in normal form and equality of values is equality of group elements.

Grammar accepted by :func:`parse_word`::

    word   := "1" | term { WS term }
    term   := atom [ "^" integer ]
    atom   := ident | "(" word ")" | "[" word "," word "]"

Parentheses and commutator brackets are a convenience on top of the plain
``ident^n`` form; the printer only ever emits the plain form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

Syllable = tuple[str, int]
Letter = tuple[str, int]  # exponent is +1 or -1

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class WordSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class AlphabetError(ValueError):
    pass


def is_generator_name(name: str) -> bool:
    return bool(_IDENT.match(name))


def _reduce(raw: Iterable[Syllable]) -> tuple[Syllable, ...]:
    out: list[list] = []
    for gen, exp in raw:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            out[-1][1] += exp
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([gen, exp])
    return tuple((g, e) for g, e in out)


@dataclass(frozen=True, order=True)
class FreeWord:
    """An element of a free group, always freely reduced."""

    syllables: tuple[Syllable, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "syllables", _reduce(self.syllables))

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> FreeWord:
        return cls(((name, exp),))

    @classmethod
    def from_letters(cls, letters: Iterable[Letter]) -> FreeWord:
        return cls(tuple(letters))

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    def letters(self) -> tuple[Letter, ...]:
        out = []
        for g, e in self.syllables:
            s = 1 if e > 0 else -1
            out.extend([(g, s)] * abs(e))
        return tuple(out)

    def generators(self) -> set[str]:
        return {g for g, _ in self.syllables}

    def exponent_sum(self, gen: str) -> int:
        return sum(e for g, e in self.syllables if g == gen)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __iter__(self) -> Iterator[Syllable]:
        return iter(self.syllables)

    def __mul__(self, other: FreeWord) -> FreeWord:
        if not isinstance(other, FreeWord):
            return NotImplemented
        return FreeWord(self.syllables + other.syllables)

    def __invert__(self) -> FreeWord:
        return FreeWord(tuple((g, -e) for g, e in reversed(self.syllables)))

    def inverse(self) -> FreeWord:
        return ~self

    def __pow__(self, n: int) -> FreeWord:
        if n < 0:
            return (~self) ** (-n)
        return FreeWord(self.syllables * n)

    def substitute(self, images: dict[str, FreeWord]) -> FreeWord:
        """Replace each generator by a word; generators not in ``images`` stay."""
        out: list[Syllable] = []
        for g, e in self.syllables:
            img = images.get(g)
            if img is None:
                out.append((g, e))
            else:
                out.extend((img ** e).syllables)
        return FreeWord(tuple(out))

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"FreeWord({format_word(self)!r})"


IDENTITY = FreeWord()


def reduce(raw: Iterable[Syllable]) -> FreeWord:
    return FreeWord(tuple(raw))


def multiply(u: FreeWord, v: FreeWord) -> FreeWord:
    return u * v


def invert(u: FreeWord) -> FreeWord:
    return ~u


def commutator(u: FreeWord, v: FreeWord) -> FreeWord:
    return u * v * ~u * ~v


def format_word(w: FreeWord) -> str:
    if w.is_identity:
        return "1"
    return " ".join(g if e == 1 else f"{g}^{e}" for g, e in w.syllables)


@dataclass(frozen=True)
class Endomorphism:
    """A map of generators to words, extended homomorphically."""

    domain: tuple[str, ...]
    images: tuple[FreeWord, ...]
    _table: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.domain) != len(self.images):
            raise ValueError("need one image per generator")
        if len(set(self.domain)) != len(self.domain):
            raise AlphabetError(f"repeated generator in {self.domain}")
        for name in self.domain:
            if not is_generator_name(name):
                raise AlphabetError(f"invalid generator name {name!r}")
        allowed = set(self.domain)
        for img in self.images:
            extra = img.generators() - allowed
            if extra:
                raise AlphabetError(f"image {img} uses letters {sorted(extra)} outside {self.domain}")
        object.__setattr__(self, "_table", dict(zip(self.domain, self.images)))

    @classmethod
    def from_map(cls, images: dict[str, FreeWord | str], domain: Sequence[str] | None = None) -> Endomorphism:
        domain = tuple(domain) if domain is not None else tuple(images)
        imgs = tuple(parse_word(images[g]) if isinstance(images[g], str) else images[g] for g in domain)
        return cls(domain, imgs)

    @classmethod
    def identity(cls, domain: Sequence[str]) -> Endomorphism:
        return cls(tuple(domain), tuple(FreeWord.gen(g) for g in domain))

    @property
    def rank(self) -> int:
        return len(self.domain)

    def image(self, gen: str) -> FreeWord:
        return self._table[gen]

    def check_word(self, w: FreeWord) -> None:
        extra = w.generators() - set(self.domain)
        if extra:
            raise AlphabetError(f"word {w} uses letters {sorted(extra)} outside {self.domain}")

    def __call__(self, w: FreeWord) -> FreeWord:
        self.check_word(w)
        return w.substitute(self._table)

    def compose(self, other: Endomorphism) -> Endomorphism:
        """``self ∘ other``: apply ``other`` first."""
        if self.domain != other.domain:
            raise AlphabetError("domains differ")
        return Endomorphism(self.domain, tuple(self(img) for img in other.images))

    def power(self, n: int) -> Endomorphism:
        if n < 0:
            raise ValueError("only non-negative powers of an endomorphism exist")
        result = Endomorphism.identity(self.domain)
        for _ in range(n):
            result = self.compose(result)
        return result

    def __str__(self) -> str:
        return " ; ".join(f"{g} -> {img}" for g, img in zip(self.domain, self.images))


def apply_endo(phi: Endomorphism, w: FreeWord) -> FreeWord:
    return phi(w)


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<int>-?\d+)|(?P<op>[\^()\[\],]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise WordSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _WordParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, value: str | None = None, kind: str | None = None):
        tok = self.tokens[self.i]
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = value if value is not None else kind
            got = tok[1] or "end of input"
            raise WordSyntaxError(f"expected {want!r}, got {got!r}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self) -> FreeWord:
        kind, value, pos = self.peek()
        if kind == "int" and value == "1":
            self.i += 1
            if self.peek()[0] != "end":
                raise WordSyntaxError("'1' may not be combined with other terms", self.text, self.peek()[2])
            return IDENTITY
        w = self.word(stop={"end"})
        self.take(kind="end")
        return w

    def word(self, stop: set[str]) -> FreeWord:
        parts: list[Syllable] = []
        while True:
            kind, value, pos = self.peek()
            if kind == "end" or value in stop:
                break
            if kind == "int" and value == "1":
                raise WordSyntaxError("'1' may not be combined with other terms", self.text, pos)
            parts.extend(self.term().syllables)
        if not parts:
            raise WordSyntaxError("empty word (use '1' for the identity)", self.text, self.peek()[2])
        return FreeWord(tuple(parts))

    def term(self) -> FreeWord:
        kind, value, pos = self.peek()
        if kind == "ident":
            self.i += 1
            atom = FreeWord.gen(value)
        elif value == "(":
            self.i += 1
            if self.peek()[1] == "1" and self.tokens[self.i + 1][1] == ")":
                self.i += 1
                atom = IDENTITY
            else:
                atom = self.word(stop={")"})
            self.take(")")
        elif value == "[":
            self.i += 1
            u = self.word(stop={","})
            self.take(",")
            v = self.word(stop={"]"})
            self.take("]")
            atom = commutator(u, v)
        else:
            raise WordSyntaxError(f"unexpected token {value or 'end of input'!r}", self.text, pos)
        if self.peek()[1] == "^":
            self.i += 1
            _, num, npos = self.take(kind="int")
            n = int(num)
            if n == 0:
                raise WordSyntaxError("exponent must be nonzero", self.text, npos)
            atom = atom ** n
        return atom


def parse_word(text: str) -> FreeWord:
    """Parse a word such as ``"a b^-1 a^-1 b"``, ``"[a,b]"`` or ``"1"``."""
    return _WordParser(text).parse()


def parse_endomorphism(text: str, domain: Sequence[str] | None = None) -> Endomorphism:
    """Parse ``"a -> b ; b -> a^2"``.

    The domain is the order of appearance unless given explicitly; every
    domain generator must have exactly one image.
    """
    images: dict[str, FreeWord] = {}
    for clause in text.split(";"):
        clause = clause.strip()
        if not clause:
            continue
        if "->" not in clause:
            raise WordSyntaxError("expected 'gen -> word'", text, text.find(clause))
        lhs, rhs = clause.split("->", 1)
        lhs = lhs.strip()
        if not is_generator_name(lhs):
            raise WordSyntaxError(f"invalid generator {lhs!r}", text, text.find(clause))
        if lhs in images:
            raise WordSyntaxError(f"generator {lhs!r} given twice", text, text.find(clause))
        images[lhs] = parse_word(rhs)
    if domain is None:
        domain = tuple(images)
    missing = set(domain) - set(images)
    if missing or set(images) - set(domain):
        raise AlphabetError(f"images given for {sorted(images)} but domain is {list(domain)}")
    return Endomorphism(tuple(domain), tuple(images[g] for g in domain))
