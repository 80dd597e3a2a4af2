"""Trace polynomials of two-generator words in Fricke coordinates.

For ``A, B`` in SL(2), ``tr w(A, B)`` is a polynomial in ``x = tr A``,
``y = tr B`` and ``z = tr AB``.  :func:`trace_poly` computes it with the
Cayley-Hamilton recursions

    tr(U g^2 V) = tr(g) tr(U g V) - tr(U V)
    tr(U V)     = tr(U) tr(V) - tr(U V^-1)

after normalising the word up to cyclic rotation and inversion.  ``Mat2``
and :func:`eval_word` give an exact matrix oracle to check against.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from fractions import Fraction

from .polyring import DEFAULT_VARS, Polynomial
from .words import AlphabetError, FreeWord, Letter

X = Polynomial.var("x")
Y = Polynomial.var("y")
Z = Polynomial.var("z")
ONE = Polynomial.const(1)
TWO = Polynomial.const(2)


@dataclass(frozen=True)
class Mat2:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.det() != 1:
            raise ValueError(f"determinant {self.det()} != 1")

    @classmethod
    def identity(cls) -> Mat2:
        return cls(1, 0, 0, 1)

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def trace(self) -> Fraction:
        return self.a + self.d

    def __mul__(self, o: Mat2) -> Mat2:
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def inverse(self) -> Mat2:
        # adjugate, since det = 1
        return Mat2(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int) -> Mat2:
        base = self if n >= 0 else self.inverse()
        result = Mat2.identity()
        for _ in range(abs(n)):
            result = result * base
        return result


def random_sl2(rng: random.Random, max_factors: int = 6, max_num: int = 3, max_den: int = 3) -> Mat2:
    """Product of elementary unipotent matrices with small rational entries."""
    m = Mat2.identity()
    for _ in range(rng.randint(1, max_factors)):
        r = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
        m = m * (Mat2(1, r, 0, 1) if rng.random() < 0.5 else Mat2(1, 0, r, 1))
    return m


def eval_word(w: FreeWord, A: Mat2, B: Mat2, gens: tuple[str, str] = ("a", "b")) -> Mat2:
    mats = {gens[0]: A, gens[1]: B}
    result = Mat2.identity()
    for g, e in w.syllables:
        if g not in mats:
            raise AlphabetError(f"letter {g} not in {gens}")
        result = result * (mats[g] ** e)
    return result


def fricke_point(A: Mat2, B: Mat2) -> dict[str, Fraction]:
    return {"x": A.trace(), "y": B.trace(), "z": (A * B).trace()}


def kappa(px: Polynomial | int, py: Polynomial | int, pz: Polynomial | int) -> Polynomial:
    """Trace of the commutator, ``px^2 + py^2 + pz^2 - px*py*pz - 2``."""
    px, py, pz = (Polynomial.const(p) if isinstance(p, int) else p for p in (px, py, pz))
    return px * px + py * py + pz * pz - px * py * pz - 2


def is_solvable_triple(px, py, pz) -> bool:
    return (kappa(px, py, pz) - 2).is_zero()


def _cyclic_reduce(letters: tuple[Letter, ...]) -> tuple[Letter, ...]:
    i, j = 0, len(letters)
    while j - i >= 2 and letters[i][0] == letters[j - 1][0] and letters[i][1] == -letters[j - 1][1]:
        i += 1
        j -= 1
    return letters[i:j]


def _inverse_letters(letters: tuple[Letter, ...]) -> tuple[Letter, ...]:
    return tuple((g, -s) for g, s in reversed(letters))


class TraceContext:
    """Trace polynomial evaluator with a memo keyed on canonical cyclic words.

    The memo is shared between threads and guarded by a lock; entries are
    only ever inserted, and each key has a single correct value.
    """

    def __init__(self, gens: tuple[str, str] = ("a", "b"), memo: bool = True):
        if len(gens) != 2 or gens[0] == gens[1]:
            raise AlphabetError("trace coordinates need exactly two distinct generators")
        self.gens = tuple(gens)
        self._order = {gens[0]: 0, gens[1]: 1}
        self.use_memo = memo
        self._memo: dict[tuple[Letter, ...], Polynomial] = {}
        self._lock = threading.Lock()

    def canonical_key(self, w: FreeWord) -> tuple[Letter, ...]:
        """Least cyclic rotation of the cyclically reduced ``w`` or ``w^-1``."""
        letters = w.letters()
        for g, _ in letters:
            if g not in self._order:
                raise AlphabetError(f"letter {g} not in {self.gens}")
        letters = _cyclic_reduce(letters)
        if not letters:
            return ()
        order = self._order

        def key(seq):
            return tuple((order[g], -s) for g, s in seq)

        best = None
        for seq in (letters, _inverse_letters(letters)):
            for i in range(len(seq)):
                rot = seq[i:] + seq[:i]
                if best is None or key(rot) < key(best):
                    best = rot
        return best

    def __call__(self, w: FreeWord) -> Polynomial:
        return self._trace_key(self.canonical_key(w))

    def memo_size(self) -> int:
        return len(self._memo)

    def _trace_key(self, key: tuple[Letter, ...]) -> Polynomial:
        if self.use_memo:
            with self._lock:
                hit = self._memo.get(key)
            if hit is not None:
                return hit
        value = self._compute(key)
        if self.use_memo:
            with self._lock:
                self._memo.setdefault(key, value)
        return value

    def _word(self, syllables) -> FreeWord:
        return FreeWord(tuple(syllables))

    def _compute(self, key: tuple[Letter, ...]) -> Polynomial:
        n = len(key)
        if n == 0:
            return TWO
        a, b = self.gens
        if n == 1:
            return X if key[0][0] == a else Y
        if n == 2 and key[0][0] != key[1][0]:
            return Z if key[0][1] == key[1][1] else X * Y - Z

        # start at a syllable boundary so no syllable wraps around
        if len({g for g, _ in key}) > 1:
            start = next(i for i in range(n) if key[i - 1][0] != key[i][0])
            key = key[start:] + key[:start]
        syllables = list(FreeWord.from_letters(key).syllables)

        for i, (g, e) in enumerate(syllables):
            if abs(e) >= 2:
                s = 1 if e > 0 else -1
                before, after = syllables[:i], syllables[i + 1:]
                gen_trace = X if g == a else Y
                once = self(self._word(before + [(g, e - s)] + after))
                twice = self(self._word(before + [(g, e - 2 * s)] + after))
                return gen_trace * once - twice

        # alternating word with all exponents +-1; n is even and >= 4
        u, v = self._split(key)
        return self(u) * self(v) - self(u * ~v)

    def _split(self, key: tuple[Letter, ...]) -> tuple[FreeWord, FreeWord]:
        # an even cut makes the last letter of u and the first of v^-1 share
        # a generator, so u v^-1 either shortens or picks up a square
        n = len(key)
        best = None
        for k in range(2, n - 1, 2):
            u = FreeWord.from_letters(key[:k])
            v = FreeWord.from_letters(key[k:])
            rest = len(_cyclic_reduce((u * ~v).letters()))
            score = (max(k, n - k, rest), abs(2 * k - n), k)
            if best is None or score < best[0]:
                best = (score, u, v)
        return best[1], best[2]


_default_context = TraceContext()


def trace_poly(w: FreeWord, ctx: TraceContext | None = None) -> Polynomial:
    """Polynomial ``P`` with ``P(tr A, tr B, tr AB) = tr w(A, B)`` on SL(2)."""
    return (ctx or _default_context)(w)


__all__ = [
    "DEFAULT_VARS",
    "Mat2",
    "TraceContext",
    "eval_word",
    "fricke_point",
    "is_solvable_triple",
    "kappa",
    "random_sl2",
    "trace_poly",
]
