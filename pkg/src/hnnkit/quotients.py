"""Finite quotients that keep a given element alive.

A witness is an assignment of the generators of a finite presentation to
elements of a small finite group such that every relator goes to the
identity and the target word does not.  Two families are searched:
affine maps ``x -> alpha*x + beta`` of ``Z/m`` and permutations of
``{0..n-1}``.  Products compose right to left, ``(u*v)(x) = u(v(x))``.

The search order is fixed (smaller group first, then lexicographic in the
generator images), and partitioned runs merge to the same minimum.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd
from typing import Hashable, Iterator, Mapping, Sequence

from .hnn import FinitePresentation
from .words import FreeWord

Element = Hashable


class TrivialTarget(ValueError):
    pass


class UnassignedGenerator(KeyError):
    pass


class AffineGroup:
    """Maps ``x -> alpha*x + beta`` on ``Z/m``, elements encoded ``(alpha, beta)``."""

    def __init__(self, m: int):
        if m < 2:
            raise ValueError("modulus must be at least 2")
        self.m = m

    @property
    def name(self) -> str:
        return f"Affine({self.m})"

    def identity(self):
        return (1, 0)

    def mul(self, u, v):
        return (u[0] * v[0] % self.m, (u[0] * v[1] + u[1]) % self.m)

    def inv(self, u):
        ainv = pow(u[0], -1, self.m)
        return (ainv, -ainv * u[1] % self.m)

    def elements(self) -> list:
        units = [a for a in range(1, self.m) if gcd(a, self.m) == 1]
        return [(a, b) for a in units for b in range(self.m)]

    def format(self, u) -> str:
        return f"({u[0]},{u[1]})"

    def __eq__(self, other):
        return isinstance(other, AffineGroup) and other.m == self.m

    def __hash__(self):
        return hash(("affine", self.m))


class SymmetricGroup:
    """Permutations of ``range(n)`` as image tuples."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("degree must be positive")
        self.n = n

    @property
    def name(self) -> str:
        return f"Sym({self.n})"

    def identity(self):
        return tuple(range(self.n))

    def mul(self, u, v):
        return tuple(u[i] for i in v)

    def inv(self, u):
        out = [0] * self.n
        for i, j in enumerate(u):
            out[j] = i
        return tuple(out)

    def elements(self) -> list:
        return list(itertools.permutations(range(self.n)))

    def class_representatives(self) -> list:
        """One permutation per cycle type, cycles on consecutive points."""
        reps = []
        for shape in _partitions(self.n):
            perm, start = list(range(self.n)), 0
            for length in shape:
                for i in range(length):
                    perm[start + i] = start + (i + 1) % length
                start += length
            reps.append(tuple(perm))
        return sorted(reps)

    def format(self, u) -> str:
        seen, cycles = set(), []
        for i in range(self.n):
            if i in seen or u[i] == i:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j + 1)
                j = u[j]
            cycles.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(cycles) or "()"

    def __eq__(self, other):
        return isinstance(other, SymmetricGroup) and other.n == self.n

    def __hash__(self):
        return hash(("sym", self.n))


def _partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _power(G, u, e: int):
    base = u if e > 0 else G.inv(u)
    result = G.identity()
    for _ in range(abs(e)):
        result = G.mul(result, base)
    return result


def evaluate_word(G, images: Mapping[str, Element], r: FreeWord):
    result = G.identity()
    for g, e in r.syllables:
        if g not in images:
            raise UnassignedGenerator(g)
        result = G.mul(result, _power(G, images[g], e))
    return result


@dataclass(frozen=True)
class FiniteAssignment:
    group: AffineGroup | SymmetricGroup
    images: Mapping[str, Element]

    def evaluate(self, r: FreeWord):
        return evaluate_word(self.group, self.images, r)

    def is_identity(self, r: FreeWord) -> bool:
        return self.evaluate(r) == self.group.identity()

    def satisfies(self, pres: FinitePresentation) -> bool:
        return all(self.is_identity(r) for r in pres.relators)

    def image_order(self) -> int:
        """Order of the subgroup generated by the images."""
        G = self.group
        gens = list(self.images.values())
        seen = {G.identity()}
        frontier = [G.identity()]
        while frontier:
            nxt = []
            for u in frontier:
                for g in gens:
                    v = G.mul(u, g)
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        return len(seen)

    def __str__(self) -> str:
        body = ", ".join(f"{g}={self.group.format(u)}" for g, u in self.images.items())
        return f"{self.group.name}: {body}"


def evaluate_relator(A: FiniteAssignment, r: FreeWord):
    return A.evaluate(r)


def is_witness(A: FiniteAssignment, pres: FinitePresentation, target: FreeWord) -> bool:
    return A.satisfies(pres) and not A.is_identity(target)


# -- search --------------------------------------------------------------------

def _search_branch(G, gens: Sequence[str], first_choices: Sequence[tuple[int, Element]],
                   elements: Sequence[Element], pres: FinitePresentation, target: FreeWord):
    """Minimal witness with the first generator drawn from ``first_choices``.

    Returns ``(order key, images)`` or None.  Relators are checked as soon as
    all their letters are assigned.
    """
    checks: list[list[FreeWord]] = [[] for _ in gens]
    pos = {g: i for i, g in enumerate(gens)}
    for r in pres.relators:
        letters = r.generators()
        if letters:
            checks[max(pos[g] for g in letters)].append(r)
    ident = G.identity()
    images: dict[str, Element] = {}
    key: list[int] = []

    def ok(level: int) -> bool:
        return all(evaluate_word(G, images, r) == ident for r in checks[level])

    def rec(level: int):
        if level == len(gens):
            if evaluate_word(G, images, target) != ident:
                return tuple(key), dict(images)
            return None
        choices = first_choices if level == 0 else enumerate(elements)
        for idx, u in choices:
            images[gens[level]] = u
            key.append(idx)
            if ok(level):
                found = rec(level + 1)
                if found is not None:
                    return found
            key.pop()
        images.pop(gens[level], None)
        return None

    return rec(0)


def _search_group(G, pres: FinitePresentation, target: FreeWord, first: Sequence[Element],
                  partitions: int, workers: int | None, shuffle: int | None = None):
    elements = G.elements()
    gens = list(pres.gens)
    extra = target.generators() - set(gens)
    if extra:
        raise UnassignedGenerator(sorted(extra)[0])
    if not gens:
        return None
    index = {u: i for i, u in enumerate(elements)}
    indexed = sorted((index[u], u) for u in first)
    partitions = max(1, min(partitions, len(indexed)))
    chunks = [indexed[i::partitions] for i in range(partitions)]
    order = list(range(partitions))
    if shuffle is not None:
        # simulate branches finishing in arbitrary order
        random.Random(shuffle).shuffle(order)

    def run(i):
        return _search_branch(G, gens, chunks[i], elements, pres, target)

    if workers and workers > 1 and partitions > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, order))
    else:
        results = [run(i) for i in order]
    found = [r for r in results if r is not None]
    if not found:
        return None
    _, images = min(found, key=lambda r: r[0])
    return FiniteAssignment(G, {g: images[g] for g in gens})


def _check_target(target: FreeWord):
    if target.is_identity:
        raise TrivialTarget("the target word is trivial, so no quotient can separate it")


def affine_witness(pres: FinitePresentation, target: FreeWord, m_max: int, *,
                   partitions: int = 1, workers: int | None = None,
                   shuffle: int | None = None) -> FiniteAssignment | None:
    _check_target(target)
    for m in range(2, m_max + 1):
        G = AffineGroup(m)
        found = _search_group(G, pres, target, G.elements(), partitions, workers, shuffle)
        if found is not None:
            return found
    return None


def perm_witness(pres: FinitePresentation, target: FreeWord, n_max: int, *,
                 restrict_first: bool = True, partitions: int = 1, workers: int | None = None,
                 shuffle: int | None = None) -> FiniteAssignment | None:
    """Permutation witness; the first generator ranges over cycle-type
    representatives only, which loses nothing since witnesses are closed
    under simultaneous conjugation."""
    _check_target(target)
    for n in range(2, n_max + 1):
        G = SymmetricGroup(n)
        first = G.class_representatives() if restrict_first else G.elements()
        found = _search_group(G, pres, target, first, partitions, workers, shuffle)
        if found is not None:
            return found
    return None
