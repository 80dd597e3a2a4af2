"""Stallings graphs of finitely generated subgroups of free groups.

Each edge carries, besides its letter, a decoration: a word in the subgroup
generators.  The invariant kept through folding is that there is a
potential ``pi(v)`` in the ambient free group with ``pi(base) = 1`` and

    deco(e) evaluates to pi(source) * label(e) * pi(target)^-1

for every edge, so reading a closed loop at the base and multiplying the
decorations gives an expression for the loop's label in the generators.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .words import Endomorphism, FreeWord, IDENTITY




class NotAMember(ValueError):
    pass


@dataclass(frozen=True)
class SubgroupGraph:
    """Folded core graph with decorations normalised along a BFS spanning tree."""

    gens: tuple[FreeWord, ...]
    gen_names: tuple[str, ...]
    base: int
    vertices: tuple[int, ...]
    edges: dict  # (source, generator) -> (target, decoration)

    def out(self, v: int, letter: str, sign: int):
        """Follow ``letter^sign`` from ``v``; ``(target, decoration)`` or None."""
        if sign > 0:
            return self.edges.get((v, letter))
        return self._back.get((v, letter))

    def __post_init__(self):
        back = {}
        for (s, g), (t, d) in self.edges.items():
            back[(t, g)] = (s, ~d)
        object.__setattr__(self, "_back", back)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def rank(self) -> int:
        return self.num_edges - len(self.vertices) + 1

    def contains(self, w: FreeWord) -> bool:
        return self._read(w) is not None

    def express(self, w: FreeWord) -> FreeWord:
        deco = self._read(w)
        if deco is None:
            raise NotAMember(f"{w} is not in the subgroup")
        return deco

    def _read(self, w: FreeWord) -> FreeWord | None:
        v = self.base
        parts = []
        for g, s in w.letters():
            step = self.out(v, g, s)
            if step is None:
                return None
            v, d = step
            parts.extend(d.syllables)
        if v != self.base:
            return None
        return FreeWord(tuple(parts))

    def evaluate(self, expr: FreeWord) -> FreeWord:
        """Substitute the generators into an expression."""
        return expr.substitute(dict(zip(self.gen_names, self.gens)))

    def canonical_form(self) -> tuple:
        """Vertex-relabelled edge list (BFS from base); equal iff isomorphic."""
        order = {self.base: 0}
        queue = deque([self.base])
        letters = sorted({g for (_, g) in self.edges})
        while queue:
            v = queue.popleft()
            for g in letters:
                for sign in (1, -1):
                    step = self.out(v, g, sign)
                    if step and step[0] not in order:
                        order[step[0]] = len(order)
                        queue.append(step[0])
        return tuple(sorted((order[s], g, order[t]) for (s, g), (t, _) in self.edges.items()))


class _Folder:
    def __init__(self):
        self.edges: dict[int, list] = {}  # id -> [source, generator, target, decoration]
        self.nverts = 1
        self.alive = {0}
        self._next = 0

    def new_vertex(self) -> int:
        v = self.nverts
        self.nverts += 1
        self.alive.add(v)
        return v

    def add_edge(self, s: int, g: str, t: int, deco: FreeWord):
        self.edges[self._next] = [s, g, t, deco]
        self._next += 1

    def _find_fold(self):
        seen: dict[tuple[int, str, int], int] = {}
        for eid, (s, g, t, _) in self.edges.items():
            for key in ((s, g, 1), (t, g, -1)):
                if key in seen:
                    return seen[key], eid, key[2]
                seen[key] = eid
        return None

    def fold(self):
        while (clash := self._find_fold()) is not None:
            self._merge(*clash)

    def _merge(self, id1: int, id2: int, sign: int):
        # view both edges as leaving their shared endpoint with letter g^sign
        s1, g, t1, d1 = self.edges[id1]
        s2, _, t2, d2 = self.edges[id2]
        if sign > 0:
            u1, u2 = t1, t2
        else:
            u1, u2, d1, d2 = s1, s2, ~d1, ~d2
        del self.edges[id2]
        if u1 == u2:
            return
        if u2 == 0:
            u1, u2, d1, d2 = u2, u1, d2, d1
        delta = ~d1 * d2  # pi(u1) pi(u2)^-1
        for edge in self.edges.values():
            if edge[0] == u2:
                edge[0], edge[3] = u1, delta * edge[3]
            if edge[2] == u2:
                edge[2], edge[3] = u1, edge[3] * ~delta
        self.alive.discard(u2)

    def prune(self):
        changed = True
        while changed:
            changed = False
            degree = {v: 0 for v in self.alive}
            for s, _, t, _ in self.edges.values():
                degree[s] += 1
                degree[t] += 1
            for v, deg in degree.items():
                if v != 0 and deg <= 1:
                    self.edges = {k: e for k, e in self.edges.items() if v not in (e[0], e[2])}
                    self.alive.discard(v)
                    changed = True
                    break


def build_folded(gens: Sequence[FreeWord], names: Sequence[str] | None = None) -> SubgroupGraph:
    """Fold the bouquet of ``gens`` into a Stallings graph.

    ``names`` label the generators in expressions; default ``g1, g2, ...``.
    """
    gens = tuple(gens)
    names = tuple(names) if names is not None else tuple(f"g{i + 1}" for i in range(len(gens)))
    if len(names) != len(gens):
        raise ValueError("one name per generator")
    f = _Folder()
    for name, w in zip(names, gens):
        letters = w.letters()
        if not letters:
            continue
        v = 0
        for i, (g, s) in enumerate(letters):
            last = i == len(letters) - 1
            t = 0 if last else f.new_vertex()
            deco = FreeWord.gen(name) if last else IDENTITY
            if s > 0:
                f.add_edge(v, g, t, deco)
            else:
                f.add_edge(t, g, v, ~deco)
            v = t
    f.fold()
    f.prune()
    return _normalise(f, gens, names)


def _normalise(f: _Folder, gens, names) -> SubgroupGraph:
    out = {}
    for s, g, t, d in f.edges.values():
        out[(s, g, 1)] = (t, d)
        out[(t, g, -1)] = (s, ~d)
    letters = sorted({g for _, g, _, _ in f.edges.values()})
    # BFS spanning tree from the base, edge order (generator, direction)
    pot = {0: IDENTITY}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for g in letters:
            for sign in (1, -1):
                step = out.get((v, g, sign))
                if step and step[0] not in pot:
                    pot[step[0]] = pot[v] * step[1]
                    queue.append(step[0])
    relabel = {v: i for i, v in enumerate(pot)}
    edges = {}
    for s, g, t, d in f.edges.values():
        edges[(relabel[s], g)] = (relabel[t], pot[s] * d * ~pot[t])
    return SubgroupGraph(gens, names, 0, tuple(range(len(relabel))), edges)



def contains(G: SubgroupGraph, w: FreeWord) -> bool:
    return G.contains(w)


def express(G: SubgroupGraph, w: FreeWord) -> FreeWord:
    return G.express(w)


def rank(G: SubgroupGraph) -> int:
    return G.rank()


def image_graph(phi: Endomorphism) -> SubgroupGraph:
    """Stallings graph of the image of ``phi``, with expressions in the domain letters."""
    return build_folded(phi.images, phi.domain)


def is_injective(phi: Endomorphism) -> bool:
    return image_graph(phi).rank() == phi.rank
