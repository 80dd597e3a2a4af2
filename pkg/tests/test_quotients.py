import itertools
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from hnnkit.hnn import FinitePresentation
from hnnkit.quotients import (
    AffineGroup,
    FiniteAssignment,
    SymmetricGroup,
    TrivialTarget,
    UnassignedGenerator,
    affine_witness,
    evaluate_relator,
    is_witness,
    perm_witness,
)
from hnnkit.words import IDENTITY, parse_word

P = parse_word
SQRT2 = FinitePresentation.parse("a t", ["t^2 a t^-2 a^-2"])
CYCLIC2 = FinitePresentation.parse("a", ["a^2"])
FREE_AB = FinitePresentation.parse("a t", ["t a t^-1 a^-1"])


def act(word, images, points, apply):
    """Oracle: act on each point by the letters of ``word``, rightmost first."""
    out = []
    for x in points:
        for g, e in reversed(word.syllables):
            for _ in range(abs(e)):
                x = apply(images[g], x, e > 0)
        out.append(x)
    return tuple(out)


def affine_apply(m):
    def apply(u, x, forward):
        a, b = u
        return (a * x + b) % m if forward else pow(a, -1, m) * (x - b) % m
    return apply


def brute_affine(pres, target, m_max):
    # independent loop: images as point maps, order = (m, lexicographic tuple)
    for m in range(2, m_max + 1):
        pts = range(m)
        elems = [(a, b) for a in range(1, m) if gcd(a, m) == 1 for b in range(m)]
        ident = tuple(pts)
        for combo in itertools.product(elems, repeat=len(pres.gens)):
            images = dict(zip(pres.gens, combo))
            if all(act(r, images, pts, affine_apply(m)) == ident for r in pres.relators):
                if act(target, images, pts, affine_apply(m)) != ident:
                    return m, images
    return None


def perm_apply(u, x, forward):
    return u[x] if forward else u.index(x)


def brute_perm_exists(pres, target, n):
    pts = range(n)
    ident = tuple(pts)
    for combo in itertools.product(itertools.permutations(pts), repeat=len(pres.gens)):
        images = dict(zip(pres.gens, combo))
        if all(act(r, images, pts, perm_apply) == ident for r in pres.relators):
            if act(target, images, pts, perm_apply) != ident:
                return True
    return False


def test_evaluate_relator_examples():
    A = FiniteAssignment(AffineGroup(7), {"a": (1, 1), "t": (3, 0)})
    assert evaluate_relator(A, IDENTITY) == (1, 0)
    assert evaluate_relator(A, P("t^2 a t^-2 a^-2")) == (1, 0)
    assert evaluate_relator(A, P("t^2")) == (2, 0)
    S = FiniteAssignment(SymmetricGroup(3), {"a": (1, 0, 2)})
    assert evaluate_relator(S, P("a^2")) == (0, 1, 2)
    with pytest.raises(UnassignedGenerator):
        evaluate_relator(S, P("b"))


def test_group_operations():
    G = AffineGroup(6)
    assert len(G.elements()) == 2 * 6
    for u in G.elements():
        assert G.mul(u, G.inv(u)) == G.identity()
    S = SymmetricGroup(4)
    assert len(S.class_representatives()) == 5
    assert S.format((1, 2, 0, 3)) == "(1 2 3)"
    assert S.format(S.identity()) == "()"
    # composition applies the right factor first
    u, v = (1, 0, 2, 3), (0, 2, 1, 3)
    assert S.mul(u, v) == tuple(u[v[i]] for i in range(4))


def test_affine_witness_order_42():
    A = affine_witness(SQRT2, P("a"), 7)
    assert str(A) == "Affine(7): a=(1,1), t=(3,0)"
    assert A.image_order() == 42
    assert is_witness(A, SQRT2, P("a"))
    assert brute_affine(SQRT2, P("a"), 7) == (7, {"a": (1, 1), "t": (3, 0)})


def test_affine_witness_none_for_small_modulus():
    assert affine_witness(SQRT2, P("a"), 2) is None
    assert brute_affine(SQRT2, P("a"), 2) is None


def test_trivial_target():
    with pytest.raises(TrivialTarget):
        affine_witness(SQRT2, IDENTITY, 7)
    with pytest.raises(TrivialTarget):
        perm_witness(SQRT2, IDENTITY, 3)


def test_perm_witness_examples():
    A = perm_witness(SQRT2, P("a"), 7)
    assert A is not None and is_witness(A, SQRT2, P("a"))
    assert str(perm_witness(CYCLIC2, P("a"), 2)) == "Sym(2): a=(1 2)"
    B = perm_witness(FREE_AB, P("a"), 2)
    assert str(B) == "Sym(2): a=(1 2), t=()"


@pytest.mark.parametrize("target", ["a", "t", "a t", "[a,t]", "a^2", "t a t^-1"])
def test_affine_matches_brute_force(target):
    pres = FinitePresentation.parse("a t", ["t a t^-1 a^-2"])
    A = affine_witness(pres, P(target), 6)
    expect = brute_affine(pres, P(target), 6)
    if expect is None:
        assert A is None
    else:
        assert (A.group.m, dict(A.images)) == expect


PRESENTATIONS = [SQRT2, CYCLIC2, FREE_AB,
                 FinitePresentation.parse("a t", ["t a t^-1 a^-2"]),
                 FinitePresentation.parse("a b", ["a^2", "b^3", "(a b)^2"]),
                 FinitePresentation.parse("a b", ["a b a^-1 b^-2"])]
TARGETS = ["a", "t", "b", "a t", "[a,t]", "a^2", "[a,b]", "a b^-1"]


@pytest.mark.parametrize("pres", PRESENTATIONS)
@pytest.mark.parametrize("n", [2, 3, 4])
def test_conjugacy_restriction_sound(pres, n):
    for t in TARGETS:
        target = P(t)
        if target.is_identity or target.generators() - set(pres.gens):
            continue
        full = perm_witness(pres, target, n, restrict_first=False)
        restricted = perm_witness(pres, target, n)
        assert (full is None) == (restricted is None)
        if full is not None:
            assert is_witness(full, pres, target) and is_witness(restricted, pres, target)
            assert full.group == restricted.group
        # and the full search agrees with an independent enumeration
        exists = any(brute_perm_exists(pres, target, k) for k in range(2, n + 1))
        assert exists == (full is not None)


@settings(max_examples=30)
@given(st.sampled_from(PRESENTATIONS), st.sampled_from(TARGETS),
       st.integers(1, 8), st.sampled_from([None, 2, 4]), st.integers(0, 100))
def test_search_deterministic_under_partitioning(pres, t, parts, workers, seed):
    target = P(t)
    if target.generators() - set(pres.gens):
        return
    base = affine_witness(pres, target, 5)
    assert affine_witness(pres, target, 5, partitions=parts, workers=workers, shuffle=seed) == base
    pbase = perm_witness(pres, target, 3)
    assert perm_witness(pres, target, 3, partitions=parts, workers=workers, shuffle=seed) == pbase
    for A in (base, pbase):
        if A is not None:
            assert is_witness(A, pres, target)
