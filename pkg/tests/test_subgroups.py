import random

import pytest
from hypothesis import given, strategies as st

from hnnkit.subgroups import NotAMember, build_folded, contains, express, is_injective, rank
from hnnkit.words import FreeWord, IDENTITY, parse_endomorphism, parse_word

from conftest import random_reduced_word, words

P = parse_word


def products_upto(gens, n):
    """All reduced products of at most ``n`` factors from gens and inverses."""
    factors = list(gens) + [~g for g in gens]
    layer = {IDENTITY}
    seen = {IDENTITY}
    for _ in range(n):
        layer = {w * f for w in layer for f in factors} - seen
        seen |= layer
    return seen


def brute_member(gens, w, n=8):
    # meet in the middle: w = s * t with s, t products of <= n/2 factors
    half = products_upto(gens, n // 2)
    return any((~s * w) in half for s in half)


def test_fold_examples():
    G = build_folded([P("a"), P("b")])
    assert (len(G.vertices), G.num_edges, rank(G)) == (1, 2, 2)
    G = build_folded([P("a^2"), P("a^3")])
    assert (len(G.vertices), G.num_edges, rank(G)) == (1, 1, 1)
    G = build_folded([P("a b"), P("b a")])
    assert (len(G.vertices), G.num_edges, rank(G)) == (3, 4, 2)
    G = build_folded([])
    assert (len(G.vertices), G.num_edges) == (1, 0)


def test_a2_a3_is_all_of_a():
    G = build_folded([P("a^2"), P("a^3")])
    assert contains(G, P("a"))
    assert brute_member([P("a^2"), P("a^3")], P("a"), 2)


def test_contains_examples():
    G = build_folded([P("a^2"), P("b")])
    assert contains(G, P("a^2"))
    assert not contains(G, P("a"))
    assert not brute_member([P("a^2"), P("b")], P("a"))
    assert contains(build_folded([P("b"), P("a^2")]), P("a^2 b"))
    assert contains(G, IDENTITY)


def test_express_examples():
    G = build_folded([P("a^2"), P("b")])
    assert express(G, P("a^2 b")) == P("g1 g2")
    assert express(G, IDENTITY) == IDENTITY
    H = build_folded([P("b"), P("a^2")], names=["a", "b"])
    assert express(H, P("b")) == P("a")
    with pytest.raises(NotAMember):
        express(G, P("a"))


def test_injectivity_examples():
    assert is_injective(parse_endomorphism("a -> a b ; b -> b a"))
    assert is_injective(parse_endomorphism("a -> a ; b -> [a,b]"))
    assert not is_injective(parse_endomorphism("a -> a ; b -> a"))
    assert not is_injective(parse_endomorphism("a -> a b ; b -> a b"))


def test_graph_is_folded_and_core():
    rng = random.Random(5)
    for _ in range(100):
        gens = [random_reduced_word(rng, ("a", "b", "c"), 5) for _ in range(rng.randint(1, 3))]
        G = build_folded(gens)
        sources = [(s, g) for (s, g) in G.edges]
        targets = [(t, g) for (_, g), (t, _) in G.edges.items()]
        assert len(set(sources)) == len(sources)
        assert len(set(targets)) == len(targets)
        degree = {v: 0 for v in G.vertices}
        for (s, _), (t, _) in G.edges.items():
            degree[s] += 1
            degree[t] += 1
        assert all(d >= 2 for v, d in degree.items() if v != G.base)


gen_lists = st.lists(words(("a", "b"), max_len=4), min_size=1, max_size=3)


@given(gen_lists, st.data())
def test_contains_vs_brute_force(gens, data):
    G = build_folded(gens)
    if data.draw(st.booleans()):
        picks = data.draw(st.lists(st.tuples(st.integers(0, len(gens) - 1), st.sampled_from((1, -1))), max_size=8))
        w = FreeWord()
        for i, s in picks:
            w = w * gens[i] ** s
    else:
        w = data.draw(words(("a", "b"), max_len=8))
    brute = brute_member(gens, w)
    got = contains(G, w)
    if brute:
        assert got
    if got:
        expr = express(G, w)
        assert G.evaluate(expr) == w
        if len(expr) <= 8:
            assert brute


@given(gen_lists, st.lists(st.tuples(st.integers(0, 2), st.sampled_from((1, -1))), max_size=10))
def test_express_roundtrip(gens, picks):
    G = build_folded(gens)
    w = FreeWord()
    for i, s in picks:
        w = w * gens[i % len(gens)] ** s
    assert contains(G, w)
    assert G.evaluate(express(G, w)) == w


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_rank_of_basis(k):
    names = "abcd"[:k]
    assert rank(build_folded([FreeWord.gen(g) for g in names])) == k


@given(gen_lists, st.randoms(use_true_random=False))
def test_folding_confluent(gens, rnd):
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    assert build_folded(gens).canonical_form() == build_folded(shuffled).canonical_form()


@given(st.sampled_from(["a -> a b ; b -> b a", "a -> a ; b -> [a,b]", "a -> b ; b -> a^2",
                        "a -> a^2 ; b -> b^-1", "a -> b a ; b -> b^2 a"]), words(max_len=8))
def test_image_membership_and_preimage(text, w):
    phi = parse_endomorphism(text)
    assert is_injective(phi)
    G = build_folded(phi.images, phi.domain)
    img = phi(w)
    assert contains(G, img)
    assert express(G, img) == w
