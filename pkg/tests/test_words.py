import pytest
from hypothesis import given, strategies as st

from hnnkit.words import (
    AlphabetError,
    Endomorphism,
    FreeWord,
    IDENTITY,
    WordSyntaxError,
    apply_endo,
    commutator,
    format_word,
    invert,
    multiply,
    parse_endomorphism,
    parse_word,
    reduce,
)

from conftest import raw_syllables, words

a, b = FreeWord.gen("a"), FreeWord.gen("b")


def test_reduce_examples():
    assert reduce([("a", 1), ("a", -1)]) == IDENTITY
    assert reduce([("a", 1), ("b", 1), ("b", -1), ("a", 1)]) == FreeWord.gen("a", 2)
    assert reduce([("b", 1), ("a", -1), ("a", 1), ("b", -1), ("a", 1)]) == a


def test_group_operation_examples():
    assert multiply(a, ~a) == IDENTITY
    assert invert(a * ~b) == b * ~a
    assert commutator(a, b).syllables == (("a", 1), ("b", 1), ("a", -1), ("b", -1))


def test_apply_endo_examples():
    phi = parse_endomorphism("a -> a b ; b -> b a")
    assert apply_endo(phi, a) == a * b
    assert apply_endo(phi, IDENTITY) == IDENTITY
    psi = parse_endomorphism("a -> b ; b -> a^2")
    assert apply_endo(psi, a * b) == b * a ** 2


def test_apply_endo_rejects_foreign_letters():
    phi = Endomorphism.identity(("a", "b"))
    with pytest.raises(AlphabetError):
        phi(FreeWord.gen("c"))
    with pytest.raises(AlphabetError):
        Endomorphism(("a",), (FreeWord.gen("b"),))


def test_parse_examples():
    w = parse_word("a b^-1 a^-1 b a^-1 b^-1 a")
    assert w.syllables == (("a", 1), ("b", -1), ("a", -1), ("b", 1), ("a", -1), ("b", -1), ("a", 1))
    assert parse_word("1") == IDENTITY
    assert parse_word("a^2 a^-2") == IDENTITY


def test_parse_brackets_and_groups():
    assert parse_word("[a,b]") == commutator(a, b)
    assert parse_word("(b a) b (b a)^-1") == b * a * b * ~a * ~b
    assert parse_word("(a b)^2") == a * b * a * b
    assert parse_word("x_1^3 x2") == FreeWord((("x_1", 3), ("x2", 1)))


@pytest.mark.parametrize("text,pos", [
    ("a ^", 3),
    ("a^0", 2),
    ("1 a", 2),
    ("a 1", 2),
    ("", 0),
    ("a $", 2),
    ("(a b", 4),
    ("[a b]", 4),
])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(WordSyntaxError) as err:
        parse_word(text)
    assert err.value.pos == pos


def test_format_is_canonical():
    assert format_word(parse_word("a a b^-1 b^-1 a")) == "a^2 b^-2 a"
    assert format_word(IDENTITY) == "1"


def test_endomorphism_power_and_compose():
    phi = parse_endomorphism("a -> b ; b -> a^2")
    assert phi.power(2)(a) == a ** 2
    assert phi.power(0)(a * b) == a * b
    assert phi.compose(phi)(b) == b ** 2


@given(raw_syllables())
def test_reduce_idempotent(raw):
    once = reduce(raw)
    assert reduce(once.syllables) == once
    gens = [g for g, _ in once.syllables]
    assert all(x != y for x, y in zip(gens, gens[1:]))
    assert all(e != 0 for _, e in once.syllables)


@given(words(("a", "b", "c")), words(("a", "b", "c")), words(("a", "b", "c")))
def test_group_axioms(u, v, w):
    assert (u * v) * w == u * (v * w)
    assert u * ~u == IDENTITY
    assert ~(u * v) == ~v * ~u
    assert u * IDENTITY == u == IDENTITY * u


@given(words(), words(), st.sampled_from(["a -> a b ; b -> b a", "a -> a ; b -> [a,b]", "a -> b ; b -> a^2"]))
def test_apply_endo_is_homomorphism(u, v, text):
    phi = parse_endomorphism(text)
    assert phi(u * v) == phi(u) * phi(v)
    assert phi(~u) == ~phi(u)


@given(words(("a", "b", "t1"), max_len=20))
def test_parse_print_roundtrip(w):
    assert parse_word(format_word(w)) == w


def test_parse_endomorphism_errors():
    with pytest.raises(WordSyntaxError):
        parse_endomorphism("a = b")
    with pytest.raises(AlphabetError):
        parse_endomorphism("a -> b", domain=("a", "b"))
    with pytest.raises(WordSyntaxError):
        parse_endomorphism("a -> b ; a -> a")
