import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from hnnkit.polyring import Polynomial
from hnnkit.trace import Mat2
from hnnkit.words import FreeWord

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def words(gens=("a", "b"), max_len=12):
    letters = st.tuples(st.sampled_from(gens), st.sampled_from((1, -1)))
    return st.lists(letters, max_size=max_len).map(FreeWord.from_letters)


def raw_syllables(gens=("a", "b", "c"), max_len=10):
    syl = st.tuples(st.sampled_from(gens), st.integers(-3, 3))
    return st.lists(syl, max_size=max_len)


def polynomials(max_deg=6, max_terms=6):
    mono = st.tuples(*(st.integers(0, max_deg // 3) for _ in range(3)))
    return st.dictionaries(mono, st.integers(-5, 5), max_size=max_terms).map(Polynomial)


@st.composite
def sl2(draw, max_factors=6):
    m = Mat2.identity()
    for _ in range(draw(st.integers(1, max_factors))):
        r = Fraction(draw(st.integers(-3, 3)), draw(st.integers(1, 3)))
        m = m * (Mat2(1, r, 0, 1) if draw(st.booleans()) else Mat2(1, 0, r, 1))
    return m


def random_reduced_word(rng: random.Random, gens=("a", "b"), max_len=12) -> FreeWord:
    """Uniform length, then letters avoiding immediate cancellation."""
    n = rng.randint(0, max_len)
    letters = []
    while len(letters) < n:
        g, s = rng.choice(gens), rng.choice((1, -1))
        if letters and letters[-1] == (g, -s):
            continue
        letters.append((g, s))
    return FreeWord.from_letters(letters)


# -- acceptance reporting ----------------------------------------------------

_criteria: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test must call ``record(ok, detail)``."""
    name = request.node.get_closest_marker("criterion").args[0]

    def record(ok: bool, detail: str = ""):
        _criteria[name] = (ok, detail)
        return ok

    _criteria[name] = (False, "did not finish")
    return record


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion reported in the summary")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda n: int(n.split()[0])):
        ok, detail = _criteria[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
