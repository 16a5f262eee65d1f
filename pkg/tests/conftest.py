import random

import pytest

import cscwalls as cw
from cscwalls.antitorus import AntiTorusQuery

TORUS_TEXT = """\
hedges: a
vedges: x
square: a x a x
"""

KLEIN_TEXT = """\
hedges: a
vedges: x
square: a x a -x
"""

# Two-vertex cover of the torus: a valid multi-vertex CSC.
TWO_VERTEX_TEXT = """\
vertex: P Q
hedges: a=P:Q b=Q:P
vedges: x=P:P y=Q:Q
square: a y a x
square: b x b y
"""


@pytest.fixture(scope="session")
def torus():
    return cw.parse_complex(TORUS_TEXT)


@pytest.fixture(scope="session")
def klein():
    return cw.parse_complex(KLEIN_TEXT)


@pytest.fixture(scope="session")
def two_vertex():
    return cw.parse_complex(TWO_VERTEX_TEXT)


@pytest.fixture(scope="session")
def census22():
    return tuple(cw.enumerate_csc(2, 2))


@pytest.fixture(scope="session")
def shipped():
    """The packaged 2+2 complex with its screened aperiodic pair."""
    from importlib.resources import files

    p = cw.parse_complex(files("cscwalls.data").joinpath("aperiodic22.sqc").read_text())
    hw = cw.PeriodicWord(cw.parse_word(p, "a"))
    vw = cw.PeriodicWord(cw.parse_word(p, "x"))
    return AntiTorusQuery(p, hw, vw)


@pytest.fixture(scope="session")
def torus_query(torus):
    return AntiTorusQuery(
        torus,
        cw.PeriodicWord(cw.parse_word(torus, "a")),
        cw.PeriodicWord(cw.parse_word(torus, "x")),
    )


def random_reduced_word(presentation, klass, length, rng):
    """Uniform-ish random reduced word of exactly the given length."""
    pool = presentation.hedges if klass == cw.HORIZONTAL else presentation.vedges
    germs = list(range(2 * len(pool)))
    out = []
    for _ in range(length):
        options = [g for g in germs if not out or g != out[-1] ^ 1]
        out.append(rng.choice(options))
    letters = tuple(presentation.germ_edge(klass, g) for g in out)
    return cw.Word(letters, klass)


@pytest.fixture
def rng():
    return random.Random(0xC5C)
