"""Development engine: determinism, algebraic laws, kernels, words."""

import pytest
from hypothesis import given, settings, strategies as st

import cscwalls as cw
from cscwalls.develop import BACKEND, _speedups, develop_ids, parse_word
from cscwalls.errors import DevelopmentError, WordError

from .conftest import random_reduced_word
from .oracles import develop_row_major


def w(p, text, klass=None):
    return parse_word(p, text, klass)


class TestWords:
    def test_parse_compact_and_spaced(self, shipped):
        p = shipped.complex
        assert w(p, "a -b a").tokens() == ["a", "-b", "a"]
        assert w(p, "a-ba").tokens() == ["a", "-b", "a"]
        assert str(w(p, "a -b a")) == "a-ba"

    def test_not_reduced(self, shipped):
        with pytest.raises(WordError):
            w(shipped.complex, "a -a")

    def test_mixed_class(self, shipped):
        with pytest.raises(WordError):
            w(shipped.complex, "a x")

    def test_unknown_letter(self, shipped):
        with pytest.raises(WordError):
            w(shipped.complex, "q")

    def test_inverse_involution(self, shipped):
        word = w(shipped.complex, "a b a -b")
        assert word.inverse().inverse() == word
        assert word.inverse().tokens() == ["b", "-a", "-b", "-a"]

    def test_periodic_rejects_proper_power(self, torus):
        with pytest.raises(WordError):
            cw.PeriodicWord(w(torus, "a a"))

    def test_periodic_rejects_cyclically_unreduced(self, shipped):
        with pytest.raises(WordError):
            cw.PeriodicWord(w(shipped.complex, "a b -a"))

    def test_periodic_accepts_primitives(self, shipped):
        p = shipped.complex
        for text in ("a", "a b", "a a b"):
            assert len(cw.PeriodicWord(w(p, text))) == len(w(p, text))


class TestTrivialDevelopments:
    def test_torus_identity(self, torus):
        r = cw.fill_rectangle(torus, w(torus, "aaa"), w(torus, "xx"))
        assert str(r.top) == "aaa" and str(r.right) == "xx"
        assert r.width == 3 and r.height == 2

    def test_zero_height(self, shipped):
        p = shipped.complex
        word = w(p, "a b")
        r = cw.fill_rectangle(p, word, cw.Word((), cw.VERTICAL))
        assert r.top == word and len(r.right) == 0

    def test_zero_width(self, shipped):
        p = shipped.complex
        word = w(p, "x y")
        r = cw.fill_rectangle(p, cw.Word((), cw.HORIZONTAL), word)
        assert r.right == word and len(r.top) == 0

    def test_torus_develop_top(self, torus):
        assert str(cw.develop_top(torus, w(torus, "aaaa"), w(torus, "xxx"))) == "aaaa"


class TestLaws:
    def test_length_preservation(self, shipped, rng):
        p = shipped.complex
        for _ in range(50):
            bottom = random_reduced_word(p, cw.HORIZONTAL, rng.randint(0, 30), rng)
            left = random_reduced_word(p, cw.VERTICAL, rng.randint(0, 30), rng)
            r = cw.fill_rectangle(p, bottom, left)
            assert len(r.top) == len(bottom) and len(r.right) == len(left)

    def test_prefix_stability(self, shipped, rng):
        p = shipped.complex
        for _ in range(50):
            bottom = random_reduced_word(p, cw.HORIZONTAL, rng.randint(1, 30), rng)
            left = random_reduced_word(p, cw.VERTICAL, rng.randint(1, 20), rng)
            full = cw.develop_top(p, bottom, left)
            for cut in (1, len(bottom) // 2, len(bottom) - 1):
                prefix = cw.Word(bottom.letters[:cut], cw.HORIZONTAL)
                assert cw.develop_top(p, prefix, left).letters == full.letters[:cut]

    def test_horizontal_compositionality(self, shipped, rng):
        p = shipped.complex
        for _ in range(50):
            bottom = random_reduced_word(p, cw.HORIZONTAL, rng.randint(2, 30), rng)
            left = random_reduced_word(p, cw.VERTICAL, rng.randint(1, 20), rng)
            cut = rng.randint(1, len(bottom) - 1)
            u1 = cw.Word(bottom.letters[:cut], cw.HORIZONTAL)
            u2 = cw.Word(bottom.letters[cut:], cw.HORIZONTAL)
            whole = cw.fill_rectangle(p, bottom, left)
            first = cw.fill_rectangle(p, u1, left)
            second = cw.fill_rectangle(p, u2, first.right)
            assert whole.top.letters == first.top.letters + second.top.letters
            assert whole.right == second.right

    def test_vertical_compositionality(self, shipped, rng):
        p = shipped.complex
        for _ in range(50):
            bottom = random_reduced_word(p, cw.HORIZONTAL, rng.randint(1, 20), rng)
            left = random_reduced_word(p, cw.VERTICAL, rng.randint(2, 30), rng)
            cut = rng.randint(1, len(left) - 1)
            v1 = cw.Word(left.letters[:cut], cw.VERTICAL)
            v2 = cw.Word(left.letters[cut:], cw.VERTICAL)
            whole = cw.fill_rectangle(p, bottom, left)
            lower = cw.fill_rectangle(p, bottom, v1)
            upper = cw.fill_rectangle(p, lower.top, v2)
            assert whole.right.letters == lower.right.letters + upper.right.letters
            assert whole.top == upper.top

    def test_developed_words_are_reduced(self, census22, rng):
        # Word.__post_init__ enforces reducedness, so construction is the assert
        for p in census22[::7]:
            bottom = random_reduced_word(p, cw.HORIZONTAL, 25, rng)
            left = random_reduced_word(p, cw.VERTICAL, 25, rng)
            cw.fill_rectangle(p, bottom, left)


class TestOracle:
    def test_row_major_agreement_fixed(self, shipped):
        p = shipped.complex
        hw, vw = shipped.hword, shipped.vword
        bottom, left = hw.power(2), vw.power(1)
        r = cw.fill_rectangle(p, bottom, left)
        top, right = develop_row_major(p, bottom, left)
        assert r.top.letters == tuple(top) and r.right.letters == tuple(right)

    def test_row_major_agreement_random(self, census22, rng):
        for i in range(200):
            p = census22[i % len(census22)]
            bottom = random_reduced_word(p, cw.HORIZONTAL, rng.randint(0, 25), rng)
            left = random_reduced_word(p, cw.VERTICAL, rng.randint(0, 25), rng)
            r = cw.fill_rectangle(p, bottom, left)
            top, right = develop_row_major(p, bottom, left)
            assert r.top.letters == tuple(top) and r.right.letters == tuple(right)

    @pytest.mark.skipif(_speedups is None, reason="compiled kernel unavailable")
    def test_backends_agree(self, census22, rng):
        for i in range(100):
            p = census22[(7 * i) % len(census22)]
            bottom = [p.germ_id(e) for e in random_reduced_word(p, cw.HORIZONTAL, 20, rng).letters]
            left = [p.germ_id(e) for e in random_reduced_word(p, cw.VERTICAL, 20, rng).letters]
            assert develop_ids(p.tables, bottom, left, backend="cython") == develop_ids(
                p.tables, bottom, left, backend="python"
            )


class TestCells:
    def test_grid_shares_interior_edges(self, shipped):
        p = shipped.complex
        r = cw.fill_rectangle(p, shipped.hword.power(3), shipped.vword.power(4), keep_cells=True)
        rows, cols = r.height, r.width
        assert len(r.cells) == rows and all(len(row) == cols for row in r.cells)
        for j in range(rows):
            for i in range(cols):
                cell = r.cells[j][i]
                if j + 1 < rows:
                    assert r.cells[j + 1][i].bottom == cell.top
                if i + 1 < cols:
                    assert r.cells[j][i + 1].left == cell.right
        # boundary words match the grid
        assert tuple(c.bottom for c in r.cells[0]) == r.bottom.letters
        assert tuple(c.top for c in r.cells[-1]) == r.top.letters
        assert tuple(row[0].left for row in r.cells) == r.left.letters
        assert tuple(row[-1].right for row in r.cells) == r.right.letters

    def test_cells_match_fast_path(self, shipped):
        p = shipped.complex
        fast = cw.fill_rectangle(p, shipped.hword.power(2), shipped.vword.power(3))
        slow = cw.fill_rectangle(p, shipped.hword.power(2), shipped.vword.power(3), keep_cells=True)
        assert fast.top == slow.top and fast.right == slow.right


class TestMultiVertex:
    def test_develop_traces_vertices(self, two_vertex):
        p = two_vertex
        r = cw.fill_rectangle(p, w(p, "a b"), w(p, "x"))
        assert str(r.top) == "ab" and str(r.right) == "x"

    def test_incompatible_path_raises(self, two_vertex):
        p = two_vertex
        with pytest.raises(DevelopmentError):
            cw.fill_rectangle(p, w(p, "a a"), w(p, "x"))  # a ends at Q, a starts at P


@st.composite
def torus_words(draw):
    n = draw(st.integers(min_value=0, max_value=12))
    m = draw(st.integers(min_value=0, max_value=12))
    return n, m


class TestHypothesis:
    @given(torus_words())
    @settings(max_examples=60, deadline=None)
    def test_torus_every_development_is_identity(self, nm):
        torus = cw.parse_complex("hedges: a\nvedges: x\nsquare: a x a x\n")
        n, m = nm
        bottom = cw.Word((cw.OrientedEdge(torus.hedges[0], 1),) * n, cw.HORIZONTAL)
        left = cw.Word((cw.OrientedEdge(torus.vedges[0], 1),) * m, cw.VERTICAL)
        r = cw.fill_rectangle(torus, bottom, left)
        assert r.top == bottom and r.right == left

    @given(st.integers(0, 20), st.integers(0, 20), st.randoms(use_true_random=False))
    @settings(max_examples=40, deadline=None)
    def test_row_column_agreement_shipped(self, blen, llen, hyp_rng):
        from importlib.resources import files

        p = cw.parse_complex(files("cscwalls.data").joinpath("aperiodic22.sqc").read_text())
        bottom = random_reduced_word(p, cw.HORIZONTAL, blen, hyp_rng)
        left = random_reduced_word(p, cw.VERTICAL, llen, hyp_rng)
        r = cw.fill_rectangle(p, bottom, left)
        top, right = develop_row_major(p, bottom, left)
        assert r.top.letters == tuple(top) and r.right.letters == tuple(right)


def test_backend_reported():
    assert BACKEND in ("cython", "python")
