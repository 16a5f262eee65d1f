"""Deterministic rectangle development in the universal cover.

Given the bottom and left boundary words of a rectangle, corner uniqueness
in a complete square complex fills the whole rectangle cell by cell, and in
particular determines the top and right boundary words.  Development runs
column-major from the SW corner: columns are computed left to right and
never revised, so tops of widening rectangles are prefix-stable.

Two kernels implement the inner loop: a compiled Cython extension and a
pure-Python fallback, selected at import time (set CSCWALLS_PURE_PYTHON=1
to force the fallback).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .complexes import HORIZONTAL, VERTICAL, OrientedEdge
from .errors import DevelopmentError, WordError
from . import _kernels

_FORCE_PURE = os.environ.get("CSCWALLS_PURE_PYTHON", "") not in ("", "0")

try:
    if _FORCE_PURE:
        raise ImportError("pure-Python kernel forced via CSCWALLS_PURE_PYTHON")
    from . import _speedups
except ImportError:
    _speedups = None

#: Active kernel backend: "cython" or "python".
BACKEND = "python" if _speedups is None else "cython"


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Word:
    """A reduced edge-label word, all letters in one class."""

    letters: tuple
    klass: str

    def __post_init__(self):
        if self.klass not in (HORIZONTAL, VERTICAL):
            raise WordError(f"bad word class {self.klass!r}")
        prev = None
        for e in self.letters:
            if e.klass != self.klass:
                raise WordError(f"{e.klass} letter {e.token()!r} in a {self.klass} word")
            if prev is not None and e == prev.inverse():
                raise WordError(f"word not reduced at {prev.token()!r} {e.token()!r}")
            prev = e

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return format_word(self)

    def __add__(self, other):
        if other.klass != self.klass:
            raise WordError("cannot concatenate words of different classes")
        return Word(self.letters + other.letters, self.klass)

    def power(self, k):
        if k < 0:
            return self.inverse().power(-k)
        return Word(self.letters * k, self.klass)

    def inverse(self):
        return Word(tuple(e.inverse() for e in reversed(self.letters)), self.klass)

    def tokens(self):
        return [e.token() for e in self.letters]


@dataclass(frozen=True)
class PeriodicWord:
    """A cyclically reduced primitive word: the period of a bi-infinite label line.

    Rejects proper powers, since the translation it models must be along a
    primitive axis.
    """

    period: Word

    def __post_init__(self):
        w = self.period
        n = len(w)
        if n == 0:
            raise WordError("periodic word must be nonempty")
        if n > 1 and w.letters[-1] == w.letters[0].inverse():
            raise WordError(f"{format_word(w)!r} is not cyclically reduced")
        for d in range(1, n):
            if n % d:
                continue
            if all(w.letters[i] == w.letters[(i + d) % n] for i in range(n)):
                raise WordError(f"{format_word(w)!r} is a proper power (cyclic period {d})")

    def __len__(self):
        return len(self.period)

    @property
    def klass(self):
        return self.period.klass

    def power(self, k):
        return self.period.power(k)

    def inverse(self):
        return PeriodicWord(self.period.inverse())


def parse_word(presentation, text, klass=None):
    """Parse a word from tokens like ``a -b a`` (or compact ``a-ba`` when all
    labels are single characters).  Class is inferred from the letters unless
    given, in which case it is enforced."""
    parts = text.replace(",", " ").split()
    if len(parts) == 1 and parts[0].lstrip("-") not in presentation.edge_by_name:
        tok, parts, i = parts[0], [], 0
        while i < len(tok):
            neg = tok[i] == "-"
            if neg:
                i += 1
                if i >= len(tok):
                    raise WordError(f"dangling '-' in word {text!r}")
            parts.append(("-" if neg else "") + tok[i])
            i += 1
    letters = []
    for part in parts:
        name = part[1:] if part.startswith("-") else part
        edge = presentation.edge_by_name.get(name)
        if edge is None:
            raise WordError(f"unknown edge label {name!r} in word {text!r}")
        letters.append(OrientedEdge(edge, -1 if part.startswith("-") else 1))
    if klass is None:
        if not letters:
            raise WordError("cannot infer the class of an empty word")
        klass = letters[0].klass
    return Word(tuple(letters), klass)


def format_word(word):
    toks = word.tokens()
    if all(len(t.lstrip("-")) == 1 for t in toks):
        return "".join(toks)
    return " ".join(toks)


# ---------------------------------------------------------------------------
# Kernel dispatch
# ---------------------------------------------------------------------------


def develop_ids(tables, bottom_ids, left_ids, backend=None):
    """Develop germ-id sequences; returns (top ids, right ids) as lists."""
    backend = BACKEND if backend is None else backend
    if backend == "cython":
        side = np.asarray(left_ids, dtype=np.int32)
        bottom = np.asarray(bottom_ids, dtype=np.int32)
        top_out = np.empty(len(bottom_ids), dtype=np.int32)
        try:
            _speedups.develop_ids(tables.top, tables.right, bottom, side, top_out)
        except ValueError as exc:
            raise DevelopmentError(str(exc)) from None
        return top_out.tolist(), side.tolist()
    return _kernels.develop_ids(tables.top_rows, tables.right_rows, list(bottom_ids), list(left_ids))


def stream_mismatch_ids(tables, period_ids, side_ids, max_cols, backend=None):
    """Columns of agreement between the developed top and the periodic bottom
    word; -1 when no mismatch shows up within max_cols columns."""
    backend = BACKEND if backend is None else backend
    if backend == "cython":
        side = np.asarray(side_ids, dtype=np.int32)
        period = np.asarray(period_ids, dtype=np.int32)
        try:
            return _speedups.stream_mismatch(tables.top, tables.right, period, side, max_cols)
        except ValueError as exc:
            raise DevelopmentError(str(exc)) from None
    return _kernels.stream_mismatch(
        tables.top_rows, tables.right_rows, list(period_ids), list(side_ids), max_cols
    )


def _word_ids(presentation, word):
    return [presentation.germ_id(e) for e in word.letters]


def _ids_word(presentation, klass, ids):
    return Word(tuple(presentation.germ_edge(klass, g) for g in ids), klass)


# ---------------------------------------------------------------------------
# Rectangles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cell:
    """One filled cell: the quotient square it develops and the reading orientation."""

    square: int
    corner: str  # which corner of the stored square sits at this cell's SW
    bottom: OrientedEdge
    right: OrientedEdge
    top: OrientedEdge
    left: OrientedEdge


@dataclass(frozen=True)
class Rectangle:
    width: int
    height: int
    bottom: Word
    top: Word
    left: Word
    right: Word
    cells: tuple | None = None  # rows bottom-to-top, each a tuple of Cells


def _check_classes(bottom, left):
    if bottom.klass != HORIZONTAL:
        raise WordError("bottom word must be horizontal")
    if left.klass != VERTICAL:
        raise WordError("left word must be vertical")


def fill_rectangle(presentation, bottom, left, keep_cells=False):
    """Fill the rectangle with the given SW boundary words.

    Corner uniqueness makes the result unique; empty words are allowed and
    give degenerate rectangles.  With keep_cells=True the full cell grid is
    retained for inspection (slower, Python path).
    """
    _check_classes(bottom, left)
    tables = presentation.tables
    bottom_ids = _word_ids(presentation, bottom)
    left_ids = _word_ids(presentation, left)
    cells = None
    if keep_cells:
        top_ids, right_ids, cells = _fill_cells(presentation, tables, bottom_ids, left_ids)
    else:
        top_ids, right_ids = develop_ids(tables, bottom_ids, left_ids)
    return Rectangle(
        width=len(bottom),
        height=len(left),
        bottom=bottom,
        top=_ids_word(presentation, HORIZONTAL, top_ids),
        left=left,
        right=_ids_word(presentation, VERTICAL, right_ids),
        cells=cells,
    )


def _fill_cells(presentation, tables, bottom_ids, left_ids):
    from .complexes import CORNERS

    sq_tab, co_tab = tables.square, tables.corner
    top_rows, right_rows = tables.top_rows, tables.right_rows
    rows = [[] for _ in left_ids]
    side = list(left_ids)
    for b in bottom_ids:
        for j, v in enumerate(side):
            s = int(sq_tab[b, v])
            if s < 0:
                raise DevelopmentError("development hit a missing corner")
            nt, nr = top_rows[b][v], right_rows[b][v]
            rows[j].append(
                Cell(
                    square=s,
                    corner=CORNERS[int(co_tab[b, v])],
                    bottom=presentation.germ_edge(HORIZONTAL, b),
                    right=presentation.germ_edge(VERTICAL, nr),
                    top=presentation.germ_edge(HORIZONTAL, nt),
                    left=presentation.germ_edge(VERTICAL, v),
                )
            )
            side[j] = nr
            b = nt
    top_ids = (
        [presentation.germ_id(rows[-1][i].top) for i in range(len(bottom_ids))]
        if left_ids
        else list(bottom_ids)
    )
    return top_ids, side, tuple(tuple(r) for r in rows)


def develop_top(presentation, bottom, left):
    """The word on the side opposite the bottom."""
    _check_classes(bottom, left)
    top_ids, _ = develop_ids(
        presentation.tables, _word_ids(presentation, bottom), _word_ids(presentation, left)
    )
    return _ids_word(presentation, HORIZONTAL, top_ids)


def develop_right(presentation, bottom, left):
    """The word on the side opposite the left."""
    _check_classes(bottom, left)
    _, right_ids = develop_ids(
        presentation.tables, _word_ids(presentation, bottom), _word_ids(presentation, left)
    )
    return _ids_word(presentation, VERTICAL, right_ids)
