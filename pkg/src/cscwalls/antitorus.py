"""Bounded aperiodicity screening and geodesic-flat overlap computation.

A horizontal periodic word and a vertical periodic word through the base
vertex span a flat in the universal cover.  The flat is periodic exactly
when some nonzero powers of the two translations commute, which shows up
combinatorially as a rectangle whose developed top and right sides repeat
its bottom and left sides.

When no such rectangle exists, widening rectangles develop tops that
eventually diverge from the horizontal periodic word, and the overlap of
the corresponding parallel geodesic with the flat is a finite segment.
``overlap_gamma`` measures that segment: rightward by streaming columns
until the first mismatch, leftward by running the same stream on the
mirrored complex.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import HORIZONTAL, VERTICAL
from .errors import BudgetExceeded, CscwallsError, UnsupportedComplexError, WordError
from .develop import (
    PeriodicWord,
    Word,
    _ids_word,
    _word_ids,
    develop_ids,
    stream_mismatch_ids,
)

#: Default budget for the pigeonhole search (developed words).
DEFAULT_I_MAX = 10**6

#: Default budget for the divergence scan (periods of the horizontal word).
DEFAULT_K_MAX = 10**4

PERIODIC_FLAT_DIAGNOSTIC = "periodic flat suspected: the pair may not span an aperiodic flat"


@dataclass(frozen=True)
class AntiTorusQuery:
    """A complex with a horizontal/vertical pair of primitive periodic words.

    The base vertex is implicit (one-vertex complexes only).
    """

    complex: object  # SquareComplexPresentation
    hword: PeriodicWord
    vword: PeriodicWord

    def __post_init__(self):
        if len(self.complex.vertices) != 1:
            raise UnsupportedComplexError("queries require a one-vertex complex")
        if self.hword.klass != HORIZONTAL:
            raise WordError("hword must be horizontal")
        if self.vword.klass != VERTICAL:
            raise WordError("vword must be vertical")


@dataclass(frozen=True)
class GammaResult:
    """The finite overlap of a parallel horizontal geodesic with the flat.

    Lengths count edges.  The overlap spans left_len edges west and right_len
    edges east of the basepoint column; the geodesic runs at height y_offset
    (the j-th power of the vertical word).
    """

    n: int
    j: int
    left_len: int
    right_len: int
    total_len: int
    y_offset: int

    def to_dict(self):
        return {
            "n": self.n,
            "j": self.j,
            "left_len": self.left_len,
            "right_len": self.right_len,
            "total_len": self.total_len,
            "y_offset": self.y_offset,
        }


def commuting_powers_search(query, k_bound=8, j_bound=8):
    """Smallest (k, j), lexicographically, with commuting k-th and j-th powers.

    The pair commutes exactly when the rectangle spanned by the k-th power of
    the horizontal word and the j-th power of the vertical word closes up into
    a torus: developed top equals bottom and developed right equals left.
    Returns None when no pair exists within the bounds, which certifies the
    aperiodicity hypothesis up to those bounds (never beyond them).
    """
    tables = query.complex.tables
    h_ids = _word_ids(query.complex, query.hword.period)
    v_ids = _word_ids(query.complex, query.vword.period)
    for k in range(1, k_bound + 1):
        bottom = h_ids * k
        for j in range(1, j_bound + 1):
            left = v_ids * j
            top, right = develop_ids(tables, bottom, left)
            if top == bottom and right == left:
                return (k, j)
    return None


def find_periodic_top(query, n, i_max=DEFAULT_I_MAX):
    """Stack vertical periods on the n-th power of the horizontal word until a
    developed top repeats.

    Returns (j, first_repeat): the height gap j of the first repetition and
    the index at which it was observed.  There are finitely many words of the
    top's length, so a repeat is guaranteed; i_max only caps memory.  The gap
    j always satisfies develop_top(h^n, v^j) == h^n (a repeated top can be
    translated back to the bottom); this is asserted, not assumed.
    """
    tables = query.complex.tables
    v_ids = _word_ids(query.complex, query.vword.period)
    bottom = _word_ids(query.complex, query.hword.power(n))
    seen = {tuple(bottom): 0}
    top = bottom
    for m in range(1, i_max + 1):
        top, _ = develop_ids(tables, top, v_ids)
        key = tuple(top)
        if key in seen:
            j = m - seen[key]
            check, _ = develop_ids(tables, bottom, v_ids * j)
            if check != bottom:
                raise CscwallsError(
                    "translation property failed: repeated top does not reproduce the bottom"
                )
            return j, m
        seen[key] = m
    raise BudgetExceeded(f"no repeated top within {i_max} developed words")


def overlap_at_height(query, j, k_max=DEFAULT_K_MAX):
    """Agreement lengths (west, east) between the horizontal periodic line and
    the flat's label line at height j vertical periods.

    Eastward: stream columns of the rectangle of height j periods, bottom
    extended by the horizontal period, until the developed top first diverges
    from the periodic word.  Westward: the identical stream on the mirrored
    complex with the inverted horizontal word, so measuring the mirrored query
    at the same height swaps the two lengths exactly.  Raises BudgetExceeded
    with a periodic-flat diagnostic when either direction fails to diverge
    within k_max periods.
    """
    p = query.complex
    side = _word_ids(p, query.vword.period) * j
    max_cols = k_max * len(query.hword)

    right_len = stream_mismatch_ids(p.tables, _word_ids(p, query.hword.period), list(side), max_cols)
    if right_len < 0:
        raise BudgetExceeded(
            f"no divergence east of the basepoint within {k_max} periods",
            diagnostic=PERIODIC_FLAT_DIAGNOSTIC,
        )

    mirrored = p.mirrored
    m_period = _word_ids(mirrored, query.hword.inverse().period)
    left_len = stream_mismatch_ids(mirrored.tables, m_period, list(side), max_cols)
    if left_len < 0:
        raise BudgetExceeded(
            f"no divergence west of the basepoint within {k_max} periods",
            diagnostic=PERIODIC_FLAT_DIAGNOSTIC,
        )
    return left_len, right_len


def overlap_gamma(query, n, k_max=DEFAULT_K_MAX, i_max=DEFAULT_I_MAX):
    """The finite overlap of the height-j parallel geodesic with the flat.

    The height is chosen by the eastward pigeonhole (find_periodic_top), which
    guarantees the east agreement covers at least n horizontal periods, hence
    the basepoint column lies on the overlap.  Both directions are then
    measured with overlap_at_height.
    """
    j, _ = find_periodic_top(query, n, i_max=i_max)
    left_len, right_len = overlap_at_height(query, j, k_max=k_max)
    if right_len < n * len(query.hword):
        raise CscwallsError("overlap shorter than the pigeonhole guarantee; development bug")
    return GammaResult(
        n=n,
        j=j,
        left_len=left_len,
        right_len=right_len,
        total_len=left_len + right_len,
        y_offset=j * len(query.vword),
    )


# ---------------------------------------------------------------------------
# Candidate screening over a census complex
# ---------------------------------------------------------------------------


def periodic_candidates(presentation, klass, max_len):
    """All primitive cyclically reduced periodic words up to max_len, in a
    fixed lexicographic order of germ ids."""
    pool = presentation.hedges if klass == HORIZONTAL else presentation.vedges
    germs = range(2 * len(pool))
    out = []

    def extend(prefix):
        if prefix:
            try:
                out.append(PeriodicWord(_ids_word(presentation, klass, prefix)))
            except WordError:
                pass
        if len(prefix) == max_len:
            return
        for g in germs:
            if prefix and g == prefix[-1] ^ 1:
                continue
            extend(prefix + [g])

    extend([])
    out.sort(key=lambda w: (len(w), _word_ids(presentation, w.period)))
    return out


def screen_anti_torus(presentation, max_len=2, k_bound=8, j_bound=8):
    """Candidate pairs with no commuting powers within the bounds.

    Yields (hword, vword, query) triples in deterministic order.  A yielded
    pair is only a bounded certificate: the aperiodicity hypothesis itself is
    not decided by this search.
    """
    for hw in periodic_candidates(presentation, HORIZONTAL, max_len):
        for vw in periodic_candidates(presentation, VERTICAL, max_len):
            query = AntiTorusQuery(presentation, hw, vw)
            if commuting_powers_search(query, k_bound, j_bound) is None:
                yield hw, vw, query
