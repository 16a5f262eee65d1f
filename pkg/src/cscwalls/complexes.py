"""VH square-complex presentations and the complete-square-complex condition.

A presentation is a finite set of labeled oriented edges split into a
horizontal and a vertical class, plus a list of squares.  Each square
records its four boundary edges as (bottom, right, top, left), where
bottom/top are read west-to-east and left/right south-to-north, so the
boundary relation bottom*right = left*top holds as paths from the SW to
the NE corner.

The complex is *complete* (a CSC) when every ordered pair of departing
germs (one horizontal, one vertical) at a vertex is a corner of exactly
one square, counting the four corner types of every square once.  This
is the finite criterion for the universal cover being a product of two
trees, and it is what makes rectangle development deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import (
    BudgetExceeded,
    ClassError,
    DuplicateLabel,
    NotCSCError,
    ParseError,
)

HORIZONTAL = "horizontal"
VERTICAL = "vertical"

#: Vertex name used by one-vertex presentations.
BASE_VERTEX = "*"

#: Corner types of a square, named by compass position.
CORNERS = ("SW", "SE", "NW", "NE")


@dataclass(frozen=True)
class EdgeLabel:
    """A named oriented edge of the quotient complex."""

    name: str
    klass: str  # HORIZONTAL or VERTICAL
    origin: str = BASE_VERTEX
    terminus: str = BASE_VERTEX


@dataclass(frozen=True)
class OrientedEdge:
    """An edge label traversed with (+1) or against (-1) its orientation."""

    label: EdgeLabel
    sign: int = 1

    @property
    def klass(self):
        return self.label.klass

    @property
    def start(self):
        return self.label.origin if self.sign > 0 else self.label.terminus

    @property
    def end(self):
        return self.label.terminus if self.sign > 0 else self.label.origin

    def inverse(self):
        return OrientedEdge(self.label, -self.sign)

    def token(self):
        return self.label.name if self.sign > 0 else "-" + self.label.name

    def __repr__(self):
        return f"OrientedEdge({self.token()!r})"


@dataclass(frozen=True)
class Square:
    """One 2-cell, recorded from its SW corner.

    bottom and top are horizontal (west to east), left and right vertical
    (south to north).  The other three corner orientations are derived by
    reflection when the corner table is built, so each geometric square is
    stored exactly once.
    """

    bottom: OrientedEdge
    right: OrientedEdge
    top: OrientedEdge
    left: OrientedEdge

    def flip_h(self):
        """The same square read from its SE corner (west-east mirror)."""
        return Square(self.bottom.inverse(), self.left, self.top.inverse(), self.right)

    def flip_v(self):
        """The same square read from its NW corner (south-north mirror)."""
        return Square(self.top, self.right.inverse(), self.bottom, self.left.inverse())

    def corner_vertices(self):
        """(SW, SE, NW, NE) vertices; raises ValueError if the sides do not close up."""
        sw1, sw2 = self.bottom.start, self.left.start
        se1, se2 = self.bottom.end, self.right.start
        nw1, nw2 = self.left.end, self.top.start
        ne1, ne2 = self.right.end, self.top.end
        for corner, (a, b) in zip(CORNERS, ((sw1, sw2), (se1, se2), (nw1, nw2), (ne1, ne2))):
            if a != b:
                raise ValueError(f"{corner} corner joins distinct vertices {a!r} and {b!r}")
        return sw1, se1, nw1, ne1


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the completeness check.

    violations lists (vertex, (horizontal germ token, vertical germ token),
    count) for every germ pair covered a number of times other than one.
    """

    is_csc: bool
    violations: tuple
    corner_count: int


class CornerTables:
    """Corner-lookup arrays for development over a validated one-vertex-per-germ complex.

    Germ ids encode oriented edges: letter index i with sign + is 2i, with
    sign - is 2i+1, so inversion is ``germ ^ 1``.  Entry (b, l) holds the top
    and right germs of the unique square having the pair (b, l) at a corner,
    read in the orientation that puts that corner at the SW position.
    Missing entries (multi-vertex complexes only) hold -1.
    """

    def __init__(self, nh, nv, top, right, square, corner):
        self.nh = nh
        self.nv = nv
        self.top = top
        self.right = right
        self.square = square
        self.corner = corner

    @cached_property
    def top_rows(self):
        return self.top.tolist()

    @cached_property
    def right_rows(self):
        return self.right.tolist()


@dataclass(frozen=True)
class SquareComplexPresentation:
    """A finite VH square complex with labeled oriented edges.

    Immutable after construction; validation and the corner tables are
    computed lazily and cached, so presentations are cheap to share.
    """

    vertices: tuple
    hedges: tuple  # EdgeLabel, class HORIZONTAL
    vedges: tuple  # EdgeLabel, class VERTICAL
    squares: tuple

    # -- label and germ bookkeeping ------------------------------------

    @cached_property
    def edge_by_name(self):
        return {e.name: e for e in self.hedges + self.vedges}

    @cached_property
    def _h_index(self):
        return {e.name: i for i, e in enumerate(self.hedges)}

    @cached_property
    def _v_index(self):
        return {e.name: i for i, e in enumerate(self.vedges)}

    def germ_id(self, edge):
        """Integer id of an oriented edge inside its class."""
        index = self._h_index if edge.klass == HORIZONTAL else self._v_index
        return 2 * index[edge.label.name] + (0 if edge.sign > 0 else 1)

    def germ_edge(self, klass, germ):
        """Inverse of germ_id."""
        pool = self.hedges if klass == HORIZONTAL else self.vedges
        return OrientedEdge(pool[germ // 2], 1 if germ % 2 == 0 else -1)

    def germ_token(self, klass, germ):
        return self.germ_edge(klass, germ).token()

    # -- validation ----------------------------------------------------

    @cached_property
    def _corner_counts(self):
        """Map (vertex, h germ, v germ) -> list of (square index, corner type)."""
        counts = {}
        for s, sq in enumerate(self.squares):
            b = self.germ_id(sq.bottom)
            r = self.germ_id(sq.right)
            t = self.germ_id(sq.top)
            l = self.germ_id(sq.left)
            sw, se, nw, ne = sq.corner_vertices()
            pairs = (
                (sw, b, l, "SW"),
                (se, b ^ 1, r, "SE"),
                (nw, t, l ^ 1, "NW"),
                (ne, t ^ 1, r ^ 1, "NE"),
            )
            for vertex, h, v, corner in pairs:
                counts.setdefault((vertex, h, v), []).append((s, corner))
        return counts

    @cached_property
    def validation(self):
        counts = self._corner_counts
        violations = []
        for vertex in self.vertices:
            for he in self.hedges:
                for hs in (1, -1):
                    hg = OrientedEdge(he, hs)
                    if hg.start != vertex:
                        continue
                    for ve in self.vedges:
                        for vs in (1, -1):
                            vg = OrientedEdge(ve, vs)
                            if vg.start != vertex:
                                continue
                            key = (vertex, self.germ_id(hg), self.germ_id(vg))
                            n = len(counts.get(key, ()))
                            if n != 1:
                                violations.append((vertex, (hg.token(), vg.token()), n))
        violations.sort()
        return ValidationReport(
            is_csc=not violations,
            violations=tuple(violations),
            corner_count=4 * len(self.squares),
        )

    @property
    def is_csc(self):
        return self.validation.is_csc

    @cached_property
    def tables(self):
        """Corner tables for development; raises NotCSCError when invalid."""
        if not self.is_csc:
            raise NotCSCError(
                f"not a complete square complex: {len(self.validation.violations)} corner violations"
            )
        nh, nv = 2 * len(self.hedges), 2 * len(self.vedges)
        top = np.full((nh, nv), -1, dtype=np.int32)
        right = np.full((nh, nv), -1, dtype=np.int32)
        square = np.full((nh, nv), -1, dtype=np.int32)
        corner = np.full((nh, nv), -1, dtype=np.int8)
        for s, sq in enumerate(self.squares):
            for code, version in enumerate(
                (sq, sq.flip_h(), sq.flip_v(), sq.flip_h().flip_v())
            ):
                b = self.germ_id(version.bottom)
                l = self.germ_id(version.left)
                top[b, l] = self.germ_id(version.top)
                right[b, l] = self.germ_id(version.right)
                square[b, l] = s
                corner[b, l] = code
        return CornerTables(nh, nv, top, right, square, corner)

    @cached_property
    def mirrored(self):
        """The west-east mirror image (every square reflected)."""
        return SquareComplexPresentation(
            vertices=self.vertices,
            hedges=self.hedges,
            vedges=self.vedges,
            squares=tuple(sq.flip_h() for sq in self.squares),
        )


def validate_csc(presentation):
    """Check the completeness condition; never raises, the report carries violations."""
    return presentation.validation


# ---------------------------------------------------------------------------
# Presentation file format (.sqc)
# ---------------------------------------------------------------------------
#
#   # comment
#   vertex: P Q            (optional; one-vertex is implied when absent)
#   hedges: a b            (tokens are names, or name=origin:terminus when
#   vedges: x y             vertices were declared)
#   square: a x a -x       (bottom right top left; '-' reverses orientation)


def _parse_edge_token(token, klass, vertices, lineno):
    if "=" in token:
        name, _, span = token.partition("=")
        if not vertices:
            raise ParseError(lineno, f"edge {name!r} has endpoints but no vertex: directive appeared")
        origin, sep, terminus = span.partition(":")
        if not sep or origin not in vertices or terminus not in vertices:
            raise ParseError(lineno, f"bad endpoints {span!r} for edge {name!r}")
        return EdgeLabel(name, klass, origin, terminus)
    if vertices:
        raise ParseError(lineno, f"edge {token!r} needs endpoints in a multi-vertex file")
    return EdgeLabel(token, klass)


def parse_complex(text):
    """Parse a presentation file; see the format sketch above.

    Raises ParseError (with DuplicateLabel / ClassError subtypes) on malformed
    input.  Edges must be declared before the squares that use them.
    """
    vertices = []
    hedges, vedges = [], []
    seen = {}
    squares = []

    def resolve(token, want_klass, slot, lineno):
        name = token[1:] if token.startswith("-") else token
        edge = seen.get(name)
        if edge is None:
            raise ParseError(lineno, f"unknown edge label {name!r} in square")
        if edge.klass != want_klass:
            raise ClassError(lineno, f"{edge.klass} letter {name!r} in {slot} slot (wants {want_klass})")
        return OrientedEdge(edge, -1 if token.startswith("-") else 1)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        directive, sep, rest = line.partition(":")
        directive = directive.strip().lower()
        if not sep:
            raise ParseError(lineno, f"expected 'directive: ...', got {line!r}")
        tokens = rest.split()
        if directive == "vertex":
            for tok in tokens:
                if tok in vertices:
                    raise ParseError(lineno, f"duplicate vertex {tok!r}")
                vertices.append(tok)
        elif directive in ("hedges", "vedges"):
            klass = HORIZONTAL if directive == "hedges" else VERTICAL
            for tok in tokens:
                edge = _parse_edge_token(tok, klass, vertices, lineno)
                if edge.name in seen:
                    raise DuplicateLabel(lineno, f"edge label {edge.name!r} declared twice")
                seen[edge.name] = edge
                (hedges if klass == HORIZONTAL else vedges).append(edge)
        elif directive == "square":
            if len(tokens) != 4:
                raise ParseError(lineno, f"square needs 4 tokens (bottom right top left), got {len(tokens)}")
            sq = Square(
                bottom=resolve(tokens[0], HORIZONTAL, "bottom", lineno),
                right=resolve(tokens[1], VERTICAL, "right", lineno),
                top=resolve(tokens[2], HORIZONTAL, "top", lineno),
                left=resolve(tokens[3], VERTICAL, "left", lineno),
            )
            try:
                sq.corner_vertices()
            except ValueError as exc:
                raise ParseError(lineno, f"square does not close up: {exc}") from None
            squares.append(sq)
        else:
            raise ParseError(lineno, f"unknown directive {directive!r}")

    return SquareComplexPresentation(
        vertices=tuple(vertices) if vertices else (BASE_VERTEX,),
        hedges=tuple(hedges),
        vedges=tuple(vedges),
        squares=tuple(squares),
    )


def load_complex(path):
    with open(path, encoding="utf-8") as fh:
        return parse_complex(fh.read())


def serialize_complex(presentation):
    """Render a presentation in the .sqc format; parse(serialize(P)) == P."""
    multi = presentation.vertices != (BASE_VERTEX,)
    lines = []
    if multi:
        lines.append("vertex: " + " ".join(presentation.vertices))

    def edge_tok(e):
        return f"{e.name}={e.origin}:{e.terminus}" if multi else e.name

    if presentation.hedges:
        lines.append("hedges: " + " ".join(edge_tok(e) for e in presentation.hedges))
    if presentation.vedges:
        lines.append("vedges: " + " ".join(edge_tok(e) for e in presentation.vedges))
    for sq in presentation.squares:
        lines.append(
            "square: "
            + " ".join(s.token() for s in (sq.bottom, sq.right, sq.top, sq.left))
        )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Census of one-vertex complete square complexes
# ---------------------------------------------------------------------------

_H_NAMES = "abc"
_V_NAMES = "xyz"


def _square_versions(b, r, t, l):
    """The four oriented readings of one geometric square, as germ-id 4-tuples."""
    return (
        (b, r, t, l),
        (b ^ 1, l, t ^ 1, r),
        (t, r ^ 1, b, l ^ 1),
        (t ^ 1, l ^ 1, b ^ 1, r ^ 1),
    )


def _square_corners(b, r, t, l):
    return ((b, l), (b ^ 1, r), (t, l ^ 1), (t ^ 1, r ^ 1))


@lru_cache(maxsize=None)
def _signed_maps(n):
    """All relabelings of n letters: permutations composed with per-letter inversion."""
    maps = []
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((0, 1), repeat=n):
            maps.append(tuple(2 * perm[i] + (e ^ signs[i]) for i in range(n) for e in (0, 1)))
    return maps


def _canonical_square(four):
    return min(_square_versions(*four))


def _canonical_cover(cover, hmaps, vmaps):
    """Least relabeling of a set of squares under the signed-permutation group."""
    best = None
    for hm in hmaps:
        for vm in vmaps:
            image = tuple(
                sorted(_canonical_square((hm[b], vm[r], hm[t], vm[l])) for (b, r, t, l) in cover)
            )
            if best is None or image < best:
                best = image
    return best


def enumerate_csc(h_count, v_count, max_nodes=2_000_000, jobs=1):
    """Yield every one-vertex CSC with the given edge counts, up to relabeling.

    The census is computed as an exact cover: each candidate square occupies
    four germ pairs (its corners), and a CSC is a set of squares covering all
    (2*h_count)*(2*v_count) pairs exactly once.  Results are deduplicated by
    canonical-form minimization over edge relabelings and inversions and come
    out in a fixed sorted order; jobs > 1 parallelizes the canonicalization
    pass without affecting the order.

    Raises BudgetExceeded when the edge counts exceed desk scale (3) or the
    backtracking search exceeds max_nodes nodes.
    """
    if h_count < 0 or v_count < 0:
        raise ValueError("edge counts must be nonnegative")
    if h_count > 3 or v_count > 3:
        raise BudgetExceeded(f"census bound is 3 edges per class, got ({h_count}, {v_count})")
    if h_count == 0 or v_count == 0:
        return
    nh, nv = 2 * h_count, 2 * v_count

    tiles = []
    for four in itertools.product(range(nh), range(nv), range(nh), range(nv)):
        if four != _canonical_square(four):
            continue
        corners = _square_corners(*four)
        if len(set(corners)) < 4:
            continue  # a corner pair repeats inside the square: unusable
        mask = 0
        for h, v in corners:
            mask |= 1 << (h * nv + v)
        tiles.append((four, mask))

    by_pair = {}
    for idx, (_, mask) in enumerate(tiles):
        for pid in range(nh * nv):
            if mask >> pid & 1:
                by_pair.setdefault(pid, []).append(idx)

    full = (1 << (nh * nv)) - 1
    covers = []
    nodes = 0

    def extend(covered, chosen):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise BudgetExceeded(f"census search exceeded {max_nodes} nodes")
        if covered == full:
            covers.append(tuple(sorted(chosen)))
            return
        pid = (~covered & full).bit_length() - 1  # any uncovered pair; highest is fine
        for idx in by_pair.get(pid, ()):
            _, mask = tiles[idx]
            if covered & mask:
                continue
            chosen.append(tiles[idx][0])
            extend(covered | mask, chosen)
            chosen.pop()

    extend(0, [])

    hmaps = _signed_maps(h_count)
    vmaps = _signed_maps(v_count)
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            canon = pool.map(lambda c: _canonical_cover(c, hmaps, vmaps), covers)
            unique = sorted(set(canon))
    else:
        unique = sorted({_canonical_cover(cover, hmaps, vmaps) for cover in covers})

    hlabels = tuple(EdgeLabel(_H_NAMES[i], HORIZONTAL) for i in range(h_count))
    vlabels = tuple(EdgeLabel(_V_NAMES[i], VERTICAL) for i in range(v_count))

    def edge(pool, germ):
        return OrientedEdge(pool[germ // 2], 1 if germ % 2 == 0 else -1)

    for cover in unique:
        squares = tuple(
            Square(
                bottom=edge(hlabels, b),
                right=edge(vlabels, r),
                top=edge(hlabels, t),
                left=edge(vlabels, l),
            )
            for (b, r, t, l) in cover
        )
        yield SquareComplexPresentation(
            vertices=(BASE_VERTEX,), hedges=hlabels, vedges=vlabels, squares=squares
        )
