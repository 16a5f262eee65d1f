"""Projection-diameter tables and well-separation numbers.

The ambient complex here is the product of trees with an infinite strip
glued along every translate of the horizontal axis; every claim about the
closest-point projection between two such parallel geodesics reduces to the
overlap segment computed by ``overlap_gamma``, so that complex is never
materialized.

One table row per exponent n: the projection of the height-j geodesic onto
the axis is the overlap segment, its diameter is the overlap length (at
least n periods), and it always contains the basepoint.  A single vertex
therefore lies on projections of unbounded diameter, which is incompatible
with any uniform bound on projection diameters coexisting with any uniform
bound on membership multiplicity at a vertex.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from .antitorus import DEFAULT_I_MAX, DEFAULT_K_MAX, commuting_powers_search, overlap_gamma
from .errors import BudgetExceeded, CommutingPowersFound


@dataclass(frozen=True)
class ProjectionResult:
    """Diameter of one projection, with its overlap witness."""

    n: int
    gamma: object  # GammaResult
    diam: int
    contains_basepoint: bool

    def to_dict(self):
        return {
            "n": self.n,
            "diam": self.diam,
            "contains_basepoint": self.contains_basepoint,
            "gamma": self.gamma.to_dict(),
        }


@dataclass(frozen=True)
class ObstructionTable:
    rows: tuple
    failures: tuple  # (n, reason) for rows that ran out of budget
    bounds_used: dict

    def max_diam(self):
        return max((r.diam for r in self.rows), default=0)

    def to_dict(self):
        return {
            "rows": [r.to_dict() for r in self.rows],
            "failures": [{"n": n, "reason": reason} for n, reason in self.failures],
            "bounds_used": dict(self.bounds_used),
            "max_diam": self.max_diam(),
        }


@dataclass(frozen=True)
class WellSeparationResult:
    """Separation data for the two strip walls over one overlap segment.

    The walls transverse to both strip walls are exactly the walls dual to
    the L overlap edges; facing_triple_free records the explicit check that
    in any three of them the middle one separates the outer two.
    """

    n: int
    L: int
    crossing_set_size: int
    facing_triple_free: bool

    def to_dict(self):
        return {
            "n": self.n,
            "L": self.L,
            "crossing_set_size": self.crossing_set_size,
            "facing_triple_free": self.facing_triple_free,
        }


def projection_diameter(query, n, k_max=DEFAULT_K_MAX, i_max=DEFAULT_I_MAX):
    """Diameter of the projection of the height-j geodesic onto the axis.

    Equals the overlap length: the projection maps the overlap isometrically
    and everything beyond it to the overlap's endpoints, which add nothing to
    the diameter.  Contains the basepoint by construction.
    """
    gamma = overlap_gamma(query, n, k_max=k_max, i_max=i_max)
    return ProjectionResult(
        n=n,
        gamma=gamma,
        diam=gamma.total_len,
        contains_basepoint=gamma.left_len >= 0 and gamma.right_len >= n * len(query.hword),
    )


def obstruction_table(
    query,
    n_max,
    k_bound=8,
    j_bound=8,
    k_max=DEFAULT_K_MAX,
    i_max=DEFAULT_I_MAX,
    jobs=1,
):
    """One ProjectionResult row per exponent n = 1..n_max.

    First certifies the aperiodicity hypothesis up to (k_bound, j_bound) and
    raises CommutingPowersFound when the screen fails, since a periodic flat
    admits no obstruction.  Rows that exceed their budgets are recorded as
    failures instead of aborting the table.  With jobs > 1 rows are computed
    concurrently; assembly order is always by n.
    """
    found = commuting_powers_search(query, k_bound, j_bound)
    if found is not None:
        raise CommutingPowersFound(*found)

    def one(n):
        try:
            return projection_diameter(query, n, k_max=k_max, i_max=i_max), None
        except BudgetExceeded as exc:
            return None, (n, str(exc))

    ns = range(1, n_max + 1)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(one, ns))
    else:
        outcomes = [one(n) for n in ns]

    rows = tuple(row for row, _ in outcomes if row is not None)
    failures = tuple(fail for _, fail in outcomes if fail is not None)
    return ObstructionTable(
        rows=rows,
        failures=failures,
        bounds_used={
            "k_bound": k_bound,
            "j_bound": j_bound,
            "k_max": k_max,
            "i_max": i_max,
        },
    )


def well_separation(query, n, k_max=DEFAULT_K_MAX, i_max=DEFAULT_I_MAX):
    """Well-separation number of the two strip walls at exponent n.

    The overlap has length L, one transverse wall per overlap edge, and the
    facing-triple check enumerates all C(L, 3) index triples verifying that
    the middle wall separates the outer two.  The pair is L-well-separated
    but not (L-1)-well-separated.
    """
    gamma = overlap_gamma(query, n, k_max=k_max, i_max=i_max)
    L = gamma.total_len
    facing_free = all(
        (a < b) != (c < b)  # the middle edge position separates the outer two
        for a, b, c in combinations(range(L), 3)
    )
    return WellSeparationResult(
        n=n,
        L=L,
        crossing_set_size=L,
        facing_triple_free=facing_free,
    )
