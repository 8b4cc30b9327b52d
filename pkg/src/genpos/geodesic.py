"""Geodesic betweenness and the collinearity hypergraph.

A triple (x, y, z) of pairwise distinct vertices is collinear when
d(x,z) = d(x,y) + d(y,z), i.e. y lies on some x,z-geodesic.  Triples are
normalized to x < z (betweenness is symmetric in the outer pair); each
unordered vertex triple admits at most one middle, so normalized triples
and collinear vertex triples are in bijection.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import TooLargeError, VertexOutOfRangeError
from .graph import DistanceMatrix

# Above this many vertices the O(n^3) hypergraph is not materialized;
# only the on-demand is_between predicate is offered.
MAX_MATERIALIZE_N = 1500


def is_between(d: DistanceMatrix, x: int, y: int, z: int) -> bool:
    """True iff x, y, z are pairwise distinct and y lies on an x,z-geodesic."""
    n = d.n
    for v in (x, y, z):
        if not 0 <= v < n:
            raise VertexOutOfRangeError(f"vertex {v} out of range 0..{n - 1}")
    if x == y or y == z or x == z:
        return False
    m = d.d
    return int(m[x, z]) == int(m[x, y]) + int(m[y, z])


class TripleSet:
    """All normalized collinear triples of a graph, with per-vertex index."""

    __slots__ = ("n", "triples", "_per_vertex")

    def __init__(self, n: int, triples: frozenset[tuple[int, int, int]]):
        self.n = n
        self.triples = triples
        self._per_vertex = None

    @property
    def per_vertex(self) -> tuple[tuple[tuple[int, int, int], ...], ...]:
        """For each vertex, the triples containing it in any role."""
        if self._per_vertex is None:
            buckets: list[list[tuple[int, int, int]]] = [[] for _ in range(self.n)]
            for t in sorted(self.triples):
                for v in t:
                    buckets[v].append(t)
            self._per_vertex = tuple(tuple(b) for b in buckets)
        return self._per_vertex

    def triple_degree(self, v: int) -> int:
        return len(self.per_vertex[v])

    def __len__(self) -> int:
        return len(self.triples)

    def __contains__(self, t) -> bool:
        return t in self.triples

    def __repr__(self) -> str:
        return f"TripleSet(n={self.n}, triples={len(self.triples)})"


def collinear_triples(d: DistanceMatrix, max_n: int = MAX_MATERIALIZE_N) -> TripleSet:
    """Materialize the full collinearity hypergraph by an O(n^3) scan."""
    n = d.n
    if n > max_n:
        raise TooLargeError(f"n={n} exceeds materialization cutoff {max_n}; use is_between")
    m = d.d
    out = []
    for x in range(n):
        # eq[y, z] <=> d(x,z) == d(x,y) + d(y,z); vectorized over (y, z).
        eq = m[x][None, :] == (m[x][:, None] + m)
        eq[x, :] = False
        eq[:, x] = False
        np.fill_diagonal(eq, False)
        for y, z in zip(*np.nonzero(eq[:, x + 1:])):
            out.append((x, int(y), int(z) + x + 1))
    return TripleSet(n, frozenset(out))


@dataclass(frozen=True)
class GeneralPositionSet:
    """A vertex set with its verification verdict.

    certified means no collinear triple lies inside the set; otherwise
    witness holds the lexicographically smallest violating triple.
    """

    vertices: frozenset[int]
    certified: bool
    witness: tuple[int, int, int] | None = None

    def __len__(self) -> int:
        return len(self.vertices)


def verify_general_position(t: TripleSet, s) -> GeneralPositionSet:
    """Check a vertex set against the hypergraph; polynomial-time verifier."""
    vs = frozenset(s)
    for v in vs:
        if not 0 <= v < t.n:
            raise VertexOutOfRangeError(f"vertex {v} out of range 0..{t.n - 1}")
    k = len(vs)
    if k < 3:
        return GeneralPositionSet(vs, True)
    violations: list[tuple[int, int, int]] = []
    # Enumerate whichever side is smaller: candidate triples inside s, or
    # the stored triples themselves.
    if k * (k - 1) * (k - 2) // 2 < len(t.triples):
        triples = t.triples
        for a, b, c in combinations(sorted(vs), 3):
            for cand in ((a, b, c), (b, a, c), (a, c, b)):
                if cand in triples:
                    violations.append(cand)
    else:
        violations = [trip for trip in t.triples if vs.issuperset(trip)]
    if not violations:
        return GeneralPositionSet(vs, True)
    return GeneralPositionSet(vs, False, min(violations))
