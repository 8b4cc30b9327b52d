"""Hardness gadget: lift a graph G to G~ so that independence in G matches
general position in G~.

The lift keeps the base graph, adds a clique copy V' and an independent
copy V'', and joins them with two perfect matchings.  Layer indexing is
fixed to (v, v', v'') = (i, n+i, 2n+i) for reproducibility.
"""

from __future__ import annotations

from .errors import ParameterError, TimedOutError, VertexOutOfRangeError
from .geodesic import TripleSet, collinear_triples, verify_general_position
from .graph import DistanceMatrix, Graph, all_pairs_distances, build_graph
from .solver import gp_exact, independence_number_exact


class ReductionInstance:
    """The lifted graph together with its layer map."""

    def __init__(self, base: Graph, lifted: Graph):
        self.base = base
        self.lifted = lifted
        self._dist: DistanceMatrix | None = None
        self._triples: TripleSet | None = None

    @property
    def layer_map(self) -> tuple[tuple[int, int, int], ...]:
        n = self.base.n
        return tuple((v, n + v, 2 * n + v) for v in range(n))

    @property
    def lifted_distances(self) -> DistanceMatrix:
        if self._dist is None:
            self._dist = all_pairs_distances(self.lifted)
        return self._dist

    @property
    def lifted_triples(self) -> TripleSet:
        if self._triples is None:
            self._triples = collinear_triples(self.lifted_distances)
        return self._triples

    def __repr__(self) -> str:
        return f"ReductionInstance(base_n={self.base.n}, lifted_n={self.lifted.n})"


def build_reduction(g: Graph) -> ReductionInstance:
    """Construct the lift; needs a connected base with at least 2 vertices."""
    n = g.n
    if n < 2:
        raise ParameterError(f"reduction needs a base graph with n >= 2, got {n}")
    edges = list(g.edges())
    edges.extend((n + u, n + v) for u in range(n) for v in range(u + 1, n))  # clique on V'
    edges.extend((v, n + v) for v in range(n))            # matching V - V'
    edges.extend((n + v, 2 * n + v) for v in range(n))    # matching V' - V''
    lifted = build_graph(3 * n, edges)
    assert lifted.edge_count == g.edge_count + n * (n - 1) // 2 + 2 * n
    return ReductionInstance(g, lifted)


def verify_membership_claim(r: ReductionInstance, x) -> bool:
    """Check the equivalence: x independent in G iff x union V'' is a
    general position set of the lift.  Returns the truth of the
    biconditional (expected to always hold)."""
    n = r.base.n
    xs = frozenset(x)
    for v in xs:
        if not 0 <= v < n:
            raise VertexOutOfRangeError(f"vertex {v} is not a base vertex (n={n})")
    independent = all(not r.base.has_edge(u, v) for u in xs for v in xs if u < v)
    lifted_set = xs | frozenset(range(2 * n, 3 * n))
    certified = verify_general_position(r.lifted_triples, lifted_set).certified
    return independent == certified


def verify_value_claim(r: ReductionInstance, budget: float | None = None) -> bool:
    """Check gp(G~) = alpha(G) + n by two exact solves.

    Raises TimedOutError if either solve exhausts the budget; the value
    equality is exactly the claim that alpha(G) >= k iff gp(G~) >= k + n
    for all k."""
    n = r.base.n
    if n < 3:
        raise ParameterError(f"value claim is checked for base n >= 3, got {n}")
    alpha = independence_number_exact(r.base, budget)
    if not alpha.is_exact:
        raise TimedOutError("independence solve exhausted its budget")
    gp = gp_exact(r.lifted, r.lifted_triples, budget)
    if not gp.is_exact:
        raise TimedOutError("general position solve exhausted its budget")
    return gp.optimum == alpha.optimum + n
