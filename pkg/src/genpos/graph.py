"""Graph representation, shortest-path distances, and structural predicates.

Vertices are dense integer labels 0..n-1.  Graphs are simple, undirected,
and connected; connectivity is enforced at construction because every
result downstream assumes it.  Graph and DistanceMatrix instances are
immutable after construction and safe to share across workers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import (
    DisconnectedError,
    NotAnEdgeError,
    ParameterError,
    SelfLoopError,
    VertexOutOfRangeError,
)


class Graph:
    """Immutable simple connected graph with sorted adjacency lists."""

    __slots__ = ("n", "adj", "edge_count", "adj_masks")

    def __init__(self, n: int, adj: tuple[tuple[int, ...], ...], edge_count: int):
        self.n = n
        self.adj = adj
        self.edge_count = edge_count
        # Neighbor bitmasks; the solver and predicates lean on these.
        self.adj_masks = tuple(sum(1 << w for w in nbrs) for nbrs in adj)

    def has_edge(self, u: int, v: int) -> bool:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise VertexOutOfRangeError(f"vertex pair ({u}, {v}) out of range 0..{self.n - 1}")
        return bool(self.adj_masks[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) pairs with u < v, lexicographically sorted."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def induced_subgraph(self, vertices) -> tuple["Graph", list[int]]:
        """Induced subgraph relabeled to 0..k-1 plus the old labels in new order.

        The vertex set must induce a connected subgraph.
        """
        old = sorted(vertices)
        index = {u: i for i, u in enumerate(old)}
        edges = [
            (index[u], index[v])
            for u in old
            for v in self.adj[u]
            if u < v and v in index
        ]
        return build_graph(len(old), edges), old

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


def build_graph(n: int, edges) -> Graph:
    """Validate and canonicalize an edge list into a Graph.

    Pairs may appear in either orientation and repeatedly; duplicates are
    merged.  Rejects self-loops, out-of-range endpoints, and disconnected
    input.
    """
    if n < 1:
        raise ParameterError(f"vertex count must be >= 1, got {n}")
    seen: set[tuple[int, int]] = set()
    for u, v in edges:
        if not (0 <= u < n):
            raise VertexOutOfRangeError(f"vertex {u} out of range 0..{n - 1} in edge ({u}, {v})")
        if not (0 <= v < n):
            raise VertexOutOfRangeError(f"vertex {v} out of range 0..{n - 1} in edge ({u}, {v})")
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        seen.add((u, v) if u < v else (v, u))
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in seen:
        nbrs[u].append(v)
        nbrs[v].append(u)
    adj = tuple(tuple(sorted(l)) for l in nbrs)

    # Everything downstream assumes connectivity, so reject it here.
    reached = [False] * n
    reached[0] = True
    queue = deque([0])
    count = 1
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if not reached[w]:
                reached[w] = True
                count += 1
                queue.append(w)
    if count != n:
        missing = reached.index(False)
        raise DisconnectedError(f"graph is disconnected: vertex {missing} unreachable from vertex 0")
    return Graph(n, adj, len(seen))


class DistanceMatrix:
    """All-pairs hop distances of a connected graph, as an n x n int array."""

    __slots__ = ("n", "d")

    def __init__(self, n: int, d: np.ndarray):
        self.n = n
        self.d = d

    def dist(self, u: int, v: int) -> int:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise VertexOutOfRangeError(f"vertex pair ({u}, {v}) out of range 0..{self.n - 1}")
        return int(self.d[u, v])

    def __repr__(self) -> str:
        return f"DistanceMatrix(n={self.n})"


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """Hop distances via one BFS per source vertex."""
    n = g.n
    d = np.zeros((n, n), dtype=np.int32)
    adj = g.adj
    for s in range(n):
        row = d[s]
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            du = dist[u]
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = du + 1
                    queue.append(w)
        row[:] = dist
    return DistanceMatrix(n, d)


def diameter(d: DistanceMatrix) -> int:
    return int(d.d.max())


def edge_distance(d: DistanceMatrix, e: tuple[int, int], f: tuple[int, int]) -> int:
    """min over endpoint pairs of their distance; both pairs must be edges."""
    for u, v in (e, f):
        if d.dist(u, v) != 1:
            raise NotAnEdgeError(f"({u}, {v}) is not an edge")
    (u, v), (x, y) = e, f
    m = d.d
    return int(min(m[u, x], m[u, y], m[v, x], m[v, y]))


def simplicial_vertices(g: Graph) -> frozenset[int]:
    """Vertices whose open neighborhood induces a clique."""
    out = []
    masks = g.adj_masks
    for v in range(g.n):
        nb = masks[v]
        ok = True
        for u in g.adj[v]:
            if nb & ~masks[u] & ~(1 << u):
                ok = False
                break
        if ok:
            out.append(v)
    return frozenset(out)


@dataclass(frozen=True)
class BlockDecomposition:
    """Biconnected components (as vertex sets) and the cut vertices."""

    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Blocks and cut vertices by iterative lowpoint traversal."""
    n = g.n
    if n == 1:
        return BlockDecomposition((frozenset({0}),), frozenset())
    adj = g.adj
    disc = [-1] * n
    low = [0] * n
    cuts: set[int] = set()
    blocks: list[frozenset[int]] = []
    edge_stack: list[tuple[int, int]] = []
    timer = 0

    # Explicit stack: (vertex, parent, iterator index into adj[vertex]).
    disc[0] = low[0] = timer
    timer += 1
    stack = [(0, -1, 0)]
    root_children = 0
    while stack:
        u, parent, i = stack.pop()
        if i < len(adj[u]):
            stack.append((u, parent, i + 1))
            w = adj[u][i]
            if disc[w] < 0:
                if u == 0:
                    root_children += 1
                edge_stack.append((u, w))
                disc[w] = low[w] = timer
                timer += 1
                stack.append((w, u, 0))
            elif w != parent and disc[w] < disc[u]:
                edge_stack.append((u, w))
                low[u] = min(low[u], disc[w])
        else:
            if parent >= 0:
                low[parent] = min(low[parent], low[u])
                if low[u] >= disc[parent]:
                    members: set[int] = set()
                    while True:
                        a, b = edge_stack.pop()
                        members.add(a)
                        members.add(b)
                        if (a, b) == (parent, u):
                            break
                    blocks.append(frozenset(members))
                    if parent != 0:
                        cuts.add(parent)
    if root_children > 1:
        cuts.add(0)
    return BlockDecomposition(tuple(blocks), frozenset(cuts))


def is_block_graph(g: Graph) -> bool:
    """True iff every block induces a complete subgraph."""
    masks = g.adj_masks
    for block in block_decomposition(g).blocks:
        for u in block:
            for v in block:
                if u < v and not masks[u] >> v & 1:
                    return False
    return True


def bfs_parents(g: Graph, v: int, variant: str = "canonical") -> list[int]:
    """Parent array of a BFS tree rooted at v (parent of the root is -1).

    canonical: parent = smallest-index neighbor in the previous level.
    greedy: leaf-minimizing tie-break, preferring candidate parents that
    have no child yet (smallest index among those); any BFS tree yields a
    valid geodesic cover, this one just tends to have fewer leaves.
    """
    if variant not in ("canonical", "greedy"):
        raise ParameterError(f"unknown BFS variant {variant!r}")
    n = g.n
    if not 0 <= v < n:
        raise VertexOutOfRangeError(f"vertex {v} out of range 0..{n - 1}")
    dist = [-1] * n
    dist[v] = 0
    order = [v]
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                order.append(w)
                queue.append(w)
    parent = [-1] * n
    if variant == "canonical":
        for u in range(n):
            if u == v:
                continue
            parent[u] = min(w for w in g.adj[u] if dist[w] == dist[u] - 1)
    else:
        has_child = [False] * n
        # Levels in index order so the tie-break is deterministic.
        for u in sorted(range(n), key=lambda x: (dist[x], x)):
            if u == v:
                continue
            cands = [w for w in g.adj[u] if dist[w] == dist[u] - 1]
            childless = [w for w in cands if not has_child[w]]
            p = min(childless) if childless else min(cands)
            parent[u] = p
            has_child[p] = True
    return parent


def bfs_leaf_count(g: Graph, v: int, variant: str = "canonical") -> int:
    """Number of leaves of the BFS tree rooted at v (see bfs_parents)."""
    parent = bfs_parents(g, v, variant)
    has_child = [False] * g.n
    for u in range(g.n):
        if parent[u] >= 0:
            has_child[parent[u]] = True
    return sum(1 for u in range(g.n) if not has_child[u])
