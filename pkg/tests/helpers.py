"""Seeded instance generators and independent oracles for the test suite.

The oracles here deliberately avoid the package's search machinery:
independence by subset enumeration, betweenness by explicit geodesic
enumeration, set cover and packings by combination sweeps.
"""

from __future__ import annotations

import random
from itertools import combinations

from genpos import DistanceMatrix, Graph, build_graph


def random_tree(seed: int, n: int) -> Graph:
    rng = random.Random(seed)
    return build_graph(n, [(rng.randrange(i), i) for i in range(1, n)])


def random_connected_graph(seed: int, n: int, p: float) -> Graph:
    """Random spanning tree plus each remaining pair with probability p."""
    rng = random.Random(seed)
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v))
    return build_graph(n, edges)


def leaf_count(g: Graph) -> int:
    return sum(1 for v in range(g.n) if g.degree(v) == 1)


def alpha_by_enumeration(g: Graph) -> int:
    """Independence number by checking every subset (n <= 20)."""
    assert g.n <= 20
    best = 0
    for s in range(1 << g.n):
        if s.bit_count() <= best:
            continue
        if all(not (g.adj_masks[v] & s) for v in range(g.n) if s >> v & 1):
            best = s.bit_count()
    return best


def all_geodesics(g: Graph, d: DistanceMatrix, x: int, z: int) -> list[tuple[int, ...]]:
    """Every shortest x,z-path, by DFS over the shortest-path DAG."""
    paths = []
    stack = [(x, (x,))]
    while stack:
        u, path = stack.pop()
        if u == z:
            paths.append(path)
            continue
        for w in g.adj[u]:
            if d.dist(x, w) == d.dist(x, u) + 1 and d.dist(w, z) == d.dist(u, z) - 1:
                stack.append((w, path + (w,)))
    return paths


def triples_by_geodesic_enumeration(g: Graph, d: DistanceMatrix) -> set[tuple[int, int, int]]:
    """Normalized collinear triples from explicit per-pair geodesic listings."""
    out = set()
    for x in range(g.n):
        for z in range(x + 1, g.n):
            for path in all_geodesics(g, d, x, z):
                for y in path[1:-1]:
                    out.add((x, y, z))
    return out


def k_packing_by_enumeration(d: DistanceMatrix, k: int) -> int:
    """Maximum k-packing size by subset enumeration (n <= 20)."""
    assert d.n <= 20
    best = 0
    for size in range(d.n, 0, -1):
        if size <= best:
            break
        for combo in combinations(range(d.n), size):
            if all(d.dist(u, v) > k for u, v in combinations(combo, 2)):
                best = size
                break
        if best:
            break
    return best


def min_geodesic_cover_by_enumeration(g: Graph, d: DistanceMatrix, v: int) -> int:
    """Minimum number of geodesics from v covering V, by combination sweep."""
    sets = set()
    for u in range(g.n):
        for path in all_geodesics(g, d, v, u):
            sets.add(frozenset(path))
    sets = list(sets)
    universe = frozenset(range(g.n))
    for size in range(1, len(sets) + 1):
        for combo in combinations(sets, size):
            if frozenset().union(*combo) == universe:
                return size
    raise AssertionError("graph not coverable by its own geodesics")
