"""Deterministic generators for the analyzed graph families.

Each generator fixes a canonical labeling so predicted witnesses, covers,
and edge certificates can be stored as index sets.  predicted_gp is set
only inside the range where the closed form is proved; outside it the
solver supplies ground truth.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .bounds import IsometricCover
from .errors import ParameterError
from .graph import Graph, all_pairs_distances, build_graph, edge_distance, simplicial_vertices


@dataclass(frozen=True)
class FamilyInstance:
    """A generated graph with its predicted value and stored certificates."""

    graph: Graph
    name: str
    predicted_gp: int | None = None
    predicted_witness: frozenset[int] | None = None
    cover: IsometricCover | None = None
    edge_certificate: tuple[tuple[int, int], ...] | None = None


def make_path(n: int) -> FamilyInstance:
    if n < 1:
        raise ParameterError(f"path needs n >= 1, got {n}")
    g = build_graph(n, [(i, i + 1) for i in range(n - 1)])
    if n == 1:
        return FamilyInstance(g, "path(1)", 1, frozenset({0}))
    return FamilyInstance(g, f"path({n})", 2, frozenset({0, n - 1}))


def make_cycle(n: int) -> FamilyInstance:
    if n < 3:
        raise ParameterError(f"cycle needs n >= 3, got {n}")
    g = build_graph(n, [(i, (i + 1) % n) for i in range(n)])
    if n == 3:
        predicted, witness = 3, frozenset({0, 1, 2})
    elif n == 4:
        predicted, witness = 2, frozenset({0, 1})
    else:
        # Three vertices splitting the cycle into near-equal arcs.
        predicted, witness = 3, frozenset({0, n // 3, (2 * n) // 3})
    return FamilyInstance(g, f"cycle({n})", predicted, witness)


def make_complete(n: int) -> FamilyInstance:
    if n < 1:
        raise ParameterError(f"complete graph needs n >= 1, got {n}")
    g = build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    return FamilyInstance(g, f"complete({n})", n, frozenset(range(n)))


def make_star(m: int) -> FamilyInstance:
    """K_{1,m}: center 0 and m leaves."""
    if m < 1:
        raise ParameterError(f"star needs m >= 1 leaves, got {m}")
    g = build_graph(m + 1, [(0, i) for i in range(1, m + 1)])
    if m == 1:
        return FamilyInstance(g, "star(1)", 2, frozenset({0, 1}))
    return FamilyInstance(g, f"star({m})", m, frozenset(range(1, m + 1)))


def make_theta(k: int, ell: int) -> FamilyInstance:
    """Two hubs A=0, B=1 joined by k internally disjoint paths of length ell.

    gp is k + 1 when ell >= 3 (hub A plus the neighbors of B); the closed
    form does not cover ell = 2, so no prediction is made there.
    """
    if k < 2:
        raise ParameterError(f"theta needs k >= 2 paths, got {k}")
    if ell < 2:
        raise ParameterError(f"theta needs paths of length >= 2, got {ell}")
    edges = []
    b_neighbors = []
    for j in range(k):
        base = 2 + j * (ell - 1)
        chain = [0] + list(range(base, base + ell - 1)) + [1]
        edges.extend(zip(chain, chain[1:]))
        b_neighbors.append(chain[-2])
    g = build_graph(2 + k * (ell - 1), edges)
    name = f"theta({k},{ell})"
    if ell >= 3:
        return FamilyInstance(g, name, k + 1, frozenset({0, *b_neighbors}))
    return FamilyInstance(g, name)


def make_complete_binary_tree(r: int) -> FamilyInstance:
    """Complete binary tree of depth r in heap order; gp = leaf count."""
    if r < 1:
        raise ParameterError(f"complete binary tree needs depth >= 1, got {r}")
    n = 2 ** (r + 1) - 1
    edges = [(i, c) for i in range(n) for c in (2 * i + 1, 2 * i + 2) if c < n]
    g = build_graph(n, edges)
    leaves = frozenset(range(2**r - 1, n))
    return FamilyInstance(g, f"cbt({r})", 2**r, leaves)


def make_glued_binary_tree(r: int) -> FamilyInstance:
    """Two depth-r complete binary trees with leaves pairwise identified.

    Layout: tree-one internals 0..2^r-2 in heap order, quasi-leaves
    2^r-1..2^(r+1)-2, tree-two internals after that, mirrored so both
    trees attach to the quasi-leaves in the same left-to-right order.
    """
    if r < 2:
        raise ParameterError(f"glued binary tree needs r >= 2, got {r}")
    a = 2**r - 1
    leaves = 2**r
    offset = a + leaves
    edges = []
    for i in range(a):
        for c in (2 * i + 1, 2 * i + 2):
            edges.append((i, c))  # quasi-leaf ids coincide with heap ids
            target = offset + c if c < a else c
            edges.append((offset + i, target))
    g = build_graph(3 * 2**r - 2, edges)
    assert g.n == 3 * 2**r - 2
    quasi = frozenset(range(a, a + leaves))
    return FamilyInstance(g, f"gt({r})", 2**r, quasi)


def make_petersen() -> FamilyInstance:
    """Petersen graph: outer 5-cycle 0-4, inner pentagram 5-9, spokes i to i+5.

    Stores the two disjoint isometric 5-cycles as a cover and the first
    three edges pairwise at distance 2 as the edge certificate; the six
    endpoints of those edges form the predicted gp-set.
    """
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((i, i + 5))
        edges.append((5 + i, 5 + (i + 2) % 5))
    g = build_graph(10, edges)
    d = all_pairs_distances(g)
    all_edges = g.edges()
    certificate = None
    for i in range(len(all_edges)):
        for j in range(i + 1, len(all_edges)):
            if edge_distance(d, all_edges[i], all_edges[j]) != 2:
                continue
            for k in range(j + 1, len(all_edges)):
                if (
                    edge_distance(d, all_edges[i], all_edges[k]) == 2
                    and edge_distance(d, all_edges[j], all_edges[k]) == 2
                ):
                    certificate = (all_edges[i], all_edges[j], all_edges[k])
                    break
            if certificate:
                break
        if certificate:
            break
    assert certificate is not None
    witness = frozenset(v for e in certificate for v in e)
    cover = IsometricCover(
        (frozenset(range(5)), frozenset(range(5, 10))), ("cycle", "cycle")
    )
    return FamilyInstance(g, "petersen", 6, witness, cover, certificate)


def make_gn_counterexample(n: int) -> FamilyInstance:
    """Clique X with pendant layers Y, Z and an apex w adjacent to all of Z.

    The BFS tree rooted at w has only n leaves while Y union Z is a
    general position set of size 2n, so that set is stored as the witness
    with no exact prediction.
    """
    if n < 2:
        raise ParameterError(f"counterexample family needs n >= 2, got {n}")
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for i in range(n):
        edges.append((i, n + i))       # x_i - y_i
        edges.append((i, 2 * n + i))   # x_i - z_i
        edges.append((3 * n, 2 * n + i))  # w - z_i
    g = build_graph(3 * n + 1, edges)
    return FamilyInstance(g, f"gn({n})", None, frozenset(range(n, 3 * n)))


def make_spider_triangles(n: int, s: int) -> FamilyInstance:
    """Star with each edge subdivided s times and a private triangle per leaf.

    The n triangle edges whose endpoints have degree 2 are pairwise at
    distance equal to the diameter; they are stored as the edge
    certificate for the distant-edge bound.
    """
    if n < 2:
        raise ParameterError(f"spider needs n >= 2 arms, got {n}")
    if s < 1:
        raise ParameterError(f"spider needs s >= 1 subdivisions, got {s}")
    edges = []
    certificate = []
    for j in range(n):
        base = 1 + j * (s + 3)
        leaf = base + s
        chain = [0] + list(range(base, leaf + 1))
        edges.extend(zip(chain, chain[1:]))
        t1, t2 = leaf + 1, leaf + 2
        edges.extend([(leaf, t1), (leaf, t2), (t1, t2)])
        certificate.append((t1, t2))
    g = build_graph(1 + n * (s + 3), edges)
    return FamilyInstance(g, f"spider({n},{s})", None, None, None, tuple(certificate))


def make_random_block_graph(seed: int, blocks: int, max_block_size: int) -> FamilyInstance:
    """Reproducible random tree of cliques; gp equals the simplicial count."""
    if blocks < 1:
        raise ParameterError(f"need at least one block, got {blocks}")
    if max_block_size < 2:
        raise ParameterError(f"max block size must be >= 2, got {max_block_size}")
    rng = random.Random(seed)
    size = rng.randint(2, max_block_size)
    members = list(range(size))
    edges = [(u, v) for u in members for v in members if u < v]
    count = size
    for _ in range(blocks - 1):
        attach = rng.randrange(count)
        size = rng.randint(2, max_block_size)
        fresh = list(range(count, count + size - 1))
        members = [attach] + fresh
        edges.extend((u, v) for u in members for v in members if u < v)
        count += size - 1
    g = build_graph(count, edges)
    simp = simplicial_vertices(g)
    name = f"block-random(seed={seed},blocks={blocks},max={max_block_size})"
    return FamilyInstance(g, name, len(simp), simp)
