"""Lower and upper bounds on the general position number, with certificates.

Every bound here is backed by a certificate that can be re-verified from
its serialized form: vertex sets for packings and simplicial bounds, edge
sets for the distant-edge bound, and explicit part lists for covers.
Exact sub-searches are size-capped; greedy fallbacks are labeled as such
in the certificate so a heuristic value is never mistaken for a proved
one.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field

from .errors import (
    DiameterTooSmallError,
    EmptySetError,
    InvalidCoverError,
    TooLargeError,
)
from .geodesic import GeneralPositionSet, TripleSet, collinear_triples, verify_general_position
from .graph import (
    DistanceMatrix,
    Graph,
    all_pairs_distances,
    bfs_leaf_count,
    bfs_parents,
    diameter,
    edge_distance,
    simplicial_vertices,
)
from . import solver

IP_EXACT_MAX_N = 30
PACKING_EXACT_MAX_N = 40
EDGE_CLIQUE_EXACT_MAX_EDGES = 40
MAX_GEODESIC_ENUMERATION = 200_000


def is_isometric_subgraph(g: Graph, d: DistanceMatrix, h) -> bool:
    """True iff the subgraph induced by h is connected and distance-preserving."""
    hs = sorted(set(h))
    if not hs:
        raise EmptySetError("isometric check on an empty vertex set")
    members = set(hs)
    for s in hs:
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if w in members and w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        for v in hs:
            if v not in dist or dist[v] != d.dist(s, v):
                return False
    return True


@dataclass(frozen=True)
class IsometricCover:
    """Vertex sets claimed to induce isometric subgraphs covering the graph.

    tags label parts as "path", "cycle", or None (general); tagged parts
    are scored by the known closed forms instead of a recursive solve.
    """

    parts: tuple[frozenset[int], ...]
    tags: tuple[str | None, ...] = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.tags is None:
            object.__setattr__(self, "tags", (None,) * len(self.parts))
        if len(self.tags) != len(self.parts):
            raise InvalidCoverError("one tag per part required")


def _induced_shape(g: Graph, part: frozenset[int]) -> tuple[int, list[int]]:
    edges = sum(1 for u in part for v in g.adj[u] if v in part and u < v)
    degrees = [sum(1 for v in g.adj[u] if v in part) for u in sorted(part)]
    return edges, degrees


def validate_cover(g: Graph, d: DistanceMatrix, cover: IsometricCover) -> None:
    """Raise InvalidCoverError unless the cover is usable for the upper bound."""
    if not cover.parts:
        raise InvalidCoverError("cover has no parts")
    covered: set[int] = set()
    for i, (part, tag) in enumerate(zip(cover.parts, cover.tags)):
        if not part:
            raise InvalidCoverError(f"part {i} is empty")
        if not is_isometric_subgraph(g, d, part):
            raise InvalidCoverError(f"part {i} is not isometric in the graph")
        if tag is not None:
            edges, degrees = _induced_shape(g, part)
            k = len(part)
            if tag == "path":
                if edges != k - 1 or (k > 1 and max(degrees) > 2):
                    raise InvalidCoverError(f"part {i} tagged path does not induce a path")
            elif tag == "cycle":
                if k < 3 or edges != k or degrees != [2] * k:
                    raise InvalidCoverError(f"part {i} tagged cycle does not induce a cycle")
            else:
                raise InvalidCoverError(f"part {i} has unknown tag {tag!r}")
        covered |= part
    if covered != set(range(g.n)):
        missing = min(set(range(g.n)) - covered)
        raise InvalidCoverError(f"cover misses vertex {missing}")


def _part_score(g: Graph, t: TripleSet, part: frozenset[int], tag: str | None,
                limit: float | None) -> int:
    k = len(part)
    if tag == "path":
        return 2 if k >= 2 else 1
    if tag == "cycle":
        return 2 if k == 4 else 3
    # General part: since the part is isometric, its collinear triples are
    # exactly the global triples lying inside it.
    sub, old = g.induced_subgraph(part)
    index = {u: i for i, u in enumerate(old)}
    sub_triples = TripleSet(
        sub.n,
        frozenset(
            (index[x], index[y], index[z]) if index[x] < index[z]
            else (index[z], index[y], index[x])
            for x, y, z in t.triples
            if x in index and y in index and z in index
        ),
    )
    res = solver.gp_exact(sub, sub_triples, limit)
    # A timed-out sub-solve cannot certify the part's gp; fall back to the
    # trivial upper bound so the cover bound stays valid.
    return res.optimum if res.is_exact else sub.n


def cover_lemma_bound(g: Graph, t: TripleSet, cover: IsometricCover,
                      d: DistanceMatrix | None = None,
                      limit: float | None = None) -> int:
    """Upper bound: sum of per-part gp values over a validated isometric cover."""
    d = d if d is not None else all_pairs_distances(g)
    validate_cover(g, d, cover)
    return sum(_part_score(g, t, part, tag, limit)
               for part, tag in zip(cover.parts, cover.tags))


def _maximal_geodesic_masks(g: Graph, d: DistanceMatrix, v: int) -> list[int]:
    """Vertex masks of all maximal geodesics starting at v (DAG sink paths)."""
    n = g.n
    succ = [
        [w for w in g.adj[u] if d.dist(v, w) == d.dist(v, u) + 1]
        for u in range(n)
    ]
    masks: list[int] = []
    stack = [(v, 1 << v)]
    while stack:
        u, mask = stack.pop()
        if not succ[u]:
            masks.append(mask)
            if len(masks) > MAX_GEODESIC_ENUMERATION:
                raise TooLargeError(
                    f"more than {MAX_GEODESIC_ENUMERATION} maximal geodesics from vertex {v}"
                )
            continue
        for w in succ[u]:
            stack.append((w, mask | 1 << w))
    return masks


def _drop_dominated(masks: list[int]) -> list[int]:
    uniq = sorted(set(masks), key=lambda m: -m.bit_count())
    kept: list[int] = []
    for m in uniq:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return kept


def _greedy_set_cover(universe: int, masks: list[int]) -> list[int]:
    chosen: list[int] = []
    covered = 0
    while covered != universe:
        best = max(masks, key=lambda m: (m & ~covered).bit_count())
        if not best & ~covered:
            raise AssertionError("set cover stalled; universe not coverable")
        chosen.append(best)
        covered |= best
    return chosen


def _min_set_cover(universe: int, masks: list[int]) -> list[int]:
    """Exact minimum set cover by branch and bound over uncovered elements."""
    masks = _drop_dominated(masks)
    best = _greedy_set_cover(universe, masks)
    max_size = max(m.bit_count() for m in masks)
    covering: dict[int, list[int]] = {}
    for e in solver._bits(universe):
        covering[e] = [m for m in masks if m >> e & 1]

    def rec(covered: int, chosen: list[int]) -> None:
        nonlocal best
        remaining = universe & ~covered
        if not remaining:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + (remaining.bit_count() + max_size - 1) // max_size >= len(best):
            return
        e = min(solver._bits(remaining), key=lambda x: len(covering[x]))
        for m in sorted(covering[e], key=lambda m: -(m & remaining).bit_count()):
            chosen.append(m)
            rec(covered | m, chosen)
            chosen.pop()

    rec(0, [])
    return best


def geodesic_cover_from_vertex(g: Graph, d: DistanceMatrix, v: int,
                               mode: str = "exact") -> list[frozenset[int]]:
    """A cover of V(G) by geodesics starting at v, minimum in exact mode.

    Greedy mode returns the best of greedy set cover and the two BFS-tree
    root-to-leaf covers, so its size never exceeds the BFS leaf count.
    """
    if mode not in ("exact", "greedy"):
        raise ValueError(f"mode must be exact or greedy, got {mode!r}")
    if mode == "exact" and g.n > IP_EXACT_MAX_N:
        raise TooLargeError(f"exact geodesic cover limited to n <= {IP_EXACT_MAX_N}, got {g.n}")
    universe = (1 << g.n) - 1
    masks = _drop_dominated(_maximal_geodesic_masks(g, d, v))
    if mode == "exact":
        chosen = _min_set_cover(universe, masks)
    else:
        chosen = _greedy_set_cover(universe, masks)
        for variant in ("canonical", "greedy"):
            alt = _bfs_path_cover(g, v, variant)
            if len(alt) < len(chosen):
                chosen = alt
    return [frozenset(solver._bits(m)) for m in chosen]


def _bfs_path_cover(g: Graph, v: int, variant: str) -> list[int]:
    """Root-to-leaf paths of a BFS tree at v, as vertex masks (all geodesics)."""
    parent = bfs_parents(g, v, variant)
    has_child = [False] * g.n
    for u in range(g.n):
        if parent[u] >= 0:
            has_child[parent[u]] = True
    covers = []
    for leaf in range(g.n):
        if not has_child[leaf]:
            mask = 0
            u = leaf
            while u >= 0:
                mask |= 1 << u
                u = parent[u]
            covers.append(mask)
    return covers


def ip_from_vertex(g: Graph, d: DistanceMatrix, v: int, mode: str = "exact") -> int:
    """Minimum (exact) or heuristic number of geodesics from v covering V(G)."""
    return len(geodesic_cover_from_vertex(g, d, v, mode))


def vertex_path_bound_check(g: Graph, r: GeneralPositionSet,
                            d: DistanceMatrix | None = None) -> bool:
    """Check |R| <= ip(v,G) + 1 for every member v of a certified set."""
    assert r.certified
    d = d if d is not None else all_pairs_distances(g)
    size = len(r.vertices)
    return all(size <= ip_from_vertex(g, d, v, "exact") + 1 for v in r.vertices)


def bfs_leaf_bound_check(g: Graph, r: GeneralPositionSet) -> bool:
    """Certificate check: |R| <= 1 + min BFS leaf count over members of R.

    Valid only with the minimum over vertices of the set itself; the
    minimum over all vertices fails on the clique-with-pendants family.
    """
    assert r.certified
    return len(r.vertices) <= 1 + min(bfs_leaf_count(g, v) for v in r.vertices)


def k_packing_number(d: DistanceMatrix, k: int, mode: str = "exact") -> tuple[int, frozenset[int]]:
    """Maximum (exact) or maximal-greedy set with pairwise distance > k."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if mode not in ("exact", "greedy"):
        raise ValueError(f"mode must be exact or greedy, got {mode!r}")
    n = d.n
    if mode == "exact":
        if n > PACKING_EXACT_MAX_N:
            raise TooLargeError(f"exact k-packing limited to n <= {PACKING_EXACT_MAX_N}, got {n}")
        masks = [
            sum(1 << v for v in range(n) if v != u and d.dist(u, v) <= k)
            for u in range(n)
        ]
        size, vertices, _, exact = solver._max_conflict_free(masks)
        assert exact
        return size, vertices
    chosen: list[int] = []
    for u in range(n):
        if all(d.dist(u, w) > k for w in chosen):
            chosen.append(u)
    return len(chosen), frozenset(chosen)


@dataclass(frozen=True)
class PackingCertificate:
    k: int
    vertices: frozenset[int]
    mode: str

    def to_dict(self) -> dict:
        return {"k": self.k, "set": sorted(self.vertices), "mode": self.mode}


def packing_lower_bound(g: Graph, d: DistanceMatrix) -> tuple[int, PackingCertificate]:
    """gp(G) >= alpha_k(G) at the least k with diam <= 2k + 1.

    alpha_k is non-increasing in k, so that k gives the best bound of the
    family.  Falls back to a greedy packing, flagged in the certificate,
    when the instance is too large for the exact search.
    """
    k = max(1, diameter(d) // 2)
    try:
        value, vertices = k_packing_number(d, k, "exact")
        mode = "exact"
    except TooLargeError:
        value, vertices = k_packing_number(d, k, "greedy")
        mode = "greedy"
    return value, PackingCertificate(k, vertices, mode)


def distant_edge_bound(g: Graph, d: DistanceMatrix, mode: str = "exact") -> tuple[int, tuple[tuple[int, int], ...]]:
    """gp(G) >= 2|F| for F a set of edges pairwise at distance diam(G).

    Exact mode solves maximum clique in the auxiliary graph on edges whose
    adjacency is "edge distance equals the diameter".
    """
    if mode not in ("exact", "greedy"):
        raise ValueError(f"mode must be exact or greedy, got {mode!r}")
    k = diameter(d)
    if k < 2:
        raise DiameterTooSmallError(f"distant-edge bound needs diameter >= 2, got {k}")
    edges = g.edges()
    m = len(edges)
    if mode == "exact":
        if m > EDGE_CLIQUE_EXACT_MAX_EDGES:
            raise TooLargeError(
                f"exact edge-clique search limited to {EDGE_CLIQUE_EXACT_MAX_EDGES} edges, got {m}"
            )
        # Clique in the auxiliary graph = conflict-free set under the
        # complement relation.
        masks = [
            sum(1 << j for j in range(m) if j != i and edge_distance(d, edges[i], edges[j]) != k)
            for i in range(m)
        ]
        _, idxs, _, exact = solver._max_conflict_free(masks)
        assert exact
        chosen = tuple(sorted(edges[i] for i in idxs))
    else:
        picked: list[tuple[int, int]] = []
        for e in edges:
            if all(edge_distance(d, e, f) == k for f in picked):
                picked.append(e)
        chosen = tuple(picked)
    return 2 * len(chosen), chosen


def diametral_violation_triple(d: DistanceMatrix, k: int) -> tuple[int, int, int] | None:
    """The converse construction: a k-packing {x, y, z} that is not in
    general position, taken on a geodesic between vertices at distance
    2k + 2.  None when diam(G) < 2k + 2 (no such triple exists)."""
    n = d.n
    target = 2 * k + 2
    if diameter(d) < target:
        return None
    for x in range(n):
        for z in range(x + 1, n):
            if d.dist(x, z) == target:
                for y in range(n):
                    if d.dist(x, y) == k + 1 and d.dist(y, z) == k + 1:
                        return (x, y, z)
    raise AssertionError("distance range must be contiguous on a connected graph")


@dataclass
class BoundEntry:
    """One named bound: a value with its certificate, or a skip reason."""

    value: int | None
    certificate: dict | None = None
    note: str | None = None

    def to_dict(self) -> dict:
        out: dict = {"value": self.value}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.note is not None:
            out["note"] = self.note
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "BoundEntry":
        return cls(data.get("value"), data.get("certificate"), data.get("note"))


@dataclass
class BoundsReport:
    """Aggregated lower/upper bounds with the exact value when computed."""

    lower: dict[str, BoundEntry] = field(default_factory=dict)
    upper: dict[str, BoundEntry] = field(default_factory=dict)
    exact: int | None = None
    witness: GeneralPositionSet | None = None
    checks: dict[str, bool] = field(default_factory=dict)

    def best_lower(self) -> int | None:
        values = [e.value for e in self.lower.values() if e.value is not None]
        return max(values) if values else None

    def best_upper(self) -> int | None:
        values = [e.value for e in self.upper.values() if e.value is not None]
        return min(values) if values else None

    def to_dict(self) -> dict:
        return {
            "lower": {k: e.to_dict() for k, e in self.lower.items()},
            "upper": {k: e.to_dict() for k, e in self.upper.items()},
            "exact": self.exact,
            "witness": sorted(self.witness.vertices) if self.witness is not None else None,
            "checks": self.checks,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BoundsReport":
        witness = data.get("witness")
        return cls(
            lower={k: BoundEntry.from_dict(v) for k, v in data["lower"].items()},
            upper={k: BoundEntry.from_dict(v) for k, v in data["upper"].items()},
            exact=data.get("exact"),
            witness=None if witness is None else GeneralPositionSet(frozenset(witness), True),
            checks=dict(data.get("checks", {})),
        )


def bounds_report(
    g: Graph,
    budget: float | None = None,
    covers: list[IsometricCover] | None = None,
    deterministic: bool = False,
) -> BoundsReport:
    """Run the full bound portfolio and, within budget, the exact solver.

    Partial results are allowed: any bound that does not apply or exceeds
    its exact-size limit is present with a skip note instead of a value.
    """
    started = time.monotonic()
    report = BoundsReport()
    d = all_pairs_distances(g)
    t = collinear_triples(d)
    diam = diameter(d)

    simp = simplicial_vertices(g)
    cert = verify_general_position(t, simp)
    assert cert.certified
    report.lower["simplicial"] = BoundEntry(len(simp), {"set": sorted(simp)})

    best_greedy = max((gp_greedy_sweep(g, t)), key=len)
    report.lower["greedy"] = BoundEntry(len(best_greedy), {"set": sorted(best_greedy)})

    value, pc = packing_lower_bound(g, d)
    note = "greedy fallback (instance too large for exact packing)" if pc.mode == "greedy" else None
    report.lower["packing"] = BoundEntry(value, pc.to_dict(), note)

    if diam >= 2:
        try:
            value, edges = distant_edge_bound(g, d, "exact")
            cert_d = {"edges": [list(e) for e in edges], "mode": "exact"}
            report.lower["distant_edges"] = BoundEntry(value, cert_d)
        except TooLargeError:
            value, edges = distant_edge_bound(g, d, "greedy")
            cert_d = {"edges": [list(e) for e in edges], "mode": "greedy"}
            report.lower["distant_edges"] = BoundEntry(value, cert_d, "greedy fallback")
    else:
        report.lower["distant_edges"] = BoundEntry(None, None, "skipped: diameter < 2")

    report.upper["order"] = BoundEntry(g.n)

    best = None
    for v in range(g.n):
        for variant in ("canonical", "greedy"):
            leaves = bfs_leaf_count(g, v, variant)
            if best is None or leaves < best[2]:
                best = (v, variant, leaves)
    v, variant, leaves = best
    parts = [sorted(solver._bits(m)) for m in _bfs_path_cover(g, v, variant)]
    report.upper["bfs_cover"] = BoundEntry(
        2 * leaves, {"vertex": v, "variant": variant, "leaves": leaves, "parts": parts}
    )

    if g.n <= IP_EXACT_MAX_N:
        best_ip = None
        for v in range(g.n):
            cover = geodesic_cover_from_vertex(g, d, v, "exact")
            if best_ip is None or len(cover) < len(best_ip[1]):
                best_ip = (v, cover)
        v, cover = best_ip
        report.upper["ip_cover"] = BoundEntry(
            2 * len(cover), {"vertex": v, "parts": [sorted(p) for p in cover]}
        )
    else:
        report.upper["ip_cover"] = BoundEntry(None, None, f"skipped: n > {IP_EXACT_MAX_N}")

    for i, cover in enumerate(covers or []):
        validate_cover(g, d, cover)
        scores = [
            _part_score(g, t, part, tag, None)
            for part, tag in zip(cover.parts, cover.tags)
        ]
        report.upper[f"user_cover_{i}"] = BoundEntry(
            sum(scores),
            {
                "parts": [sorted(p) for p in cover.parts],
                "tags": list(cover.tags),
                "scores": scores,
            },
        )

    remaining = None if budget is None else max(0.0, budget - (time.monotonic() - started))
    res = solver.gp_exact(g, t, remaining, deterministic=deterministic)
    if res.is_exact:
        report.exact = res.optimum
        report.witness = res.certificate
        report.checks["bfs_leaf_bound"] = bfs_leaf_bound_check(g, res.certificate)
        if g.n <= IP_EXACT_MAX_N:
            report.checks["vertex_path_bound"] = vertex_path_bound_check(g, res.certificate, d)
        lo, hi = report.best_lower(), report.best_upper()
        assert lo <= res.optimum <= hi
    else:
        report.lower["solver_best"] = BoundEntry(
            res.optimum, {"set": sorted(res.witness)}, "timeout: best certified set so far"
        )
    return report


def gp_greedy_sweep(g: Graph, t: TripleSet, seeds: range = range(8)):
    """Greedy witnesses across a seed sweep (deterministic)."""
    return [solver.gp_greedy(g, t, s).vertices for s in seeds]
