"""Exact and heuristic search for maximum general position sets.

gp(G) is a maximum independent set in the 3-uniform collinearity
hypergraph, found by branch and bound over vertices: branch on
include/exclude, keep per-pair conflict masks so candidate filtering is
incremental, prune when current + remaining <= best.  The branching
order is descending count of incident collinear triples, ties by index.

Timeout is a first-class outcome: the solver never claims exactness it
did not prove, it returns the best certified set found so far with
status "timeout".
"""

from __future__ import annotations

import random
import sys
import time
from dataclasses import dataclass

from .errors import TooLargeError
from .geodesic import GeneralPositionSet, TripleSet, verify_general_position
from .graph import Graph, simplicial_vertices

BRUTE_FORCE_MAX_N = 20
STATUS_EXACT = "exact"
STATUS_TIMEOUT = "timeout"

# Node budget per second assumed when a wall-clock limit must be turned
# into a deterministic node limit (deterministic mode).
NODES_PER_SECOND = 100_000


@dataclass(frozen=True)
class SolveResult:
    """Outcome of an exact search (gp or independence number)."""

    optimum: int
    witness: frozenset[int]
    nodes_explored: int
    status: str
    certificate: GeneralPositionSet | None = None

    @property
    def is_exact(self) -> bool:
        return self.status == STATUS_EXACT


class _Budget:
    """Wall-clock and/or node budget shared by one search."""

    __slots__ = ("deadline", "node_limit", "exhausted")

    def __init__(self, limit: float | None, node_limit: int | None):
        self.deadline = None if limit is None else time.monotonic() + limit
        self.node_limit = node_limit
        self.exhausted = False

    def spent(self, nodes: int) -> bool:
        if self.exhausted:
            return True
        if self.node_limit is not None and nodes >= self.node_limit:
            self.exhausted = True
        elif self.deadline is not None and nodes & 1023 == 1 and time.monotonic() > self.deadline:
            self.exhausted = True
        return self.exhausted


def _bits(mask: int):
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def _pair_block_masks(size: int, triples, index: list[int]) -> list[list[int]]:
    """pb[p][q] = bitmask of positions r such that {p, q, r} is a triple.

    index maps vertex id to position; every triple vertex must be mapped.
    """
    pb = [[0] * size for _ in range(size)]
    for x, y, z in triples:
        px, py, pz = index[x], index[y], index[z]
        bx, by, bz = 1 << px, 1 << py, 1 << pz
        pb[px][py] |= bz
        pb[py][px] |= bz
        pb[px][pz] |= by
        pb[pz][px] |= by
        pb[py][pz] |= bx
        pb[pz][py] |= bx
    return pb


def _filter_candidates(pb_row: list[int], chosen: int, cand: int) -> int:
    """Candidates that survive adding the vertex whose pb row is given."""
    out = 0
    m = cand
    while m:
        wbit = m & -m
        if not pb_row[wbit.bit_length() - 1] & chosen:
            out |= wbit
        m ^= wbit
    return out


def _blocked(pb, p: int, chosen: int) -> bool:
    """Whether position p completes a triple with two chosen positions."""
    row = pb[p]
    m = chosen
    while m:
        abit = m & -m
        if row[abit.bit_length() - 1] & chosen:
            return True
        m ^= abit
    return False


def _gp_branch_and_bound(pb, start_best: int, start_mask: int, budget: _Budget):
    """Largest conflict-free position mask under the triple conflicts pb."""
    n = len(pb)
    best_size = start_best
    best_mask = start_mask
    nodes = 0
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n + 1000))

    def rec(chosen: int, size: int, cand: int) -> None:
        nonlocal best_size, best_mask, nodes
        nodes += 1
        if budget.spent(nodes):
            return
        if size + cand.bit_count() <= best_size:
            return
        if not cand:
            best_size, best_mask = size, chosen
            return
        vbit = cand & -cand
        v = vbit.bit_length() - 1
        rec(chosen | vbit, size + 1, _filter_candidates(pb[v], chosen, cand ^ vbit))
        rec(chosen, size, cand ^ vbit)

    rec(0, 0, (1 << n) - 1)
    return best_size, best_mask, nodes


def _gp_completion_exists(pb, chosen: int, cand: int, need: int) -> bool:
    """Whether `need` further compatible positions can be drawn from cand."""
    if need <= 0:
        return True
    if cand.bit_count() < need:
        return False
    vbit = cand & -cand
    v = vbit.bit_length() - 1
    if _gp_completion_exists(
        pb, chosen | vbit, _filter_candidates(pb[v], chosen, cand ^ vbit), need - 1
    ):
        return True
    return _gp_completion_exists(pb, chosen, cand ^ vbit, need)


def _greedy_insert(per_vertex, order, chosen: set[int]) -> None:
    """Insert vertices in the given order when no stored triple completes."""
    for v in order:
        if v in chosen:
            continue
        for t in per_vertex[v]:
            others = [u for u in t if u != v]
            if others[0] in chosen and others[1] in chosen:
                break
        else:
            chosen.add(v)


def gp_greedy(g: Graph, t: TripleSet, seed: int) -> GeneralPositionSet:
    """Randomized greedy insertion plus single-swap local improvement.

    Deterministic for a fixed seed.
    """
    rng = random.Random(seed)
    order = list(range(g.n))
    rng.shuffle(order)
    rank = {v: i for i, v in enumerate(order)}
    per_vertex = t.per_vertex
    chosen: set[int] = set()
    _greedy_insert(per_vertex, order, chosen)
    improved = True
    while improved:
        improved = False
        for v in sorted(chosen, key=rank.__getitem__):
            trial = set(chosen)
            trial.discard(v)
            _greedy_insert(per_vertex, [u for u in order if u != v] + [v], trial)
            if len(trial) > len(chosen):
                chosen = trial
                improved = True
                break
    result = verify_general_position(t, chosen)
    assert result.certified
    return result


def gp_exact(
    g: Graph,
    t: TripleSet,
    limit: float | None = None,
    *,
    deterministic: bool = False,
    node_limit: int | None = None,
) -> SolveResult:
    """Exact gp(G) by branch and bound, or best-so-far on budget exhaustion.

    In deterministic mode the witness is the lexicographically smallest
    optimum set, and any wall-clock limit is converted to a node limit so
    repeated runs explore identical trees.
    """
    n = g.n
    if deterministic and limit is not None and node_limit is None:
        node_limit = int(limit * NODES_PER_SECOND)
        limit = None
    budget = _Budget(limit, node_limit)

    per_vertex = t.per_vertex
    free = frozenset(v for v in range(n) if not per_vertex[v])
    active = sorted(
        (v for v in range(n) if per_vertex[v]),
        key=lambda v: (-len(per_vertex[v]), v),
    )
    if not active:
        # No collinear triple at all: every vertex fits (complete graphs).
        witness = frozenset(range(n))
        return SolveResult(n, witness, 0, STATUS_EXACT, verify_general_position(t, witness))

    index = [-1] * n
    for p, v in enumerate(active):
        index[v] = p
    pb = _pair_block_masks(len(active), t.triples, index)

    # Seed the incumbent: greedy sweep plus the simplicial set, which is
    # always in general position.  Only the bound is affected, never the
    # optimum; both seeds are verified before use.
    incumbent = verify_general_position(t, simplicial_vertices(g)).vertices
    for seed in range(8):
        cand = gp_greedy(g, t, seed).vertices
        if len(cand) > len(incumbent):
            incumbent = cand
    start_mask = 0
    for v in incumbent:
        if index[v] >= 0:
            start_mask |= 1 << index[v]

    best_size, best_mask, nodes = _gp_branch_and_bound(
        pb, start_mask.bit_count(), start_mask, budget
    )
    status = STATUS_TIMEOUT if budget.exhausted else STATUS_EXACT
    vertices = free | {active[p] for p in _bits(best_mask)}
    optimum = len(vertices)
    if status == STATUS_EXACT and deterministic:
        vertices = _lex_min_witness(pb, index, free, optimum)
    cert = verify_general_position(t, vertices)
    assert cert.certified and len(vertices) == optimum
    return SolveResult(optimum, vertices, nodes, status, cert)


def _lex_min_witness(pb, index: list[int], free: frozenset[int], k: int) -> frozenset[int]:
    """Lexicographically smallest general position set of the optimum size k.

    Standard prefix fixing: accept a vertex whenever some size-k completion
    among strictly larger ids still exists.  Triple-free vertices are
    compatible with everything, so they are always accepted.
    """
    n = len(index)
    chosen_pos = 0
    taken: list[int] = []
    for v in range(n):
        if len(taken) == k:
            break
        need = k - len(taken) - 1
        if v in free:
            taken.append(v)
            continue
        p = index[v]
        if _blocked(pb, p, chosen_pos):
            continue
        cand = 0
        for u in range(v + 1, n):
            q = index[u]
            if q >= 0 and not _blocked(pb, q, chosen_pos) and not pb[q][p] & chosen_pos:
                cand |= 1 << q
        frees_ahead = sum(1 for u in free if u > v)
        if _gp_completion_exists(pb, chosen_pos | (1 << p), cand, need - frees_ahead):
            chosen_pos |= 1 << p
            taken.append(v)
    assert len(taken) == k
    return frozenset(taken)


def gp_brute_force(g: Graph, t: TripleSet) -> int:
    """Independent oracle: plain enumeration of all vertex subsets.

    Kept free of the branch-and-bound machinery on purpose; enforced to
    n <= 20.
    """
    n = g.n
    if n > BRUTE_FORCE_MAX_N:
        raise TooLargeError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}, got {n}")
    masks = [(1 << x) | (1 << y) | (1 << z) for x, y, z in t.triples]
    best = 0
    for s in range(1 << n):
        if s.bit_count() <= best:
            continue
        if all(s & m != m for m in masks):
            best = s.bit_count()
    return best


def _max_conflict_free(
    masks: list[int],
    *,
    limit: float | None = None,
    node_limit: int | None = None,
):
    """Largest set with no conflicting pair, under pairwise conflict masks.

    masks[v] lists the vertices incompatible with v (v's own bit ignored).
    Returns (size, vertex frozenset, nodes, exact).  Branching order is
    descending conflict degree, ties by index; used for the independence
    number, k-packings, and the edge-clique bound.
    """
    n = len(masks)
    if n == 0:
        return 0, frozenset(), 0, True
    budget = _Budget(limit, node_limit)
    order = sorted(range(n), key=lambda v: (-masks[v].bit_count(), v))
    index = [0] * n
    for p, v in enumerate(order):
        index[v] = p
    pmask = [0] * n
    for v in range(n):
        acc = 0
        for w in _bits(masks[v] & ~(1 << v)):
            acc |= 1 << index[w]
        pmask[index[v]] = acc

    # Greedy incumbent in branching order seeds the bound.
    best_mask = 0
    blocked = 0
    for p in range(n):
        pbit = 1 << p
        if not blocked & pbit:
            best_mask |= pbit
            blocked |= pmask[p] | pbit
    best_size = best_mask.bit_count()
    nodes = 0
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n + 1000))

    def rec(chosen: int, size: int, cand: int) -> None:
        nonlocal best_size, best_mask, nodes
        nodes += 1
        if budget.spent(nodes):
            return
        if size + cand.bit_count() <= best_size:
            return
        if not cand:
            best_size, best_mask = size, chosen
            return
        vbit = cand & -cand
        v = vbit.bit_length() - 1
        rec(chosen | vbit, size + 1, cand & ~pmask[v] & ~vbit)
        rec(chosen, size, cand ^ vbit)

    rec(0, 0, (1 << n) - 1)
    vertices = frozenset(order[p] for p in _bits(best_mask))
    return best_size, vertices, nodes, not budget.exhausted


def independence_number_exact(
    g: Graph,
    limit: float | None = None,
    *,
    deterministic: bool = False,
    node_limit: int | None = None,
) -> SolveResult:
    """alpha(G) with witness; same skeleton with pairwise conflicts."""
    if deterministic and limit is not None and node_limit is None:
        node_limit = int(limit * NODES_PER_SECOND)
        limit = None
    size, vertices, nodes, exact = _max_conflict_free(
        list(g.adj_masks), limit=limit, node_limit=node_limit
    )
    witness_mask = sum(1 << v for v in vertices)
    assert all(not g.adj_masks[v] & witness_mask for v in vertices)
    if exact and deterministic:
        vertices = _lex_min_independent(g, size)
    status = STATUS_EXACT if exact else STATUS_TIMEOUT
    return SolveResult(size, frozenset(vertices), nodes, status)


def _lex_min_independent(g: Graph, k: int) -> frozenset[int]:
    """Lexicographically smallest maximum independent set."""
    masks = g.adj_masks
    taken_mask = 0
    count = 0
    for v in range(g.n):
        if count == k:
            break
        if masks[v] & taken_mask:
            continue
        cand = 0
        for u in range(v + 1, g.n):
            if not masks[u] & (taken_mask | 1 << v):
                cand |= 1 << u
        if _indep_completion_exists(masks, cand, k - count - 1):
            taken_mask |= 1 << v
            count += 1
    assert count == k
    return frozenset(_bits(taken_mask))


def _indep_completion_exists(masks, cand: int, need: int) -> bool:
    if need <= 0:
        return True
    if cand.bit_count() < need:
        return False
    vbit = cand & -cand
    v = vbit.bit_length() - 1
    if _indep_completion_exists(masks, cand & ~masks[v] & ~vbit, need - 1):
        return True
    return _indep_completion_exists(masks, cand ^ vbit, need)
