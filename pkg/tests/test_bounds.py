import pytest

from genpos import (
    DiameterTooSmallError,
    EmptySetError,
    InvalidCoverError,
    IsometricCover,
    TooLargeError,
    all_pairs_distances,
    bfs_leaf_bound_check,
    bfs_leaf_count,
    bounds_report,
    build_graph,
    collinear_triples,
    cover_lemma_bound,
    diameter,
    diametral_violation_triple,
    distant_edge_bound,
    geodesic_cover_from_vertex,
    gp_exact,
    ip_from_vertex,
    is_isometric_subgraph,
    k_packing_number,
    make_complete,
    make_cycle,
    make_gn_counterexample,
    make_path,
    make_petersen,
    make_random_block_graph,
    make_spider_triangles,
    make_star,
    independence_number_exact,
    packing_lower_bound,
    simplicial_vertices,
    validate_cover,
    verify_general_position,
    vertex_path_bound_check,
)
from .helpers import (
    k_packing_by_enumeration,
    leaf_count,
    min_geodesic_cover_by_enumeration,
    random_connected_graph,
    random_tree,
)


def _dt(g):
    d = all_pairs_distances(g)
    return d, collinear_triples(d)


# ---------------------------------------------------------------- isometry


def test_geodesic_vertex_set_is_isometric():
    g = make_path(6).graph
    d = all_pairs_distances(g)
    assert is_isometric_subgraph(g, d, {1, 2, 3})


def test_petersen_outer_cycle_is_isometric():
    g = make_petersen().graph
    d = all_pairs_distances(g)
    assert is_isometric_subgraph(g, d, set(range(5)))
    assert is_isometric_subgraph(g, d, set(range(5, 10)))


def test_long_cycle_arc_not_isometric():
    # Five consecutive vertices of C_6 induce a path whose internal 0..4
    # distance is 4, but the cycle closes it to 2.
    g = make_cycle(6).graph
    d = all_pairs_distances(g)
    assert not is_isometric_subgraph(g, d, {0, 1, 2, 3, 4})


def test_isometric_check_uses_induced_subgraph():
    # With the chord, {0,1,2,3} induces a 4-cycle whose internal distances
    # all match the host graph, so the induced-subgraph check accepts it.
    g = build_graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
    d = all_pairs_distances(g)
    assert is_isometric_subgraph(g, d, {0, 1, 2, 3})
    assert not is_isometric_subgraph(g, d, {1, 2, 3, 4, 5})


def test_isometric_check_rejects_empty():
    g = make_path(3).graph
    d = all_pairs_distances(g)
    with pytest.raises(EmptySetError):
        is_isometric_subgraph(g, d, set())


def test_disconnected_induced_subset_not_isometric():
    g = make_path(5).graph
    d = all_pairs_distances(g)
    assert not is_isometric_subgraph(g, d, {0, 4})


# ---------------------------------------------------------------- covers


def test_cover_lemma_petersen_two_cycles():
    inst = make_petersen()
    d, t = _dt(inst.graph)
    assert cover_lemma_bound(inst.graph, t, inst.cover, d) == 6


def test_cover_lemma_path_self_cover():
    g = make_path(7).graph
    d, t = _dt(g)
    cover = IsometricCover((frozenset(range(7)),), ("path",))
    assert cover_lemma_bound(g, t, cover, d) == 2


def test_cover_lemma_geodesic_cover_gives_twice_count():
    g = make_star(4).graph
    d, t = _dt(g)
    parts = tuple(frozenset({0, leaf}) for leaf in range(1, 5))
    cover = IsometricCover(parts, ("path",) * 4)
    assert cover_lemma_bound(g, t, cover, d) == 8


def test_cover_lemma_c3_and_c4_part_scores():
    g = make_cycle(3).graph
    d, t = _dt(g)
    assert cover_lemma_bound(g, t, IsometricCover((frozenset(range(3)),), ("cycle",)), d) == 3
    g4 = make_cycle(4).graph
    d4, t4 = _dt(g4)
    assert cover_lemma_bound(g4, t4, IsometricCover((frozenset(range(4)),), ("cycle",)), d4) == 2


def test_cover_lemma_general_part_solves_subgraph():
    g = make_petersen().graph
    d, t = _dt(g)
    cover = IsometricCover((frozenset(range(5)), frozenset(range(5, 10))))
    # untagged cycles are solved exactly: gp(C_5) = 3 each
    assert cover_lemma_bound(g, t, cover, d) == 6


def test_invalid_cover_incomplete_union():
    g = make_path(5).graph
    d, t = _dt(g)
    cover = IsometricCover((frozenset({0, 1, 2}),), ("path",))
    with pytest.raises(InvalidCoverError):
        cover_lemma_bound(g, t, cover, d)


def test_invalid_cover_non_isometric_part():
    g = make_cycle(6).graph
    d, t = _dt(g)
    cover = IsometricCover((frozenset({0, 1, 2, 3, 4}), frozenset({4, 5, 0})))
    with pytest.raises(InvalidCoverError):
        cover_lemma_bound(g, t, cover, d)


def test_invalid_cover_wrong_tag_shape():
    g = make_star(3).graph
    d, t = _dt(g)
    cover = IsometricCover((frozenset(range(4)),), ("path",))
    with pytest.raises(InvalidCoverError):
        validate_cover(g, d, cover)


def test_cover_bound_dominates_exact_on_random_graphs():
    for seed in range(10):
        g = random_connected_graph(3000 + seed, 6 + seed % 5, 0.35)
        d, t = _dt(g)
        exact = gp_exact(g, t).optimum
        cover = IsometricCover(
            tuple(frozenset(p) for p in (sorted(q) for q in _bfs_cover_parts(g, 0)))
        )
        assert exact <= cover_lemma_bound(g, t, cover, d)


def _bfs_cover_parts(g, v):
    from genpos.bounds import _bfs_path_cover
    from genpos.solver import _bits

    return [set(_bits(m)) for m in _bfs_path_cover(g, v, "canonical")]


# ---------------------------------------------------------------- ip(v, G)


def test_ip_c6_is_two_everywhere():
    g = make_cycle(6).graph
    d = all_pairs_distances(g)
    for v in range(6):
        assert ip_from_vertex(g, d, v, "exact") == 2
        assert min_geodesic_cover_by_enumeration(g, d, v) == 2


def test_ip_star_center_needs_all_arms():
    g = make_star(5).graph
    d = all_pairs_distances(g)
    assert ip_from_vertex(g, d, 0, "exact") == 5


def test_ip_matches_enumeration_oracle():
    for seed in range(12):
        g = random_connected_graph(3100 + seed, 4 + seed % 5, 0.35)
        d = all_pairs_distances(g)
        for v in range(g.n):
            assert ip_from_vertex(g, d, v, "exact") == min_geodesic_cover_by_enumeration(g, d, v)


def test_ip_block_graph_simplicial_vertex():
    for seed in range(8):
        inst = make_random_block_graph(3200 + seed, 3, 4)
        g = inst.graph
        d = all_pairs_distances(g)
        simp = simplicial_vertices(g)
        for v in sorted(simp)[:3]:
            assert ip_from_vertex(g, d, v, "exact") == len(simp) - 1


def test_ip_exact_size_cap():
    g = make_path(31).graph
    d = all_pairs_distances(g)
    with pytest.raises(TooLargeError):
        ip_from_vertex(g, d, 0, "exact")


def test_ip_modes_and_leaf_count_chain():
    for seed in range(10):
        g = random_connected_graph(3300 + seed, 5 + seed % 6, 0.3)
        d = all_pairs_distances(g)
        for v in range(g.n):
            exact = ip_from_vertex(g, d, v, "exact")
            greedy = ip_from_vertex(g, d, v, "greedy")
            assert exact <= greedy <= bfs_leaf_count(g, v)


def test_geodesic_cover_parts_are_valid():
    g = make_cycle(7).graph
    d = all_pairs_distances(g)
    for mode in ("exact", "greedy"):
        parts = geodesic_cover_from_vertex(g, d, 0, mode)
        assert set().union(*parts) == set(range(7))
        for p in parts:
            assert 0 in p
            assert is_isometric_subgraph(g, d, p)


# ---------------------------------------------------- certificate checks


def test_vertex_path_bound_on_c5():
    g = make_cycle(5).graph
    d, t = _dt(g)
    r = verify_general_position(t, {0, 1, 3})
    assert r.certified
    assert vertex_path_bound_check(g, r, d)


def test_vertex_path_bound_on_petersen_optimum():
    g = make_petersen().graph
    d, t = _dt(g)
    res = gp_exact(g, t)
    assert vertex_path_bound_check(g, res.certificate, d)


def test_vertex_path_bound_on_block_graphs():
    for seed in range(6):
        inst = make_random_block_graph(3400 + seed, 3, 4)
        d, t = _dt(inst.graph)
        res = gp_exact(inst.graph, t)
        assert vertex_path_bound_check(inst.graph, res.certificate, d)


def test_bfs_leaf_bound_on_cycles():
    for n in (5, 8, 11):
        g = make_cycle(n).graph
        d, t = _dt(g)
        res = gp_exact(g, t)
        assert bfs_leaf_bound_check(g, res.certificate)


def test_bfs_leaf_bound_on_counterexample_family():
    # gp(G_4) >= 8 while the apex has only 4 BFS leaves; the check still
    # passes because the apex never sits in an optimum set.
    inst = make_gn_counterexample(4)
    d, t = _dt(inst.graph)
    res = gp_exact(inst.graph, t)
    assert res.optimum >= 8
    assert bfs_leaf_count(inst.graph, 12) == 4
    assert bfs_leaf_bound_check(inst.graph, res.certificate)


def test_bfs_leaf_bound_tight_on_spiders():
    g = make_star(5).graph
    d, t = _dt(g)
    res = gp_exact(g, t)
    assert res.optimum == 5
    assert bfs_leaf_bound_check(g, res.certificate)
    assert min(bfs_leaf_count(g, v) for v in res.certificate.vertices) == 4


# ---------------------------------------------------------------- packings


def test_one_packing_is_independence_number():
    for seed in range(15):
        g = random_connected_graph(3500 + seed, 4 + seed % 7, 0.3)
        d = all_pairs_distances(g)
        value, witness = k_packing_number(d, 1)
        assert value == independence_number_exact(g).optimum
        assert all(d.dist(u, v) > 1 for u in witness for v in witness if u < v)


def test_k_packing_c6():
    d = all_pairs_distances(make_cycle(6).graph)
    assert k_packing_number(d, 2)[0] == 2
    assert k_packing_by_enumeration(d, 2) == 2


def test_k_packing_complete():
    d = all_pairs_distances(make_complete(5).graph)
    for k in (1, 2, 3):
        assert k_packing_number(d, k)[0] == 1


def test_k_packing_matches_enumeration():
    for seed in range(12):
        g = random_connected_graph(3600 + seed, 4 + seed % 6, 0.3)
        d = all_pairs_distances(g)
        for k in (1, 2, 3):
            assert k_packing_number(d, k)[0] == k_packing_by_enumeration(d, k)


def test_k_packing_greedy_is_valid_packing():
    for seed in range(8):
        g = random_connected_graph(3700 + seed, 8, 0.25)
        d = all_pairs_distances(g)
        for k in (1, 2):
            value, witness = k_packing_number(d, k, "greedy")
            assert value == len(witness)
            assert all(d.dist(u, v) > k for u in witness for v in witness if u < v)
            assert value <= k_packing_number(d, k, "exact")[0]


def test_packing_lower_bound_c5():
    g = make_cycle(5).graph
    d, t = _dt(g)
    value, cert = packing_lower_bound(g, d)
    assert cert.k == 1 and value == 2
    assert value <= gp_exact(g, t).optimum == 3


def test_packing_lower_bound_p10():
    g = make_path(10).graph
    d, t = _dt(g)
    value, cert = packing_lower_bound(g, d)
    assert cert.k == 4 and value == 2
    assert gp_exact(g, t).optimum == 2


def test_packing_lower_bound_uses_alpha_when_diameter_small():
    for seed in range(10):
        g = random_connected_graph(3800 + seed, 7, 0.5)
        d = all_pairs_distances(g)
        if diameter(d) > 3:
            continue
        value, cert = packing_lower_bound(g, d)
        assert cert.k == 1
        assert value == independence_number_exact(g).optimum


def test_packing_equivalence_both_directions():
    for seed in range(40):
        g = random_connected_graph(3900 + seed, 4 + seed % 9, 0.3)
        d = all_pairs_distances(g)
        t = collinear_triples(d)
        diam = diameter(d)
        for k in range(1, diam + 1):
            if diam <= 2 * k + 1:
                _, witness = k_packing_number(d, k)
                assert verify_general_position(t, witness).certified
            else:
                triple = diametral_violation_triple(d, k)
                assert triple is not None
                x, y, z = triple
                assert d.dist(x, y) > k and d.dist(y, z) > k and d.dist(x, z) > k
                assert not verify_general_position(t, {x, y, z}).certified


def test_violation_triple_none_when_diameter_small():
    d = all_pairs_distances(make_complete(4).graph)
    assert diametral_violation_triple(d, 1) is None


# ---------------------------------------------------------- distant edges


def test_distant_edge_bound_petersen():
    g = make_petersen().graph
    d = all_pairs_distances(g)
    value, edges = distant_edge_bound(g, d)
    assert value == 6 and len(edges) == 3


def test_distant_edge_bound_path():
    g = make_path(6).graph
    d = all_pairs_distances(g)
    value, edges = distant_edge_bound(g, d)
    assert value == 2 and len(edges) == 1


def test_distant_edge_bound_spiders():
    for n, s in ((2, 1), (3, 1), (3, 2), (4, 1)):
        inst = make_spider_triangles(n, s)
        d = all_pairs_distances(inst.graph)
        value, edges = distant_edge_bound(inst.graph, d)
        assert value == 2 * n
        stored = 2 * len(inst.edge_certificate)
        assert stored == value


def test_distant_edge_bound_rejects_small_diameter():
    g = make_complete(4).graph
    d = all_pairs_distances(g)
    with pytest.raises(DiameterTooSmallError):
        distant_edge_bound(g, d)


def test_distant_edge_greedy_no_better_than_exact():
    from genpos import edge_distance

    for seed in range(10):
        g = random_connected_graph(4000 + seed, 7, 0.3)
        d = all_pairs_distances(g)
        if diameter(d) < 2:
            continue
        exact_val, _ = distant_edge_bound(g, d, "exact")
        greedy_val, edges = distant_edge_bound(g, d, "greedy")
        assert greedy_val <= exact_val
        k = diameter(d)
        assert all(
            edge_distance(d, e, f) == k
            for i, e in enumerate(edges)
            for f in edges[i + 1:]
        )


# ---------------------------------------------------------------- report


def test_bounds_report_petersen():
    inst = make_petersen()
    rep = bounds_report(inst.graph, covers=[inst.cover])
    assert rep.exact == 6
    assert rep.lower["distant_edges"].value == 6
    assert rep.upper["user_cover_0"].value == 6
    assert rep.best_lower() <= rep.exact <= rep.best_upper()
    assert rep.checks["bfs_leaf_bound"]
    assert rep.checks["vertex_path_bound"]


def test_bounds_report_tree():
    g = random_tree(11, 12)
    rep = bounds_report(g)
    leaves = leaf_count(g)
    assert rep.lower["simplicial"].value == leaves
    assert rep.exact == leaves


def test_bounds_report_complete():
    rep = bounds_report(make_complete(6).graph)
    assert rep.lower["simplicial"].value == 6
    assert rep.upper["order"].value == 6
    assert rep.exact == 6
    assert rep.lower["distant_edges"].value is None  # diameter 1


def test_bounds_report_certificates_reverify():
    inst = make_petersen()
    g = inst.graph
    d, t = _dt(g)
    rep = bounds_report(g, covers=[inst.cover])
    pack = rep.lower["packing"]
    k = pack.certificate["k"]
    members = pack.certificate["set"]
    assert all(d.dist(u, v) > k for u in members for v in members if u < v)
    assert verify_general_position(t, members).certified
    simp = rep.lower["simplicial"]
    assert verify_general_position(t, simp.certificate["set"]).certified
    cover_parts = rep.upper["user_cover_0"].certificate["parts"]
    assert set().union(*map(set, cover_parts)) == set(range(g.n))


def test_bounds_report_sandwich_on_random_graphs():
    for seed in range(12):
        g = random_connected_graph(4100 + seed, 5 + seed % 6, 0.35)
        rep = bounds_report(g)
        assert rep.exact is not None
        assert rep.best_lower() <= rep.exact <= rep.best_upper()


def test_bounds_report_large_graph_uses_greedy_fallbacks():
    g = random_connected_graph(77, 60, 0.08)
    rep = bounds_report(g, budget=3.0)
    assert rep.lower["packing"].certificate["mode"] == "greedy"
    assert rep.upper["ip_cover"].value is None  # skipped with a reason
    assert "skipped" in rep.upper["ip_cover"].note
    lo, hi = rep.best_lower(), rep.best_upper()
    assert lo is not None and hi is not None and lo <= hi
