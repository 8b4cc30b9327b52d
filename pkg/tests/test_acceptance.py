"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (visible with pytest -s or in captured output)."""

import random
from contextlib import contextmanager

from genpos import (
    RunReport,
    all_pairs_distances,
    collinear_triples,
    cover_lemma_bound,
    diameter,
    diametral_violation_triple,
    distant_edge_bound,
    gp_brute_force,
    gp_exact,
    independence_number_exact,
    k_packing_number,
    make_complete,
    make_cycle,
    make_glued_binary_tree,
    make_path,
    make_petersen,
    make_random_block_graph,
    make_theta,
    build_reduction,
    reverify,
    serialize_edge_list,
    simplicial_vertices,
    verify_general_position,
    verify_value_claim,
)
from genpos.cli import main
from .helpers import alpha_by_enumeration, leaf_count, random_connected_graph, random_tree


@contextmanager
def criterion(num, description):
    try:
        yield
    except BaseException:
        print(f"[criterion {num:2d}] FAIL: {description}")
        raise
    print(f"[criterion {num:2d}] PASS: {description}")


def _solve(g, limit=None):
    t = collinear_triples(all_pairs_distances(g))
    return gp_exact(g, t, limit)


def test_criterion_1_family_formulas():
    with criterion(1, "closed forms for paths, cycles, and complete graphs"):
        for n in range(2, 13):
            assert _solve(make_path(n).graph).optimum == 2
        assert _solve(make_cycle(3).graph).optimum == 3
        assert _solve(make_cycle(4).graph).optimum == 2
        for n in range(5, 13):
            assert _solve(make_cycle(n).graph).optimum == 3
        for n in range(1, 11):
            assert _solve(make_complete(n).graph).optimum == n


def test_criterion_2_theta_closed_form():
    with criterion(2, "theta graphs solve to k+1 and the stored witness certifies"):
        for k in range(2, 6):
            for ell in range(3, 7):
                inst = make_theta(k, ell)
                assert _solve(inst.graph).optimum == k + 1, inst.name
        inst = make_theta(4, 5)
        t = collinear_triples(all_pairs_distances(inst.graph))
        assert verify_general_position(t, inst.predicted_witness).certified


def test_criterion_3_trees_and_block_graphs():
    with criterion(3, "trees solve to leaf count, block graphs to simplicial count"):
        done = 0
        seed = 0
        while done < 50:
            n = 4 + seed % 15
            g = random_tree(seed, n)
            assert _solve(g).optimum == leaf_count(g), f"tree seed {seed}"
            done += 1
            seed += 1
        done = 0
        seed = 0
        while done < 50:
            inst = make_random_block_graph(seed, 1 + seed % 6, 2 + seed % 4)
            seed += 1
            if inst.graph.n > 18:
                continue
            expected = len(simplicial_vertices(inst.graph))
            assert _solve(inst.graph).optimum == expected == inst.predicted_gp
            done += 1


def test_criterion_4_glued_binary_trees():
    with criterion(4, "glued binary trees: 4, 8, and 16 under a 60 s budget"):
        assert _solve(make_glued_binary_tree(2).graph).optimum == 4
        assert _solve(make_glued_binary_tree(3).graph).optimum == 8
        res = _solve(make_glued_binary_tree(4).graph, limit=60)
        assert res.optimum == 16, "GT(4) must reach 16 exactly or as a certified lower bound"
        assert res.is_exact or res.status == "timeout"


def test_criterion_5_petersen_triangulation():
    with criterion(5, "Petersen: edge bound 6, cycle-cover bound 6, exact 6"):
        inst = make_petersen()
        d = all_pairs_distances(inst.graph)
        t = collinear_triples(d)
        value, edges = distant_edge_bound(inst.graph, d)
        assert value == 6 and len(edges) == 3
        assert cover_lemma_bound(inst.graph, t, inst.cover, d) == 6
        assert gp_exact(inst.graph, t).optimum == 6


def test_criterion_6_packing_equivalence():
    with criterion(6, "k-packing / general-position equivalence on 200 random graphs"):
        for seed in range(200):
            rng = random.Random(seed)
            n = rng.randint(4, 12)
            g = random_connected_graph(50_000 + seed, n, rng.choice([0.2, 0.3, 0.45, 0.6]))
            d = all_pairs_distances(g)
            t = collinear_triples(d)
            diam = diameter(d)
            for k in range(1, diam + 1):
                if diam <= 2 * k + 1:
                    _, witness = k_packing_number(d, k)
                    assert verify_general_position(t, witness).certified
                else:
                    x, y, z = diametral_violation_triple(d, k)
                    assert min(d.dist(x, y), d.dist(y, z), d.dist(x, z)) > k
                    assert not verify_general_position(t, {x, y, z}).certified


def test_criterion_7_oracle_equivalence():
    with criterion(7, "exact solver agrees with subset enumeration on 200 random graphs"):
        for seed in range(200):
            rng = random.Random(seed)
            n = rng.randint(4, 10)
            g = random_connected_graph(60_000 + seed, n, rng.choice([0.2, 0.35, 0.5, 0.7]))
            t = collinear_triples(all_pairs_distances(g))
            assert gp_exact(g, t).optimum == gp_brute_force(g, t)
            assert independence_number_exact(g).optimum == alpha_by_enumeration(g)


def test_criterion_8_reduction_suite():
    with criterion(8, "value claim on 100+ random bases plus the three frozen examples"):
        done = 0
        seed = 0
        while done < 100:
            rng = random.Random(seed)
            n = rng.randint(3, 6)
            base = random_connected_graph(70_000 + seed, n, rng.choice([0.25, 0.4, 0.6]))
            assert verify_value_claim(build_reduction(base))
            done += 1
            seed += 1
        for base, alpha_expected, gp_expected in [
            (make_path(3).graph, 2, 5),
            (make_complete(3).graph, 1, 4),
            (make_cycle(5).graph, 2, 7),
        ]:
            r = build_reduction(base)
            t = collinear_triples(all_pairs_distances(r.lifted))
            assert alpha_by_enumeration(base) == alpha_expected
            assert gp_brute_force(r.lifted, t) == gp_expected
            assert gp_exact(r.lifted, t).optimum == gp_expected
            assert verify_value_claim(r)


def test_criterion_9_certificate_integrity(tmp_path, capsys):
    with criterion(9, "every emitted certificate re-verifies from the report alone"):
        petersen = tmp_path / "petersen.txt"
        petersen.write_text(serialize_edge_list(make_petersen().graph))
        cover = tmp_path / "cover.txt"
        cover.write_text("cycle: 0,1,2,3,4\ncycle: 5,6,7,8,9\n")
        theta_inst = make_theta(4, 5)
        theta = tmp_path / "theta.txt"
        theta.write_text(serialize_edge_list(theta_inst.graph))
        theta_witness = ",".join(str(v) for v in sorted(theta_inst.predicted_witness))
        p3 = tmp_path / "p3.txt"
        p3.write_text(serialize_edge_list(make_path(3).graph))

        runs = [
            ["solve", "--input", str(petersen), "--deterministic"],
            ["bounds", "--input", str(petersen), "--cover", str(cover)],
            ["verify", "--input", str(theta), "--set", theta_witness],
            ["generate", "--family", "gt", "--r", "3"],
            ["generate", "--family", "spider", "--n", "3", "--s", "1"],
            ["reduce", "--input", str(p3), "--check"],
        ]
        for argv in runs:
            code = main(argv)
            out = capsys.readouterr().out
            assert code == 0, argv
            report = RunReport.from_json(out)
            assert RunReport.from_json(report.to_json()) == report
            failures = reverify(report)
            assert failures == [], (argv, failures)


def test_criterion_10_no_unproved_exactness():
    with criterion(10, "budget exhaustion yields a certified lower bound, never a false exact"):
        g = make_glued_binary_tree(3).graph
        t = collinear_triples(all_pairs_distances(g))
        full = gp_exact(g, t)
        assert full.is_exact and full.optimum == 8
        for node_limit in (1, 10, 100):
            res = gp_exact(g, t, node_limit=node_limit)
            assert res.status == "timeout"
            assert verify_general_position(t, res.witness).certified
            assert res.optimum == len(res.witness) <= full.optimum
        # an expired wall-clock budget behaves the same way
        res = gp_exact(g, t, 0.0)
        assert res.status == "timeout"
        assert verify_general_position(t, res.witness).certified
