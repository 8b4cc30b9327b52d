"""Run reports: serialization and standalone re-verification.

A report embeds the input graph, so every certificate it carries can be
checked again from the serialized JSON alone, with no access to the
original input files.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from . import families
from .bounds import IsometricCover, is_isometric_subgraph, validate_cover, _part_score, _induced_shape
from .errors import GenposError
from .geodesic import collinear_triples, verify_general_position
from .graph import (
    Graph,
    all_pairs_distances,
    bfs_leaf_count,
    build_graph,
    diameter,
    edge_distance,
)
from .reduction import build_reduction
from .solver import gp_exact, independence_number_exact


@dataclass
class RunReport:
    """One CLI invocation: input descriptor, results, and stage timings."""

    command: str
    version: str
    input: dict
    graph: dict
    options: dict = field(default_factory=dict)
    result: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        data = json.loads(text)
        return cls(
            command=data["command"],
            version=data["version"],
            input=data["input"],
            graph=data["graph"],
            options=data.get("options", {}),
            result=data.get("result", {}),
            timing=data.get("timing", {}),
        )


def graph_to_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def graph_from_dict(data: dict) -> Graph:
    return build_graph(data["n"], [tuple(e) for e in data["edges"]])


_FAMILY_BUILDERS = {
    "path": lambda p: families.make_path(p["n"]),
    "cycle": lambda p: families.make_cycle(p["n"]),
    "complete": lambda p: families.make_complete(p["n"]),
    "star": lambda p: families.make_star(p["m"]),
    "theta": lambda p: families.make_theta(p["k"], p["ell"]),
    "gt": lambda p: families.make_glued_binary_tree(p["r"]),
    "cbt": lambda p: families.make_complete_binary_tree(p["r"]),
    "petersen": lambda p: families.make_petersen(),
    "gn": lambda p: families.make_gn_counterexample(p["n"]),
    "spider": lambda p: families.make_spider_triangles(p["n"], p["s"]),
    "block-random": lambda p: families.make_random_block_graph(
        p["seed"], p["blocks"], p["max_block_size"]
    ),
}


def build_family(name: str, params: dict) -> families.FamilyInstance:
    if name not in _FAMILY_BUILDERS:
        raise GenposError(f"unknown family {name!r}")
    return _FAMILY_BUILDERS[name](params)


def reverify(report: RunReport) -> list[str]:
    """Re-check every certificate in a report; returns failure descriptions."""
    failures: list[str] = []
    g = graph_from_dict(report.graph)
    command = report.command
    if command == "solve":
        failures += _reverify_witness(g, report.result)
    elif command == "bounds":
        failures += _reverify_bounds(g, report.result)
    elif command == "verify":
        failures += _reverify_verdict(g, report.result)
    elif command == "generate":
        failures += _reverify_family(g, report.input, report.result)
    elif command == "reduce":
        failures += _reverify_reduction(g, report.result)
    else:
        failures.append(f"unknown command {command!r}")
    return failures


def _check_gp(g: Graph, vertices, failures: list[str], label: str) -> None:
    t = collinear_triples(all_pairs_distances(g))
    res = verify_general_position(t, vertices)
    if not res.certified:
        failures.append(f"{label}: set {sorted(vertices)} is not in general position")


def _reverify_witness(g: Graph, result: dict) -> list[str]:
    failures: list[str] = []
    witness = result.get("witness")
    if witness is None:
        return ["solve result has no witness"]
    if len(witness) != result.get("optimum"):
        failures.append("witness size differs from reported optimum")
    _check_gp(g, witness, failures, "solve witness")
    return failures


def _reverify_verdict(g: Graph, result: dict) -> list[str]:
    failures: list[str] = []
    d = all_pairs_distances(g)
    t = collinear_triples(d)
    res = verify_general_position(t, result["set"])
    if res.certified != result.get("certified"):
        failures.append("verification verdict changed on re-check")
    stored = result.get("violation")
    fresh = None if res.witness is None else list(res.witness)
    if stored != fresh:
        failures.append(f"violation witness changed: stored {stored}, fresh {fresh}")
    return failures


def _is_isometric_path_from(g: Graph, d, part: set[int], v: int) -> bool:
    if v not in part:
        return False
    if not is_isometric_subgraph(g, d, part):
        return False
    edges, degrees = _induced_shape(g, frozenset(part))
    k = len(part)
    if edges != k - 1 or (k > 1 and max(degrees) > 2):
        return False
    deg_v = sum(1 for w in g.adj[v] if w in part)
    return deg_v <= 1


def _reverify_bounds(g: Graph, result: dict) -> list[str]:
    failures: list[str] = []
    d = all_pairs_distances(g)
    t = collinear_triples(d)
    diam = diameter(d)

    for name, entry in result.get("lower", {}).items():
        value = entry.get("value")
        cert = entry.get("certificate")
        if value is None:
            continue
        if name in ("simplicial", "greedy", "solver_best"):
            s = cert["set"]
            if len(s) != value:
                failures.append(f"{name}: certificate size differs from value")
            res = verify_general_position(t, s)
            if not res.certified:
                failures.append(f"{name}: certificate set not in general position")
        elif name == "packing":
            k, s = cert["k"], cert["set"]
            if len(s) != value:
                failures.append("packing: certificate size differs from value")
            if any(d.dist(u, v) <= k for u in s for v in s if u < v):
                failures.append(f"packing: set is not a {k}-packing")
            if diam > 2 * k + 1:
                failures.append(f"packing: k={k} does not satisfy diam <= 2k+1")
            res = verify_general_position(t, s)
            if not res.certified:
                failures.append("packing: certificate set not in general position")
        elif name == "distant_edges":
            edges = [tuple(e) for e in cert["edges"]]
            if value != 2 * len(edges):
                failures.append("distant_edges: value is not twice the edge count")
            for i, e in enumerate(edges):
                for f in edges[i + 1:]:
                    if edge_distance(d, e, f) != diam:
                        failures.append(f"distant_edges: {e} and {f} not at diameter distance")
            endpoints = {v for e in edges for v in e}
            res = verify_general_position(t, endpoints)
            if not res.certified:
                failures.append("distant_edges: endpoints not in general position")
        else:
            failures.append(f"unknown lower bound entry {name!r}")

    for name, entry in result.get("upper", {}).items():
        value = entry.get("value")
        cert = entry.get("certificate")
        if value is None:
            continue
        if name == "order":
            if value != g.n:
                failures.append("order: value differs from vertex count")
        elif name in ("bfs_cover", "ip_cover"):
            v = cert["vertex"]
            parts = [set(p) for p in cert["parts"]]
            if value != 2 * len(parts):
                failures.append(f"{name}: value is not twice the part count")
            if set().union(*parts) != set(range(g.n)):
                failures.append(f"{name}: parts do not cover the vertex set")
            for p in parts:
                if not _is_isometric_path_from(g, d, p, v):
                    failures.append(f"{name}: part {sorted(p)} is not a geodesic from {v}")
            if name == "bfs_cover":
                leaves = bfs_leaf_count(g, v, cert["variant"])
                if leaves != cert["leaves"] or value != 2 * leaves:
                    failures.append("bfs_cover: leaf count mismatch")
        elif name.startswith("user_cover"):
            cover = IsometricCover(
                tuple(frozenset(p) for p in cert["parts"]), tuple(cert["tags"])
            )
            try:
                validate_cover(g, d, cover)
            except GenposError as exc:
                failures.append(f"{name}: cover failed validation: {exc}")
                continue
            scores = [
                _part_score(g, t, part, tag, None)
                for part, tag in zip(cover.parts, cover.tags)
            ]
            if scores != cert["scores"] or sum(scores) != value:
                failures.append(f"{name}: part scores changed on re-check")
        else:
            failures.append(f"unknown upper bound entry {name!r}")

    exact = result.get("exact")
    if exact is not None:
        lows = [e["value"] for e in result["lower"].values() if e.get("value") is not None]
        highs = [e["value"] for e in result["upper"].values() if e.get("value") is not None]
        if lows and max(lows) > exact:
            failures.append("exact value below a lower bound")
        if highs and min(highs) < exact:
            failures.append("exact value above an upper bound")
        witness = result.get("witness")
        if witness is None or len(witness) != exact:
            failures.append("exact value without a matching witness")
        else:
            _check_gp(g, witness, failures, "bounds witness")
    return failures


def _reverify_family(g: Graph, input_desc: dict, result: dict) -> list[str]:
    failures: list[str] = []
    inst = build_family(input_desc["family"], input_desc.get("params", {}))
    if graph_to_dict(inst.graph) != graph_to_dict(g):
        failures.append("regenerated family graph differs from the report graph")
    d = all_pairs_distances(g)
    t = collinear_triples(d)
    witness = result.get("predicted_witness")
    if witness is not None:
        res = verify_general_position(t, witness)
        if not res.certified:
            failures.append("predicted witness not in general position")
        if result.get("predicted_gp") is not None and len(witness) != result["predicted_gp"]:
            failures.append("predicted witness size differs from predicted gp")
    cover = result.get("cover")
    if cover is not None:
        try:
            validate_cover(
                g, d,
                IsometricCover(tuple(frozenset(p) for p in cover["parts"]), tuple(cover["tags"])),
            )
        except GenposError as exc:
            failures.append(f"stored cover failed validation: {exc}")
    edges = result.get("edge_certificate")
    if edges is not None:
        diam = diameter(d)
        pairs = [tuple(e) for e in edges]
        for i, e in enumerate(pairs):
            for f in pairs[i + 1:]:
                if edge_distance(d, e, f) != diam:
                    failures.append(f"stored edges {e} and {f} not at diameter distance")
    return failures


def _reverify_reduction(g: Graph, result: dict) -> list[str]:
    failures: list[str] = []
    r = build_reduction(g)
    lifted = result.get("lifted")
    if lifted is None or graph_to_dict(r.lifted) != lifted:
        failures.append("lifted graph differs from a fresh construction")
    layers = [list(t) for t in r.layer_map]
    if result.get("layer_map") != layers:
        failures.append("layer map differs from the fixed indexing")
    if result.get("check") is not None:
        alpha = independence_number_exact(r.base)
        gp = gp_exact(r.lifted, r.lifted_triples)
        if not (alpha.is_exact and gp.is_exact):
            failures.append("re-check solves did not complete")
        else:
            if result.get("alpha") != alpha.optimum:
                failures.append("stored alpha differs on re-check")
            if result.get("gp_lifted") != gp.optimum:
                failures.append("stored lifted gp differs on re-check")
            if result["check"] != (gp.optimum == alpha.optimum + g.n):
                failures.append("stored verdict differs on re-check")
    return failures
