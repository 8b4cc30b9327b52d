"""Command-line front end: solve, bounds, verify, generate, reduce.

Reports are JSON on stdout (or --out for the query commands); exit code
0 on success, 2 when a result is partial because a budget ran out, 1 on
input errors.  GP_THREADS provides the default for --threads; the solver
itself runs sequentially, so results never depend on the thread count.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .bounds import IsometricCover, bounds_report
from .errors import GenposError
from .formats import (
    iter_graph6,
    parse_edge_list,
    serialize_edge_list,
    serialize_graph6,
)
from .geodesic import collinear_triples, verify_general_position
from .graph import Graph, all_pairs_distances
from .reduction import build_reduction
from .report import RunReport, build_family, graph_to_dict
from .solver import gp_exact, independence_number_exact

_FAMILY_PARAMS = {
    "path": ("n",),
    "cycle": ("n",),
    "complete": ("n",),
    "star": ("m",),
    "theta": ("k", "ell"),
    "gt": ("r",),
    "cbt": ("r",),
    "petersen": (),
    "gn": ("n",),
    "spider": ("n", "s"),
    "block-random": ("seed", "blocks", "max_block_size"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise GenposError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="genpos", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("--input", required=True, help="graph file")
        p.add_argument("--format", choices=("edgelist", "graph6"), default="edgelist")

    solve = sub.add_parser("solve", help="exact general position number")
    add_input(solve)
    solve.add_argument("--time-limit", type=float, default=None, metavar="SECONDS")
    solve.add_argument("--deterministic", action="store_true")
    solve.add_argument("--threads", type=int, default=None)
    solve.add_argument("--out", default=None, help="report destination (default stdout)")

    bounds = sub.add_parser("bounds", help="bound portfolio with certificates")
    add_input(bounds)
    bounds.add_argument("--cover", default=None, help="isometric cover file")
    bounds.add_argument("--time-limit", type=float, default=None, metavar="SECONDS")
    bounds.add_argument("--deterministic", action="store_true")
    bounds.add_argument("--threads", type=int, default=None)
    bounds.add_argument("--out", default=None)

    verify = sub.add_parser("verify", help="check a vertex set for general position")
    add_input(verify)
    verify.add_argument("--set", required=True, help="comma-separated vertex indices")
    verify.add_argument("--out", default=None)

    generate = sub.add_parser("generate", help="emit a graph family instance")
    generate.add_argument("--family", required=True, choices=sorted(_FAMILY_PARAMS))
    generate.add_argument("--n", type=int)
    generate.add_argument("--m", type=int)
    generate.add_argument("--k", type=int)
    generate.add_argument("--ell", type=int)
    generate.add_argument("--r", type=int)
    generate.add_argument("--s", type=int)
    generate.add_argument("--seed", type=int)
    generate.add_argument("--blocks", type=int)
    generate.add_argument("--max-block-size", type=int)
    generate.add_argument("--out", default=None, help="graph file destination")
    generate.add_argument("--format", choices=("edgelist", "graph6"), default="edgelist")

    reduce = sub.add_parser("reduce", help="build the hardness lift of a graph")
    add_input(reduce)
    reduce.add_argument("--out", default=None, help="lifted graph destination")
    reduce.add_argument("--check", action="store_true", help="verify the value equivalence")
    reduce.add_argument("--time-limit", type=float, default=None, metavar="SECONDS")
    return parser


def _load_graph(path: str, fmt: str) -> Graph:
    text = Path(path).read_text()
    if fmt == "edgelist":
        return parse_edge_list(text)
    graphs = iter_graph6(text)
    if len(graphs) != 1:
        raise GenposError(f"{path}: expected one graph6 graph, found {len(graphs)}")
    return graphs[0]


def _write_graph(g: Graph, path: str, fmt: str) -> None:
    text = serialize_edge_list(g) if fmt == "edgelist" else serialize_graph6(g) + "\n"
    Path(path).write_text(text)


def parse_cover_file(text: str) -> IsometricCover:
    """One part per line: optional 'path:'/'cycle:' tag, then comma-separated
    vertex indices.  '#' lines are comments."""
    parts = []
    tags = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tag = None
        if ":" in line:
            head, _, rest = line.partition(":")
            tag = head.strip().lower()
            if tag not in ("path", "cycle"):
                raise GenposError(f"unknown cover part tag {tag!r}")
            line = rest
        try:
            members = frozenset(int(x) for x in line.split(",") if x.strip())
        except ValueError:
            raise GenposError(f"bad cover line {raw!r}")
        parts.append(members)
        tags.append(tag)
    if not parts:
        raise GenposError("cover file has no parts")
    return IsometricCover(tuple(parts), tuple(tags))


def _input_descriptor(args, g: Graph) -> dict:
    return {"path": args.input, "format": args.format, "n": g.n, "m": g.edge_count}


def _threads(args) -> int:
    if getattr(args, "threads", None) is not None:
        return max(1, args.threads)
    return max(1, int(os.environ.get("GP_THREADS", "1")))


def _finish(report: RunReport, out: str | None, started: float, deterministic: bool) -> None:
    report.timing["total"] = None if deterministic else time.monotonic() - started
    if deterministic:
        report.timing = {k: None for k in report.timing}
    text = report.to_json()
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_solve(args) -> int:
    started = time.monotonic()
    g = _load_graph(args.input, args.format)
    parsed = time.monotonic()
    t = collinear_triples(all_pairs_distances(g))
    res = gp_exact(g, t, args.time_limit, deterministic=args.deterministic)
    report = RunReport(
        command="solve",
        version=__version__,
        input=_input_descriptor(args, g),
        graph=graph_to_dict(g),
        options={
            "time_limit": args.time_limit,
            "deterministic": args.deterministic,
            "threads": _threads(args),
        },
        result={
            "optimum": res.optimum,
            "status": res.status,
            "nodes_explored": res.nodes_explored,
            "witness": sorted(res.witness),
            "certified": res.certificate.certified,
        },
        timing={"parse": parsed - started, "solve": time.monotonic() - parsed},
    )
    _finish(report, args.out, started, args.deterministic)
    return 0 if res.is_exact else 2


def _cmd_bounds(args) -> int:
    started = time.monotonic()
    g = _load_graph(args.input, args.format)
    parsed = time.monotonic()
    covers = None
    if args.cover:
        covers = [parse_cover_file(Path(args.cover).read_text())]
    rep = bounds_report(g, args.time_limit, covers, deterministic=args.deterministic)
    report = RunReport(
        command="bounds",
        version=__version__,
        input=_input_descriptor(args, g),
        graph=graph_to_dict(g),
        options={
            "time_limit": args.time_limit,
            "cover": args.cover,
            "deterministic": args.deterministic,
            "threads": _threads(args),
        },
        result=rep.to_dict(),
        timing={"parse": parsed - started, "bounds": time.monotonic() - parsed},
    )
    _finish(report, args.out, started, args.deterministic)
    return 0 if rep.exact is not None else 2


def _cmd_verify(args) -> int:
    started = time.monotonic()
    g = _load_graph(args.input, args.format)
    try:
        vertices = [int(x) for x in args.set.split(",") if x.strip()]
    except ValueError:
        raise GenposError(f"--set expects comma-separated integers, got {args.set!r}")
    t = collinear_triples(all_pairs_distances(g))
    res = verify_general_position(t, vertices)
    report = RunReport(
        command="verify",
        version=__version__,
        input=_input_descriptor(args, g),
        graph=graph_to_dict(g),
        options={"set": sorted(set(vertices))},
        result={
            "set": sorted(res.vertices),
            "certified": res.certified,
            "violation": None if res.witness is None else list(res.witness),
        },
        timing={"verify": time.monotonic() - started},
    )
    _finish(report, args.out, started, False)
    return 0


def _cmd_generate(args) -> int:
    started = time.monotonic()
    params = {}
    for name in _FAMILY_PARAMS[args.family]:
        value = getattr(args, name)
        if value is None:
            flag = "--" + name.replace("_", "-")
            raise GenposError(f"family {args.family!r} requires {flag}")
        params[name] = value
    inst = build_family(args.family, params)
    if args.out:
        _write_graph(inst.graph, args.out, args.format)
    result = {
        "name": inst.name,
        "n": inst.graph.n,
        "m": inst.graph.edge_count,
        "predicted_gp": inst.predicted_gp,
        "predicted_witness": None if inst.predicted_witness is None else sorted(inst.predicted_witness),
        "cover": None,
        "edge_certificate": None,
        "written_to": args.out,
    }
    if inst.cover is not None:
        result["cover"] = {
            "parts": [sorted(p) for p in inst.cover.parts],
            "tags": list(inst.cover.tags),
        }
    if inst.edge_certificate is not None:
        result["edge_certificate"] = [list(e) for e in inst.edge_certificate]
    report = RunReport(
        command="generate",
        version=__version__,
        input={"family": args.family, "params": params},
        graph=graph_to_dict(inst.graph),
        options={"format": args.format},
        result=result,
        timing={"generate": time.monotonic() - started},
    )
    _finish(report, None, started, False)
    return 0


def _cmd_reduce(args) -> int:
    started = time.monotonic()
    g = _load_graph(args.input, args.format)
    r = build_reduction(g)
    if args.out:
        _write_graph(r.lifted, args.out, "edgelist")
        layers_path = args.out + ".layers.json"
        Path(layers_path).write_text(
            json.dumps({"n": g.n, "layers": [list(t) for t in r.layer_map]}, indent=2) + "\n"
        )
    result = {
        "lifted": graph_to_dict(r.lifted),
        "layer_map": [list(t) for t in r.layer_map],
        "check": None,
        "alpha": None,
        "gp_lifted": None,
        "written_to": args.out,
    }
    exit_code = 0
    if args.check:
        limit = args.time_limit
        alpha = independence_number_exact(r.base, limit)
        gp = gp_exact(r.lifted, r.lifted_triples, limit)
        if alpha.is_exact and gp.is_exact:
            result["alpha"] = alpha.optimum
            result["gp_lifted"] = gp.optimum
            result["check"] = gp.optimum == alpha.optimum + g.n
        else:
            result["check_status"] = "timeout"
            exit_code = 2
    report = RunReport(
        command="reduce",
        version=__version__,
        input=_input_descriptor(args, g),
        graph=graph_to_dict(g),
        options={"check": args.check, "time_limit": args.time_limit},
        result=result,
        timing={"reduce": time.monotonic() - started},
    )
    _finish(report, None, started, False)
    return exit_code


_COMMANDS = {
    "solve": _cmd_solve,
    "bounds": _cmd_bounds,
    "verify": _cmd_verify,
    "generate": _cmd_generate,
    "reduce": _cmd_reduce,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except GenposError as exc:
        sys.stderr.write(json.dumps({"error": str(exc)}) + "\n")
        return 1
    except OSError as exc:
        sys.stderr.write(json.dumps({"error": str(exc)}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
