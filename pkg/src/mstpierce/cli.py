"""Command-line entry point: ``mstpierce <command> ...``.

Exit codes: 0 when every check passes, 1 on a violated check or oracle
mismatch, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import fingerhut, instances
from .enclosing import MAX_BRUTEFORCE_POINTS, sec_bruteforce, smallest_enclosing_circle
from .errors import GeometryError, OddCount, ParseError, TooLarge
from .piercing import diametral_disks, helly_triples, verify_piercing
from .spanning import MAX_ENUMERATION_POINTS, Tree, enumerate_best_tree_weight, max_spanning_tree, verify_max_tree
from .svg import render_svg

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2
HELLY_MAX_EDGES = 31


class InputError(Exception):
    pass


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("PIERCE_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"PIERCE_SEED is not an integer: {env!r}") from None


def _emit(doc, out=None):
    text = instances.dumps(doc)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_tree(path, inst) -> Tree:
    try:
        doc = json.loads(Path(path).read_text())
        pairs = doc["edges"] if isinstance(doc, dict) else doc
        edges = [inst.edge(int(e[0]), int(e[1])) for e in pairs]
    except (OSError, ValueError, KeyError, TypeError, IndexError) as exc:
        raise InputError(f"{path}: cannot read tree: {exc}") from None
    return Tree.from_edges(edges)


def check_instance(inst, seed: int = 0, tree=None, helly_max_edges: int = HELLY_MAX_EDGES) -> dict:
    """Run every per-instance check and collect the verdicts."""
    report = verify_piercing(inst, seed=seed, tree=tree)
    doc = report.to_dict()
    pts = inst.points
    c = report.circle.center
    ratio = max((fingerhut.edge_ratio(c, pts[e.i], pts[e.j]) for e in report.tree.edges), default=1.0)
    doc["ratio_at_center"] = ratio
    doc["ratio_ok"] = ratio <= fingerhut.SQRT2 + 1e-9
    if len(report.tree.edges) <= helly_max_edges:
        doc["helly"] = helly_triples(diametral_disks(inst, report.tree))
    else:
        doc["helly"] = None
    if tree is not None:
        doc["max_tree"] = verify_max_tree(inst, tree)
    doc["ok"] = bool(report.verdict and doc["ratio_ok"] and doc["helly"] is not False)
    return doc


def cmd_verify(args) -> int:
    seed = _seed(args)
    if args.file:
        insts = [instances.load_instance(args.file)]
    else:
        config = instances.RunConfig(
            seed=seed, trials=args.trials, n_range=(args.n_min, args.n_max), generator=args.gen
        )
        insts = list(instances.generate(config))
    tree = _load_tree(args.tree, insts[0]) if args.tree else None
    if tree is not None and len(insts) != 1:
        raise InputError("--tree needs a single --file instance")

    def run(inst):
        return check_instance(inst, seed=seed, tree=tree, helly_max_edges=args.helly_max_edges)

    if args.workers > 1:
        with ThreadPoolExecutor(args.workers) as pool:
            docs = list(pool.map(run, insts))
    else:
        docs = [run(inst) for inst in insts]

    bad = [(inst, d) for inst, d in zip(insts, docs) if not d["ok"]]
    summary = {
        "trials": len(docs),
        "violations": len(bad),
        "min_angle": min(d["min_angle"] for d in docs),
        "max_ratio_at_center": max(d["ratio_at_center"] for d in docs),
        "all_ok": not bad,
    }
    if args.file:
        summary["report"] = docs[0]
    _emit(summary, args.out)
    for inst, d in bad:
        sys.stderr.write("violation: " + json.dumps(instances.instance_to_json(inst)) + "\n")
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_ratio(args) -> int:
    inst = instances.load_instance(args.file)
    report = fingerhut.ratio_report(inst, optimal=args.optimal, tol=args.tol, seed=_seed(args))
    _emit(report.to_dict(), args.out)
    return EXIT_OK


def cmd_matching(args) -> int:
    inst = instances.load_instance(args.file)
    m = fingerhut.max_weight_matching_bruteforce(inst)
    report = fingerhut.ratio_report(inst, edges=m.pairs, optimal=True, tol=args.tol, seed=_seed(args))
    doc = {
        "matching": [[e.i, e.j, e.weight] for e in m.pairs],
        "total_weight": m.total_weight,
        "ratio": report.to_dict(),
        "within_sqrt2": report.optimal_ratio <= fingerhut.SQRT2 + 1e-6,
        "within_conjectured": report.optimal_ratio <= fingerhut.CONJECTURED_ALPHA + 1e-6,
    }
    _emit(doc, args.out)
    return EXIT_OK if doc["within_sqrt2"] else EXIT_VIOLATION


def cmd_search(args) -> int:
    res = fingerhut.lower_bound_search(seed=_seed(args), restarts=args.restarts, budget=args.budget)
    doc = {
        "id": f"lower-bound-{_seed(args)}",
        "points": [list(p) for p in res.points],
        "ratio": res.ratio,
        "target": fingerhut.TREE_LOWER_BOUND,
        "restart": res.restart,
        "evaluations": res.evaluations,
        "restart_best": res.history,
    }
    _emit(doc, args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    inst = instances.load_instance(args.file)
    tree = max_spanning_tree(inst)
    circle, _ = smallest_enclosing_circle(inst, seed=_seed(args))
    disks = diametral_disks(inst, tree) if args.disks else []
    ellipses = []
    if args.ellipses is not None:
        pts = inst.points
        ellipses = [fingerhut.EllipseSpec(pts[e.i], pts[e.j], args.ellipses) for e in tree.edges]
    render_svg(inst, tree, circle, disks, ellipses, args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = instances.load_instance(args.file)
    n = len(inst)
    doc = {"id": inst.id, "n": n}
    ok = True
    tree = max_spanning_tree(inst)
    doc["kruskal_weight"] = tree.total_weight
    doc["cycle_certificate"] = verify_max_tree(inst, tree)
    ok &= doc["cycle_certificate"]
    if n <= MAX_ENUMERATION_POINTS:
        best = enumerate_best_tree_weight(inst)
        doc["enumerated_weight"] = best
        doc["tree_match"] = math.isclose(tree.total_weight, best, rel_tol=1e-9, abs_tol=1e-12)
        ok &= doc["tree_match"]
    circle, _ = smallest_enclosing_circle(inst, seed=_seed(args))
    doc["sec_radius"] = circle.radius
    if n <= MAX_BRUTEFORCE_POINTS:
        brute = sec_bruteforce(inst)
        doc["bruteforce_radius"] = brute.radius
        doc["sec_match"] = math.isclose(circle.radius, brute.radius, rel_tol=1e-9, abs_tol=1e-12)
        ok &= doc["sec_match"]
    doc["ok"] = bool(ok)
    _emit(doc, args.out)
    return EXIT_OK if ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mstpierce", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, file_required=True):
        p.add_argument("--file", required=file_required, help="instance JSON file")
        p.add_argument("--seed", type=int, default=None, help="run seed (falls back to $PIERCE_SEED, then 0)")
        p.add_argument("--out", help="write JSON here instead of stdout")

    p = sub.add_parser("verify", help="check the piercing theorem on a file or generated instances")
    common(p, file_required=False)
    p.add_argument("--gen", choices=instances.GENERATORS, default="uniform-square")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=256)
    p.add_argument("--tree", help="JSON edge list to check instead of the computed maximum tree")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--helly-max-edges", type=int, default=HELLY_MAX_EDGES)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ratio", help="Fingerhut ratios of the maximum tree")
    common(p)
    p.add_argument("--optimal", action="store_true", help="also minimize the ratio over all points")
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("matching", help="brute-force maximum matching and its ratios")
    common(p)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_matching)

    p = sub.add_parser("search-lower-bound", help="anneal four-point sets with a large optimal ratio")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("render", help="draw the instance as SVG")
    common(p)
    p.add_argument("--disks", action="store_true", help="draw the diametral disks of the tree")
    p.add_argument("--ellipses", type=float, metavar="ALPHA", help="draw tree-edge ellipses at this ratio")
    p.set_defaults(func=cmd_render)
    p._option_string_actions["--out"].required = True

    p = sub.add_parser("oracle", help="cross-check tree and circle against brute force")
    common(p)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, ParseError, GeometryError, OddCount, TooLarge, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
