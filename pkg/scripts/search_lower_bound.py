"""Anneal four-point sets for the largest forced ratio and freeze the winner as a fixture."""
import argparse
import json
import time
from pathlib import Path

from mstpierce import Instance, max_spanning_tree
from mstpierce.fingerhut import TREE_LOWER_BOUND, binding_edges, lower_bound_search, pair_minimax, tree_optimum
from mstpierce.instances import dumps

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--seed", type=int, default=0)
parser.add_argument("--restarts", type=int, default=32)
parser.add_argument("--budget", type=int, default=100_000)
parser.add_argument("--out", default=str(Path(__file__).parents[1] / "tests" / "fixtures" / "lower_bound_seed0.json"))
args = parser.parse_args()

t0 = time.time()
res = lower_bound_search(seed=args.seed, restarts=args.restarts, budget=args.budget)
elapsed = time.time() - t0

opt = tree_optimum(res.points)
edges = [(e.i, e.j) for e in max_spanning_tree(Instance(res.points)).edges]
bind = binding_edges(res.points, edges, opt.point)
doc = {
    "id": f"lower-bound-seed{args.seed}",
    "points": [list(p) for p in res.points],
    "ratio": opt.ratio,
    "target": TREE_LOWER_BOUND,
    "optimal_point": list(opt.point),
    "binding_edges": [list(e) for e in bind],
    "binding_pair_minimax": pair_minimax(res.points, bind[0], bind[1]) if len(bind) >= 2 else None,
    "search": {"seed": args.seed, "restarts": args.restarts, "budget": args.budget, "evaluations": res.evaluations},
}
Path(args.out).write_text(dumps(doc))
print(json.dumps({"ratio": opt.ratio, "gap_to_target": TREE_LOWER_BOUND - opt.ratio, "seconds": round(elapsed, 1)}))
