"""Optimal piercing ratio of maximum-weight matchings, compared against sqrt2 and 2/sqrt3."""
import argparse

import numpy as np

from mstpierce import Instance
from mstpierce.fingerhut import CONJECTURED_ALPHA, SQRT2, max_weight_matching_bruteforce, optimal_piercing_ratio

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--seed", type=int, default=0)
parser.add_argument("--trials", type=int, default=100, help="instances per size")
parser.add_argument("--sizes", type=int, nargs="+", default=[4, 6, 8, 10, 12])
args = parser.parse_args()

rng = np.random.default_rng(args.seed)
overall = (0.0, None)
print(f"{'2n':>3} {'mean':>9} {'max':>9} {'> 2/sqrt3':>10}")
for n in args.sizes:
    ratios = []
    for _ in range(args.trials):
        inst = Instance(tuple(map(tuple, rng.random((n, 2)))))
        m = max_weight_matching_bruteforce(inst)
        opt = optimal_piercing_ratio(inst.points, [(e.i, e.j) for e in m.pairs], tol=1e-7, budget=5000)
        ratios.append(opt.ratio)
        if opt.ratio > overall[0]:
            overall = (opt.ratio, inst.points)
    r = np.array(ratios)
    print(f"{n:>3} {r.mean():>9.6f} {r.max():>9.6f} {int((r > CONJECTURED_ALPHA).sum()):>10}")
print(f"empirical max {overall[0]:.6f}; 2/sqrt3 = {CONJECTURED_ALPHA:.6f}; sqrt2 = {SQRT2:.6f}")
print("worst instance:", [tuple(round(v, 6) for v in p) for p in overall[1]])
