"""Sweep generators and sizes, tabulating the worst angle at c* and the worst ratio there."""
import argparse
import math
import time

import numpy as np

from mstpierce.instances import GENERATORS, RunConfig, generate
from mstpierce.piercing import verify_piercing

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--seed", type=int, default=0)
parser.add_argument("--trials", type=int, default=1000)
parser.add_argument("--sizes", type=int, nargs="+", default=[2, 3, 4, 8, 16, 64, 256])
args = parser.parse_args()

print(f"{'generator':<16} {'n':>4} {'fail':>5} {'min angle':>11} {'max ratio':>10} {'sec':>6}")
for gen in GENERATORS:
    for n in args.sizes:
        t0 = time.time()
        fails, angle, ratio = 0, math.inf, 0.0
        for inst in generate(RunConfig(seed=args.seed, trials=args.trials, n_range=(n, n), generator=gen)):
            rep = verify_piercing(inst, seed=args.seed)
            fails += not rep.verdict
            angle = min(angle, rep.min_angle)
            c = np.asarray(rep.circle.center)
            P = inst.coords
            for e in rep.tree.edges:
                a, b = P[e.i], P[e.j]
                ratio = max(ratio, (np.hypot(*(a - c)) + np.hypot(*(b - c))) / e.weight)
        print(f"{gen:<16} {n:>4} {fails:>5} {math.degrees(angle):>10.4f}d {ratio:>10.6f} {time.time() - t0:>6.1f}")
