"""Write SVG figures for the unit square, a random instance and the frozen lower-bound set."""
import argparse
import json
from pathlib import Path

from mstpierce import Instance, max_spanning_tree, smallest_enclosing_circle
from mstpierce.fingerhut import SQRT2, EllipseSpec, TREE_LOWER_BOUND
from mstpierce.instances import RunConfig, generate
from mstpierce.piercing import diametral_disks
from mstpierce.svg import render_svg

ROOT = Path(__file__).parents[1]
parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--out", default=str(ROOT / "figures"))
args = parser.parse_args()
out = Path(args.out)
out.mkdir(exist_ok=True)


def draw(inst, name, alpha=None):
    tree = max_spanning_tree(inst)
    circle, _ = smallest_enclosing_circle(inst)
    ellipses = [EllipseSpec(inst.points[e.i], inst.points[e.j], alpha) for e in tree.edges] if alpha else []
    render_svg(inst, tree, circle, diametral_disks(inst, tree), ellipses, out / f"{name}.svg")
    print(out / f"{name}.svg")


draw(Instance(((0, 0), (1, 0), (1, 1), (0, 1)), "unit-square"), "unit_square", SQRT2)
draw(next(iter(generate(RunConfig(seed=7, n_range=(24, 24))))), "uniform_24")
frozen = json.loads((ROOT / "tests" / "fixtures" / "lower_bound_seed0.json").read_text())
draw(Instance(tuple(map(tuple, frozen["points"])), frozen["id"]), "lower_bound", TREE_LOWER_BOUND)
