"""Piercing the diametral disks of a Euclidean maximum spanning tree."""
from .geom import Circle, Disk, Edge, Point, Tolerance, angle_at, circumcircle, dist, in_diametral_disk
from .spanning import Instance, Tree, enumerate_best_tree_weight, max_spanning_tree, verify_max_tree
from .enclosing import SupportSet, sec_bruteforce, smallest_enclosing_circle

__version__ = "0.1.0"
