"""Landau levels of a field beta = 2 as the curvature moves from sphere to hyperbolic plane.

Run: python demos/curvature_sweep.py
"""

from fractions import Fraction

from kappa_landau import ModelParams, admissible_levels

BETA = 2

for kappa in (Fraction(1), Fraction(1, 2), Fraction(0), Fraction(-1, 2), Fraction(-1)):
    p = ModelParams(kappa, BETA)
    levels = admissible_levels(p, l_max=4)
    cells = ", ".join(f"E{ln.l}={ln.energy} (x{ln.degeneracy})" for ln in levels)
    print(f"kappa={str(kappa):>5}: {cells}")
