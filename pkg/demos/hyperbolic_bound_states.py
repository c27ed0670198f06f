"""Bound states on the hyperbolic plane seen through the horocyclic Morse problem.

Compares the closed-form levels with a finite-difference diagonalization of
the separated equation and prints the continuum threshold.

Run: python demos/hyperbolic_bound_states.py
"""

from kappa_landau import ModelParams
from kappa_landau import morse

p = ModelParams(-1, 3)
exact = morse.morse_discrete_spectrum(p)
numeric = morse.reduced_ode_eigenvalues(p, lambda_sep=0.5, count=len(exact))
print(f"threshold E = {morse.continuum_threshold(p)}")
for lv, num in zip(exact, numeric):
    print(f"l={lv.l}: E={lv.E} (finite differences {num:.6f}), Landau energy {lv.energy}, s={lv.s}")
