"""Twisting the boundary condition by exp(2 pi i alpha) and counting states that flow.

Run: python demos/moving_states.py
"""

from kappa_landau import ModelParams
from kappa_landau.ladder import escaping_images, normalizable_lattice, spectral_flow_index

for kappa in (1, 0, -1):
    p = ModelParams(kappa, 2)
    print(f"kappa={kappa}: flow index {spectral_flow_index(p)}")
    for alpha in (0.0, 0.5):
        states = normalizable_lattice(p, alpha, l_max=1, m_window=(-3, 3))
        lost = escaping_images(p, alpha, l_max=1, m_window=(-3, 3))
        print(f"  alpha={alpha}: {len(states)} states, {len(lost)} images leave the space")
