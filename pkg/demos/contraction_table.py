"""Distance between the curved and planar eigenfunctions along kappa = 2 beta/n.

Run: python demos/contraction_table.py [l] [m]
"""

import sys

from kappa_landau.eigenfunctions import contraction_deviation

l = int(sys.argv[1]) if len(sys.argv) > 1 else 0
m = int(sys.argv[2]) if len(sys.argv) > 2 else 2
print(f"beta=2, l={l}, m={m}")
print(f"{'n':>6} {'kappa':>10} {'psi':>10} {'constant':>10} {'envelope':>10} {'poly':>10}")
for n in (8, 16, 32, 64, 128, 256, 512, 1024, 4096):
    d = contraction_deviation(2, n, l, m)
    print(f"{n:>6} {float(d.kappa):>10.3g} {d.wavefunction:>10.2e} {d.constant:>10.2e} "
          f"{d.envelope:>10.2e} {d.hypergeometric:>10.2e}")
