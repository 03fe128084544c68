#!/usr/bin/env python3
"""Arc unions on the circle and the exact coefficients of their indicators.

Walks through canonical forms (wrap splitting, overlap merging), complements,
periodized arc families, and the closed-form Fourier coefficients with their
quadrature cross-check.
"""

import numpy as np

from rieszseq import torus

print("== canonical arc unions ==")
s = torus.normalize([(0.9, 1.2), (0.05, 0.25), (0.2, 0.3)])
print("input  : [(0.9, 1.2), (0.05, 0.25), (0.2, 0.3)]")
print("canonical arcs:", [(a.start, a.end) for a in s.arcs])
print("measure:", s.measure)

c = torus.complement(s)
print("complement arcs:", [(round(a.start, 3), round(a.end, 3)) for a in c.arcs])
print("measures add to 1:", s.measure + c.measure)

print("\n== periodized small arcs ==")
p = torus.scale_periodize(0.05, 4)
print("half-width 0.05/4 copies at k/4:", [(a.start, a.end) for a in p.arcs])
print("measure = 2*delta:", p.measure)

print("\n== closed-form coefficients vs quadrature ==")
half = torus.normalize([(0.0, 0.5)])
for k in (0, 1, 2, 3):
    exact = torus.fourier_coeff(half, k)
    approx = torus.quadrature_coeff(half, k, 10 ** 5)
    print(f"k={k}: closed {exact:.12f}   quadrature {approx:.12f}   |diff| {abs(exact - approx):.2e}")
print("magnitude of c_hat(1) is 1/pi:", abs(torus.fourier_coeff(half, 1)), "=", 1 / np.pi)

print("\n== coefficient table invariants ==")
table = torus.fourier_table(s, 16)
print("c_hat(0) equals the measure:", table.get(0))
print("conjugate symmetry at k=7:", table.get(-7), "=conj=", table.get(7).conjugate())
energy = table.power(0) + 2 * sum(table.power(k) for k in range(1, 17))
print(f"partial coefficient energy {energy:.6f} <= measure {s.measure:.6f}")
