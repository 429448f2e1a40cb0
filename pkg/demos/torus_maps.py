"""Composition with self-maps of the polydisc.

A monomial map z -> (u_i z^{A_i}) keeps the l1 norm exactly when det A != 0;
otherwise two distinct monomials collide.  A map with a non-monomial component
always has two distinct powers whose spectra meet.  Powers of a Blaschke factor
grow like sqrt(n) in the l1 norm.
"""

import math

from wiener_dirichlet import (ComponentMap, MonomialMap, MultiPoly, blaschke_power_norm, compose,
                              isometry_check_Tk, lemma19_witness)

f = MultiPoly({(0, 0): 1, (1, 0): -2, (0, 1): 1j, (2, 3): 0.5})
for rows in ([[1, 1], [0, 1]], [[1, 2], [2, 4]]):
    m = MonomialMap(rows)
    res = isometry_check_Tk(m)
    image = compose(f, m).poly
    print(f"A = {rows}: isometry {res.isometry}, witness {res.witness}; "
          f"|f| = {f.norm():.4f}, |f o phi| = {image.norm():.4f}")
    if res.witness:
        a, b = res.witness
        g = MultiPoly({a: 1, b: -1})
        print(f"  z^{a} - z^{b} has norm {g.norm():.1f} but its image has norm {compose(g, m).poly.norm():.1f}")

z1, z2 = MultiPoly.variable(1), MultiPoly.variable(2)
phi = ComponentMap([0.5 * (z1 + z2), z1 * z2], 2)
w = lemma19_witness(phi)
pad = lambda a: a + (0,) * (2 - len(a))
print(f"phi = ((z1 + z2)/2, z1 z2): phi^{pad(w.alpha)} and phi^{pad(w.alpha_prime)} "
      f"share the monomial z^{pad(w.common)}")

for n in (16, 64, 256, 1024):
    c = blaschke_power_norm(0.5, 1, n)
    print(f"Blaschke a = 1/2, n = {n:4d}: norm in [{c.lower:.6f}, {c.upper:.6f}], lower/sqrt(n) = "
          f"{c.lower / math.sqrt(n):.4f}")
