"""Infimum of Re phi(sigma + it) over t, through the torus lift.

With multiplicatively independent frequencies the infimum equals the envelope
c0 sigma + Re c1 - sum |c_n| n^-sigma.  With dependent frequencies (2 and 4) the
phases are tied together and the infimum sits strictly above the envelope.
"""

from wiener_dirichlet import torus_minimum
from wiener_dirichlet.symbol import Symbol

for label, terms in [("independent {2, 3, 5}", {2: 0.5, 3: -0.3j, 5: 0.2 + 0.2j}),
                     ("independent {2, 6, 30}", {2: 0.5, 6: 0.4j, 30: -0.3}),
                     ("dependent {2, 4}", {2: 1.0, 4: 1.0})]:
    sym = Symbol.build(1, 0.5, terms)
    for sigma in (0.25, 1.0):
        res = torus_minimum(sym, sigma)
        print(f"{label:24s} sigma = {sigma:4}  min = {res.numeric_min:+.10f}  "
              f"certified >= {res.grid_lower:+.10f}  envelope = {res.envelope:+.10f}  torus dim {res.dims}")
