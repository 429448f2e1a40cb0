"""Three symbols s + c1 + a 2^-s + b 4^-s on either side of the critical line.

For a <= 4b the operator is bounded iff Re c1 >= a^2/(8b) + b and compact iff
the inequality is strict; at equality it depends on whether a = 4b.  The script
prints the classifier verdicts next to certified norms of n^-phi along n = 2^j.
"""

from wiener_dirichlet import classify, norm_decay_profile, decay_slope
from wiener_dirichlet.symbol import parse_symbol

CASES = [
    ("above the threshold", "s + 1.25 + 1*2^-s + 1*4^-s"),
    ("at the threshold, a != 4b", "s + 1.125 + 1*2^-s + 1*4^-s"),
    ("at the threshold, a = 4b", "s + 3 + 4*2^-s + 1*4^-s"),
]
N_VALUES = [2**j for j in range(4, 15, 2)]

for label, text in CASES:
    sym = parse_symbol(text)
    rep = classify(sym)
    print(f"{label}: {text}")
    print("  verdicts:", rep.verdicts)
    print("  rules:", sorted({e.rule for e in rep.evidence}))
    profile = norm_decay_profile(sym, N_VALUES)
    for n, c in profile:
        print(f"  n = 2^{n.bit_length() - 1:<2d}  norm in [{c.lower:.10f}, {c.upper:.10f}]")
    print(f"  log-log slope {decay_slope(profile):+.4f}\n")
