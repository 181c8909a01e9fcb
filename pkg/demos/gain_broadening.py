"""Stimulated emission lengthens the correlations and raises the floor.

Compares the normalized envelopes at 1%, 50% and 90% of threshold for the
same cavity.
"""

import cespdc

cav = cespdc.make_cavity(0.9, 0.9)
fractions = (0.01, 0.5, 0.9)
envelopes = {}
for f in fractions:
    comb = cespdc.g2_comb(cav, cespdc.make_gain(cav, fraction=f), 30)
    envelopes[f] = cespdc.g2_envelope_normalized(comb)[1]
    floor = comb.background / (comb.weights[0] + comb.background)
    print(f"gain {f:4.0%} of threshold: background fraction {floor:.4f}")

print("\n  k " + "".join(f"{f:>10.0%}" for f in fractions))
for k in (0, 1, 2, 3, 5, 10, 20, 30):
    print(f"{k:3d} " + "".join(f"{envelopes[f][k]:10.4f}" for f in fractions))
