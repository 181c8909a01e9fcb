"""How well does a single Lorentzian mode describe the multimode cavity?

Scans output-coupler and loss reflectivities above 0.5 and all gains up to
95% of threshold, then reports where the two models disagree most. The
deviation is measured on envelopes normalized to 1 at T = 0, as a fraction
of that zero-lag value.
"""

import numpy as np

import cespdc

rs = np.linspace(0.5, 0.99, 25)
fracs = np.linspace(0.01, 0.95, 19)
rows = cespdc.scan_models(rs, rs, fracs)
devs = np.array([row[3] for row in rows])
worst = rows[int(np.argmax(devs))]
print(f"{len(rows)} points, largest deviation {devs.max():.2%} at "
      f"r1={worst[0]:.3f} r2={worst[1]:.3f} gain={worst[2]:.2f} r_th")

for r1 in (0.99, 0.9, 0.7, 0.5, 0.3):
    cav = cespdc.make_cavity(r1, 0.95)
    dev = cespdc.compare_models(cav, cespdc.make_gain(cav, fraction=0.5))
    print(f"r1 = {r1:4.2f}: deviation {dev:.3%}")
