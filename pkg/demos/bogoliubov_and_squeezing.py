"""Bogoliubov coefficients and squeezing spectra of a sub-threshold cavity.

Walks through the frequency-domain field map for a mid-finesse cavity:
its unitarity, its periodicity in the free spectral range, and the
quadrature noise it produces as gain approaches threshold.
"""

import math

import numpy as np

import cespdc

cav = cespdc.make_cavity(0.9, 0.95)
print(f"threshold r_th = {cespdc.threshold(cav):.6f}")

# %% The field map is unitary at every sideband frequency
gain = cespdc.make_gain(cav, fraction=0.5)
omega = np.linspace(-math.pi, math.pi, 9)
c = cespdc.coeffs(cav, gain, omega)
for w, a, b, defect in zip(omega, c.A, c.B, c.unitarity_defect()):
    print(f"omega={w:+.3f}  |A|={abs(a):8.4f}  |B|={abs(b):8.4f}  defect={defect:+.1e}")

# %% On resonance, squeezing deepens with gain while the anti-squeezed quadrature grows
print("\nfrac    S(0, best)   S(0, worst)   product")
for frac in (0.1, 0.3, 0.5, 0.7, 0.9, 0.99):
    g = cespdc.make_gain(cav, fraction=frac)
    s_min, theta = cespdc.optimal_squeezing(cav, g, 0.0)
    s_max = cespdc.squeezing_spectrum(cav, g, 0.0, theta + math.pi)
    print(f"{frac:4.2f}   {float(s_min):10.5f}   {float(s_max):11.3f}   {float(s_min * s_max):8.4f}")

# %% Half an FSR away from resonance the cavity barely acts
g = cespdc.make_gain(cav, fraction=0.9)
print("\nS at half an FSR:", float(cespdc.optimal_squeezing(cav, g, math.pi)[0]))
print("|d(0)| condition hint near threshold:", cespdc.condition_hint(cav, g))
