"""Cross-checking the frequency-domain comb with a round-trip moment recursion.

The oracle never touches d(omega) or F(k): it iterates the exact second
moments of the intracavity field once per round trip and reads off the
output correlators directly.
"""

import numpy as np

import cespdc
from cespdc.oracle import spectral_radius

cav = cespdc.make_cavity(0.9, 0.9)
gain = cespdc.make_gain(cav, fraction=0.5)

print("spectral radius of the moment map:", spectral_radius(cav, gain.r))
state = cespdc.steady_state(cav, gain)
print(f"steady state n = {state.n:.6f}, m = {state.m:.6f}, physical: {state.is_physical()}")

oracle = cespdc.g2_from_moments(cespdc.two_time_output_correlators(cav, gain, 30))
comb = cespdc.g2_comb(cav, gain, 30)
diff = np.abs(oracle.weights - comb.weights / comb.weights[0])
print(f"max normalized weight difference over k <= 30: {diff.max():.2e}")
