# Semitransparent object: where zero-error inputs exist
#
# With a transparency a > 0 a zero-error input exists only when
# k1 = (1+a)/(1-a) sin(pi/2N) <= 1. Below that line we get two states phi_+
# and phi_-; above it the best we can do is a small but nonzero error.

import numpy as np

from ifmchannel import IfmParams, brute_force_min, coeffs, min_ploss, zero_error_states

a, q = 0.5, 0.5
for n in (2, 4, 5, 10, 40):
    p = IfmParams(n, a, q)
    tc = coeffs(p)
    best = min_ploss(p)
    states = zero_error_states(p)
    if states is None:
        err = brute_force_min(p, "ERROR", grid=64).value
        print(f"N={n:3d} k1={tc.k1:.3f} {tc.regime.name:5s} min P_loss={best.value:.4f}  no zero-error input, min P_error={err:.2e}")
    else:
        plus = states[0]
        print(f"N={n:3d} k1={tc.k1:.3f} {tc.regime.name:5s} min P_loss={best.value:.4f}  P_loss(phi_+)={plus.value:.4f}")


# The largest transparency that still admits a zero-error input, per N

for n in (2, 5, 20, 100):
    s = np.sin(np.pi / (2 * n))
    print(f"N={n:4d}  a*={(1 - s) / (1 + s):.5f}")
