# Opaque object: three special input states
#
# With a fully absorbing object (a = 0) the photon is rotated by pi/2N per
# cycle and any amplitude in the object arm is lost. Three inputs stand out.

import numpy as np

from ifmchannel import IfmParams, discriminate, opaque_specials

N, q = 10, 0.5
phi_a, phi_b, phi_c = opaque_specials(N, q)

# phi_a minimizes the loss, phi_b = |1> has zero error, and phi_c has zero
# error but always loses the photon when the object is there.

for name, st in (("phi_a", phi_a), ("phi_b", phi_b), ("phi_c", phi_c)):
    res = discriminate(st.state_old, IfmParams(N, 0.0, q), with_povm=False)
    print(f"{name}: state={np.round(st.state_old, 4)}  P_loss={res.p_loss:.5f}  P_error={res.p_error:.2e}")


# The zero-error state |1> approaches the ideal q pi^2 / 4N loss as N grows.

for n in (10, 100, 1000):
    loss = opaque_specials(n, q)[1].value
    print(f"N={n:5d}  P_loss(|1>)={loss:.3e}  q pi^2/4N={q * np.pi**2 / (4 * n):.3e}")
