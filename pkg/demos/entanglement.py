# Does an entangled ancilla help?
#
# Pair photon A with a qubit B that never enters the interferometer. Random
# entangled inputs never beat the best single-photon loss, and the zero-error
# family alpha |phi_+>|0> + beta |phi_->|1> is best at the product state.

import numpy as np

from ifmchannel import IfmParams, entangled_family_check, min_ploss, p_loss
from ifmchannel.sampling import random_pure

rng = np.random.default_rng(1)
p = IfmParams(8, 0.3, 0.5)
best = min_ploss(p).value
losses = [p_loss(random_pure(rng, 4), p) for _ in range(1000)]
print(f"single-photon min P_loss = {best:.5f}, smallest of 1000 random pairs = {min(losses):.5f}")

for alpha in np.linspace(0.0, 1.0, 6):
    res = entangled_family_check(alpha, np.sqrt(1 - alpha**2), p)
    print(f"alpha={alpha:.1f}  P_loss={res.p_loss:.5f}  P_error={res.p_error:.1e}")
