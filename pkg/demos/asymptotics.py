# Large N behaviour at a = 0.5
#
# Both the loss minimum and the loss of phi_+ approach q (1+a)/(1-a) pi^2/4N.
# The residuals left after subtracting that term both shrink like 1/N^2.

import numpy as np

from ifmchannel import IfmParams, fit_order, geometric_ladder, ploss_min_asym, ploss_plus_asym

ladder = geometric_ladder(64, 4096)
plus = [ploss_plus_asym(IfmParams(n, 0.5, 1.0)) for n in ladder]
low = [ploss_min_asym(IfmParams(n, 0.5, 1.0)) for n in ladder]

print("    N      leading       min      phi_+   N^2 res(min)  N^2 res(phi_+)")
for e_lo, e_hi in zip(low, plus):
    n = e_lo.n_cycles
    print(f"{n:5d}  {e_lo.leading:.4e}  {e_lo.exact:.4e}  {e_hi.exact:.4e}  {e_lo.residual * n * n:11.3f}  {e_hi.residual * n * n:13.3f}")

print("fitted residual order, min:  ", round(fit_order(ladder, [e.residual for e in low]), 3))
print("fitted residual order, phi_+:", round(fit_order(ladder, [e.residual for e in plus]), 3))

# phi_+ loses q(1 - exp(-x)) with x close to the leading term, so the
# residual is -x^2/2 to first order:
print("predicted N^2 res(phi_+):", round(-0.5 * (3 * np.pi**2 / 4) ** 2, 3))
