"""Deciding sec >= 0 with a single parameter.

A curvature operator R on 2-vectors has nonnegative sectional curvature
exactly when R + tau * star is positive semidefinite for some real tau.
The minimum eigenvalue of R + tau * star is concave in tau, so the set of
good tau is an interval that a scalar search finds.  This script walks
through the model spaces and one operator that fails.
"""

import numpy as np

from areaext.exterior import hodge_star, sec_max_bruteforce, sec_min_bruteforce
from areaext.families import fubini_study, product_spheres, round_sphere
from areaext.thorpe import sec_nonneg, shifted_min_eigenvalue, tau_interval

models = {
    "round S^4": round_sphere().R,
    "Fubini-Study": fubini_study().R,
    "Fubini-Study, reversed": fubini_study(-1).R,
    "S^2 x S^2": product_spheres().R,
}

print("tau intervals of the model spaces")
for name, r in models.items():
    iv = tau_interval(r)
    print(f"  {name:24s} [{iv.tau_min:+.6f}, {iv.tau_max:+.6f}]  strict={iv.strict}")

print("\nthe concave profile lambda_min(R + tau star) for Fubini-Study")
fs = models["Fubini-Study"]
for tau in np.linspace(-1, 3, 9):
    print(f"  tau = {tau:+.2f}   lambda_min = {shifted_min_eigenvalue(fs, tau):+.4f}")

print("\nbrute-force sectional range of Fubini-Study on a 200 x 200 grid")
lo, _ = sec_min_bruteforce(fs, 200)
hi, _ = sec_max_bruteforce(fs, 200)
print(f"  {lo:.6f} <= sec <= {hi:.6f}")

print("\nan operator with a negative plane")
bad = np.diag([1.0, -0.2, 0.3, 0.3, 0.5, 0.5])
bad -= np.trace(hodge_star() @ bad) / 6 * hodge_star()
cert = sec_nonneg(bad)
print(f"  nonnegative: {cert.nonnegative}")
print(f"  witness plane sec = {cert.counterexample_sec:.6f}")
print(f"  plane (SD, ASD parts): {np.round(cert.counterexample.sd, 4)}, "
      f"{np.round(cert.counterexample.asd, 4)}")
