"""A nonnegatively curved disk bundle and its double.

The disk bundle over CP^1 carries a cohomogeneity-one metric determined by
one profile function phi, which starts like r/2 and becomes constant b
from r0 on.  Along a normal geodesic the curvature operator is
block-diagonal and R + tau star >= 0 holds for tau = -phi'/(2 b^2) <= 0.
Gluing two copies along the round end gives a metric on CP^2 # CP^2 with
tau <= 0 everywhere and tau = 0 on the neck.
"""

import numpy as np

from areaext.families import (
    cheeger_glued,
    feasible_plateau_ratio,
    gz_curvature_at,
    gz_profile,
    min_plateau_ratio,
    validate_gz,
)
from areaext.thorpe import tau_interval

p = gz_profile(b=1.0, r0=10.0, rmax=12.0)
print(f"profile parameter mu = {p.mu:.6f}")
print(f"plateau must start after {min_plateau_ratio():.4f} b to be concave "
      f"and after {feasible_plateau_ratio():.4f} b to give R + tau star >= 0")
print(f"validation: {validate_gz(p)}")

print("\n    r      phi     phi'    tau      interval width   scal")
for r in np.linspace(0, 12, 13):
    d = gz_curvature_at(p, r)
    iv = tau_interval(d.R)
    print(f"  {r:5.1f}  {d.extras['phi']:.4f}  {d.extras['phiPrime']:.4f}  "
          f"{d.tau:+.4f}  {iv.width:.1e}          {d.scal:.4f}")

print("\nglued metric on CP^2 # CP^2")
rs = np.linspace(0, 24, 25)
taus = [cheeger_glued(p, r).tau for r in rs]
print("  tau(r):", " ".join(f"{t:+.2f}" for t in taus))
print(f"  max tau = {max(taus):.1e}, zero on the neck [{p.r0}, {2 * p.rmax - p.r0}]")

print("\na plateau that starts too early")
rep = validate_gz(gz_profile(1.0, 5.0, 6.0))
print(f"  {rep.reason}")
