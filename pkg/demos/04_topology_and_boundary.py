"""Index arithmetic and the boundary term.

A positive index forces a harmonic spinor, which is what makes the
curvature estimates bite.  For closed simply connected targets the index
condition reduces to 4 + 4 b+ > 0, which always holds.  On manifolds with
boundary an extra term from the second fundamental form appears; when the
boundary is convex it is controlled by the mean curvatures.
"""

import warnings

import numpy as np

from areaext.boundary import BoundaryData, mean_curvature_bound, q_spectrum
from areaext.topology import (
    NonIntegerIndexWarning,
    TopologyData,
    class_predicates,
    index_boundary,
    index_closed,
    simply_connected_data,
)

print("closed targets, degree 1 self-maps")
for name, (bp, bm) in {"S^4": (0, 0), "CP^2": (1, 0), "S^2 x S^2": (1, 1), "CP^2 # CP^2": (2, 0)}.items():
    chi, sigma = simply_connected_data(bp, bm)
    t = TopologyData(chi, sigma, sigma, 1, b2_m=bp + bm)
    print(f"  {name:12s} chi={chi} sigma={sigma:+d}  index={index_closed(t)}  "
          f"classes={class_predicates(t)}")

print("\nthe ball and a ball-like target")
ball = TopologyData(1, 0, 0, 1, 1, 0)
print(f"  index {index_boundary(ball)}, classes {class_predicates(ball)}")
with warnings.catch_warnings(record=True) as w:
    warnings.simplefilter("always", NonIntegerIndexWarning)
    val = index_boundary(TopologyData(0, 0, 0, 1, 1, 0))
    print(f"  inconsistent data give {val}: {w[0].message}")

print("\nboundary term for a convex boundary")
for ii, h_n in [(np.eye(3), 3.0), (np.diag([2.0, 1.0, 0.0]), 5.0)]:
    bd = BoundaryData(ii, h_n)
    print(f"  II = diag{np.diag(ii).tolist()}, H_N = {h_n}: Q spectrum "
          f"{np.round(q_spectrum(bd), 6)}, bound {mean_curvature_bound(bd):+.3e}")
bd = BoundaryData(np.diag([1.0, -1.0, -1.0]), -1.0)
print(f"  a saddle-shaped boundary: bound {mean_curvature_bound(bd, check_hypothesis=False):+.3f}")
