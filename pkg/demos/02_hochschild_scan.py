"""Scan the bigraded Hochschild cohomology of a quiver algebra.

HH^i in internal degree t is computed from normalized cochains of arity
s = i - t.  The cells with i = 2 and t < 0 are the tangent directions of the
deformation problem; i = 3 carries the obstruction spaces.
"""

from curvealg.quiver import SubspaceW, build_ew
from curvealg.hochschild import reduced_complex, unnormalized_complex, vanishing_scan

E = build_ew(SubspaceW.zero(1))
table = vanishing_scan(E, i_max=3, t_min=-8)
print("one cuspidal point (n, g) = (1, 1):")
print(table.to_csv())
print("largest j with HH^2_{-j} nonzero:", table.max_nonzero(2))
print("largest j with HH^3_{-j} nonzero:", table.max_nonzero(3))

# the negative HH^2 total is the fiber dimension of the moduli over the
# Grassmannian: 2 for the cuspidal point (weights 4 and 6), 3 for the
# two-point algebra below (weights 2, 3, 4)
E2 = build_ew(SubspaceW(2, [[1, 1]]))
cx = reduced_complex(E2)
print("\ntwo-point algebra HH^2 profile:",
      {t: cx.hh_dim(2, t) for t in range(-6, 0)})

# the normalized complex agrees with the unnormalized one; this is the
# oracle comparison the acceptance suite runs at scale
ucx = unnormalized_complex(E2)
cells = [(i, t) for i in range(3) for t in range(-3, 1)]
print("reduced == unnormalized on", len(cells), "cells:",
      all(cx.hh_dim(i, t) == ucx.hh_dim(i, t) for i, t in cells))
