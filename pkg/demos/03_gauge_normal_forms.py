"""Gauge orbits of truncated minimal structures and their canonical normal
forms.

A gauge transform acts by conjugating the coderivation of the structure on
the truncated bar coalgebra.  The normal form strips, order by order, the
part of each component lying in the image of the differential; what remains
sits in the canonical pivot-rule complement and is a complete equivalence
invariant when HH^1 vanishes in negative degrees.
"""

import random

from curvealg.quiver import SubspaceW, build_ew
from curvealg.ainfinity import (AnStructure, emit_moduli_equations, equivalent,
                                extend_step, gauge_act, normalize, random_gauge,
                                tangent_dims)

rng = random.Random(0)
E = build_ew(SubspaceW(2, [[1, 1]]))

trivial = AnStructure.trivial(E, 6)
f = random_gauge(E, 6, rng)
m = gauge_act(f, trivial)
print("gauged trivial structure has nonzero components at:", sorted(m.comps))

nf, witness = normalize(m)
print("normal form is trivial again:", nf.is_trivial())
print("witness gauge has components at:", sorted(witness.comps))
print("witness really maps m to the normal form:",
      gauge_act(witness, m) == nf)

print("equivalent(m, trivial):", equivalent(m, trivial).equal)

ext = extend_step(m)
print("extension to order 7 solvable:", ext.solvable)

print("\ntangent data at this point of the Grassmannian:")
print(tangent_dims(E, 6))

# the moduli equations in coordinates on the canonical complements:
# their linearization at the origin has corank = sum of the HH^2 dimensions
eqs = emit_moduli_equations(E, 6)
print("\nmoduli equations: %d unknowns, %d equations, corank at 0 = %d"
      % (len(eqs.unknowns), len(eqs.equations), eqs.corank_at_zero()))
