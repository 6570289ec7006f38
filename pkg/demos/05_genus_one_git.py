"""The genus-1, two-point moduli: chart relations, the chart transition as a
polynomial identity, and the GIT quotients through Hilbert functions.

The second chart's constants are (1/a, a^2 b, a^3 e, a^4 pi); verifying the
chart transition symbolically reduces every certificate polynomial to zero
over Q(a, b, e, pi).  The twisted invariant algebras A(u, v) have the same
graded dimensions as the weight-(2,3,4) polynomial ring, which identifies
the quotients with the weighted projective plane.
"""

from curvealg.genus_one import (HilbertSpec, U1Chart, bundle_glue_check,
                                hilbert_A, transition, transition_symbolic,
                                u1_relations, weighted_proj_compare)

chart = U1Chart(1, 1, 0, 0)
print("chart (a, b, e, pi) = (1, 1, 0, 0), s1 =", chart.s1)
rs = u1_relations(chart)
for r in rs.relations:
    print("  ", r, "= 0")
print("closure:", rs.closure_check(12).to_json()["verdict"])

cert = transition(chart)
print("\ntransition to the second chart:", cert.chart2)
print("certificate:", cert.to_json()["verdict"])
print("involutive:", transition(cert.chart2).chart2 == chart)

sym = transition_symbolic()
print("\nsymbolic certificate over Q(a, b, e, pi):")
for name, rem in sym.remainders.items():
    print("  %s  ->  remainder %s" % (name, rem))

print("\nbundle cocycle identities:", bundle_glue_check(None, symbolic=True)["verdict"])

print("\nHilbert function of A(1,1):", hilbert_A(HilbertSpec(1, 1, 12)))
for u, v in [(1, 1), (2, 1)]:
    rep = weighted_proj_compare(HilbertSpec(u, v, 40))
    print("A(%s,%s) vs weight-(2,3,4) ring to n=40:" % (u, v),
          rep.to_json()["verdict"], "(Veronese step %s)" % rep.veronese_step)
rep = weighted_proj_compare(HilbertSpec("1/2", "1/2", 10))
print("degenerate (1/2, 1/2):", rep.status)
