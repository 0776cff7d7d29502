#!/usr/bin/env python3
"""Narrative tour of the omlprob toolkit.

Runs end to end in a few seconds and prints what it finds at every
step: lattice construction and validation, the parametric Gamma9
family on MO(2) with its identities and induced states, derived j-,
d-, and projection maps, state-space classification, Bell-type and
Jauch-Piron certification, and the pseudometric vertex sweep.
"""

from fractions import Fraction as F

from omlprob import analysis, bimaps, lattice, states
from omlprob.rational import fmt_rat


def banner(title):
    print()
    print("=" * 64)
    print(title)
    print("=" * 64)


# -- 1. lattices ---------------------------------------------------------

banner("1. Orthomodular lattices")

mo2 = lattice.mo(2)
b3 = lattice.boolean_algebra(3)
hs3 = lattice.horizontal_sum(
    [lattice.boolean_algebra(3), lattice.boolean_algebra(2),
     lattice.boolean_algebra(2)])

for l in (mo2, b3, hs3):
    blks = lattice.blocks(l)
    print("%-28s blocks: %d  %s" % (l, len(blks), sorted(map(sorted, blks))))

print()
print("Compatibility in MO(2): a and b are", lattice.classify_pair(
    mo2, "a", "b").tag, "| a and a' are", lattice.classify_pair(
    mo2, "a", "a'").tag)

try:
    lattice.validate_oml(lattice.hexagon_candidate())
except lattice.OrthomodularLawFailure as exc:
    print("The hexagon is rejected, as it must be:", exc)


# -- 2. the parametric Gamma9 family -------------------------------------

banner("2. A parametric Gamma9 map on MO(2)")

G = bimaps.build_table3_family(F(3, 4), F(1, 4), F(1, 2), F(1, 2))
tag = bimaps.classify_family(G)
print("Family:", tag)
print("g-map axioms:", "OK" if bimaps.check_g_map(G).ok else "FAIL")

print()
print("Full value table G(row, col):")
header = "      " + "".join("%6s" % x for x in mo2.elements)
print(header)
for a in mo2.elements:
    print("%5s " % a + "".join("%6s" % fmt_rat(G(a, x))
                               for x in mo2.elements))

for rep in (bimaps.verify_lemma_komp(G),
            bimaps.verify_gamma9_identities(G),
            bimaps.semantic_check_on_compatible(G)):
    print("identity %-28s %s" % (rep.name, "OK" if rep.ok else "FAIL"))

pure, witness = bimaps.is_pure_projection(G)
print("pure projection:", pure, "(first witness: %s)" % (witness,))

print()
print("Each column of a Gamma9 map is a state; column b gives:")
m = bimaps.induced_state_from_gamma9(G, "b")
print("   ", {a: fmt_rat(m(a)) for a in mo2.elements})
states.validate_state(mo2, m)
print("    validated as a state on MO(2)")


# -- 3. derived maps from an s-map ---------------------------------------

banner("3. Derived maps from an s-map vertex")

from omlprob.linear import enumerate_vertices
vec = enumerate_vertices(bimaps.smap_system(mo2))[0]
P = bimaps.BiMap.from_vector(mo2, vec)
print("s-map axioms:", "OK" if bimaps.check_s_map(P).ok else "FAIL")

Q = bimaps.derive_j_from_s(P)
D = bimaps.derive_d_from_s(P)
Pi = bimaps.derive_pure_projection_from_s(P)
print("derived j-map is a j-map:", bimaps.check_j_map(Q).ok,
      "| family", bimaps.classify_family(Q).gamma)
print("derived d-map is a d-map:", bimaps.check_d_map(D).ok,
      "| family", bimaps.classify_family(D).gamma)
print("derived projection family:", bimaps.classify_family(Pi).gamma,
      "| pure:", bimaps.is_pure_projection(Pi)[0])
m_p = bimaps.induced_state_from_smap(P)
print("induced state m_p:", {a: fmt_rat(m_p(a)) for a in mo2.elements})


# -- 4. state spaces -----------------------------------------------------

banner("4. State-space classification")

for l in (lattice.boolean_algebra(1), b3, mo2, hs3):
    cls = states.classify_states(l)
    print("%-28s %-13s affine dim %d" % (l, cls.tag, cls.polytope.dim))

verts = states.state_vertices(mo2)
print()
print("MO(2) has %d extreme states; the 0/1-valued ones:" % len(verts))
for v in verts:
    if all(v(a) in (0, 1) for a in mo2.elements):
        print("   ", {a: fmt_rat(v(a)) for a in mo2.elements})


# -- 5. property certification -------------------------------------------

banner("5. Bell-type and Jauch-Piron certification")


def show(verdict):
    line = "%-18s on %-28s %s" % (verdict.property, verdict.scope,
                                  verdict.verdict)
    if verdict.verdict == "violated" and verdict.witness:
        value = verdict.witness.get("value") or verdict.witness.get("max")
        if value:
            line += "  witness value = %s" % value
    print(line)


for l in (mo2, b3):
    show(analysis.bell1_state(l))
    show(analysis.bell1_smap(l))
show(analysis.bell2_state(lattice.mo(3)))
show(analysis.bell2_smap(mo2))
show(analysis.bell2_smap(mo2, require_pseudometric=True))
show(analysis.jauch_piron_state(mo2))
for l in (b3, mo2):
    show(analysis.jauch_piron_smap(l))


# -- 6. the pseudometric sweep -------------------------------------------

banner("6. Sweeping s-map vertices for non-pseudometric d-maps")

report = analysis.search_pseudometric_violation(
    [lattice.boolean_algebra(2), mo2])
print("outcome:", report.outcome)
for name, count in report.checked:
    print("  checked %-28s %d vertices" % (name, count))
if report.outcome == "witness":
    v = report.violation
    print("  witness: vertex %d of %s violates %s at %s" % (
        report.vertex_index, report.lattice, v.violated_axiom, v.witness))

print()
print("Done.")
