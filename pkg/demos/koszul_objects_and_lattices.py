"""
Koszul objects realize closed sets
==================================

For a homogeneous ideal a of H*(E, k) the Koszul object kos(k, a) has
support exactly V(a).  So every closed subset of Proj H*(E, k) is the
support of some small object, and the lattice of such supports is the
lattice of closed sets.  Here E = (Z/3)^2, where the reduced cohomology
ring is k[theta1, theta2].
"""

from ttgeom.homalg import ext_ring, koszul_ideal, supp
from ttgeom.modrep import elementary_abelian, trivial_module
from ttgeom.polyring import HomogeneousIdeal
from ttgeom.speclattice import equal, hasse_dot, sublattice, v_of

E = elementary_abelian(3, 2)
R = ext_ring(E).ring
k = trivial_module(E)

ideals = {
    "theta1": ["theta1"],
    "theta1+theta2": ["theta1 + theta2"],
    "point": ["theta1", "theta2"],
    "eta1*eta2 + theta1": ["eta1*eta2 + theta1"],
}

###############################################################################
# The odd classes eta_i are nilpotent, so they do not change supports.

for label, gens in ideals.items():
    K = koszul_ideal(k, gens)
    s = supp(K)
    want = v_of(HomogeneousIdeal(R, gens))
    print(f"kos(k, {label:20s}) model dim {K.model.dim:3d}  supp {s.describe():28s} agrees: {equal(s, want)}")

###############################################################################
# The sub-lattice generated by two lines through the origin: five elements.

lines = [supp(koszul_ideal(k, ["theta1"])), supp(koszul_ideal(k, ["theta1 + theta2"]))]
elems = sublattice(lines)
print(len(elems), "elements")
print(hasse_dot(elems))
