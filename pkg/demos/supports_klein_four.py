"""
Supports over the Klein four group
==================================

Every finite-dimensional module over k[Z/2 x Z/2] gets a closed subset of
Proj k[eta1, eta2], i.e. a finite set of points of the projective line plus
possibly the whole line.  We compute it twice: once from the annihilator of
Ext*(k, End M), and once by testing freeness on cyclic shifted subgroups.
"""

import numpy as np

from ttgeom.corpus import line_module, module_corpus
from ttgeom.homalg import annihilator_candidate
from ttgeom.modrep import direct_sum, elementary_abelian, free_module, tensor_diag, trivial_module
from ttgeom.rankvariety import cross_check, supp_points
from ttgeom.speclattice import v_of

G = elementary_abelian(2, 2)

###############################################################################
# The three basic shapes: everything, nothing but the irrelevant point, a line.

for M in [trivial_module(G), free_module(G), line_module(G, (1, 1))]:
    res = annihilator_candidate(M)
    print(f"{M.name or 'kG':8s} dim {M.dim:2d}  supp = {v_of(res.ideal).describe():20s}"
          f" stable for D in {res.window}")

###############################################################################
# Rank varieties over F_4 see the same picture pointwise.  A point alpha is in
# the support when u_alpha = alpha_1 z_1 + alpha_2 z_2 does not act freely.

L = line_module(G, (1, 1))
cls = supp_points(L, ext_degree=2)
for pt, inside in zip(cls.points, cls.members):
    print(pt.describe(), "in supp" if inside else "free")

###############################################################################
# Supports of sums are unions, supports of tensor products are intersections.

A, B = line_module(G, (1, 0)), line_module(G, (0, 1))
print("A + B :", v_of(annihilator_candidate(direct_sum(A, B)).ideal).describe())
print("A (x) B:", v_of(annihilator_candidate(tensor_diag(A, B)).ideal).describe())

###############################################################################
# A random corpus: the two methods never disagree.

rng = np.random.default_rng(3)
failures = 0
for M in module_corpus(G, 20, rng):
    rep = cross_check(M, ext_degree=2)
    failures += len(rep.hard_failures)
print("hard failures on 20 random modules:", failures)
