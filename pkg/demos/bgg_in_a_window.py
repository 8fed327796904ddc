"""
The exterior and symmetric sides
================================

Over k[(Z/p)^r] the group algebra is quasi-isomorphic, as a dg algebra, to
an exterior algebra on classes of degree -1.  Its Ext algebra is polynomial
on classes of degree 2.  The truncated Koszul bimodule F = S* (x) Lambda
carries this duality; all checks below are certified only in a finite
window of degrees.
"""

from ttgeom.bggdg import (SemifreeSModule, bgg_apply, bgg_bimodule, dg_homology, exterior_algebra,
                          ext_over_dg, phi_quasi_iso_check, symmetric_dims)

###############################################################################
# The Koszul dg algebra B of the group algebra has binomial homology, and
# xi_i -> z_i^(p-1) y_i realizes it.

for p, r in [(2, 2), (3, 2), (2, 3)]:
    rep = phi_quasi_iso_check(p, r)
    print(p, r, [rep.b_homology[-n] for n in range(r + 1)], "quasi-iso" if rep.ok else "FAILED")

###############################################################################
# F resolves k: its homology is one-dimensional, in degree 0.

F = bgg_bimodule(2, 6)
M = F.as_lambda_module()
H = dg_homology(M)
print("window", F.certified, "nonzero homology", {n: d for n, d in H.dims.items() if d})

###############################################################################
# S goes to k, and Ext over Lambda is the symmetric algebra again.

X = bgg_apply(SemifreeSModule.free(2), 6)
print({n: d for n, d in dg_homology(X).dims.items() if d})
print(ext_over_dg(exterior_algebra(2), 8), symmetric_dims(2, 8))
