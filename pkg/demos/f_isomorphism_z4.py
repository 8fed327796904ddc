"""
Restriction from Z/4 to Z/2
===========================

H*(Z/4; F_2) = k[eta, theta]/(eta^2) with |eta| = 1, |theta| = 2, and the
restriction to the subgroup of order 2 kills eta and sends theta to x^2.
The kernel is nilpotent and every class of the target has a 2^t-th power in
the image, so the map is an isomorphism up to inseparable isogeny.  The
presentation itself is checked against a minimal resolution over k[z]/(z^4).
"""

from ttgeom.field import GF
from ttgeom.modrep import GroupData
from ttgeom.polyring import RingHom, polynomial_ring
from ttgeom.quillen import CohomologyPresentation, certify_presentation, f_isomorphism_check

src = polynomial_ring(2, "eta, theta", [1, 2], relations=["eta^2"], name="H*(Z/4)")
tgt = polynomial_ring(2, "x", name="H*(Z/2)")
res = RingHom(src, tgt, ["0", "x^2"])

rep = f_isomorphism_check(res, degree_bound=10, t_max=3)
print("verdict:", rep.verdict, " t =", rep.exponent)
for element, nilpotent, t in rep.kernel:
    print("kernel generator", element, "nilpotent" if nilpotent else "NOT nilpotent", "t =", t)

ok, presented, computed = certify_presentation(CohomologyPresentation(src, "hand"), GroupData(GF(2), [4]), 8)
print("presentation certified to degree 8:", ok, computed)

###############################################################################
# Squaring is not enough when the image only contains fourth powers at p = 2.

quartic = RingHom(polynomial_ring(2, "y", [4]), tgt, ["x^4"])
print(f_isomorphism_check(quartic, degree_bound=8, t_max=1).verdict,
      f_isomorphism_check(quartic, degree_bound=8, t_max=2).verdict)
