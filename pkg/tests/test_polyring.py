import pytest

from ttgeom.groebner import GroebnerBudgetExceeded
from ttgeom.homalg import cohomology_presentation
from ttgeom.modrep import elementary_abelian
from ttgeom.polyring import (GradedPolyRing, HomogeneousIdeal, ParseError, RingHom, commutative_reduction,
                             contract, groebner, identity_hom, in_image, kernel, membership,
                             polynomial_ring, radical_membership)


@pytest.fixture
def kxy():
    return polynomial_ring(2, "x, y")


def test_parse_and_print(kxy):
    f = kxy.parse("x^2 + x*y + x*y")
    assert str(f) == "x^2"
    assert kxy.parse("(x+y)^2") == kxy.parse("x^2 + y^2")
    with pytest.raises(ParseError):
        kxy.parse("x + * y")
    with pytest.raises(ParseError):
        kxy.parse("z")


def test_graded_sign_rule():
    R = cohomology_presentation(elementary_abelian(3, 2))
    e1, e2 = R.gen("eta1"), R.gen("eta2")
    assert e1 * e1 == R.zero()
    assert e1 * e2 + e2 * e1 == R.zero()


def test_commutative_reduction():
    R = cohomology_presentation(elementary_abelian(2, 2))
    red, phi = commutative_reduction(R)
    assert red is R and phi.images == tuple(R.gens())
    R = cohomology_presentation(elementary_abelian(3, 1))
    red, phi = commutative_reduction(R)
    assert red.names == ["theta1"]
    assert phi(R.gen("eta1")) == red.zero()
    red, _ = commutative_reduction(cohomology_presentation(elementary_abelian(3, 2)))
    assert red.names == ["theta1", "theta2"]


def test_groebner_examples(kxy):
    assert groebner(HomogeneousIdeal(kxy, [])) == []
    gb = groebner(HomogeneousIdeal(kxy, ["x^2", "x*y"]))
    assert sorted(map(str, gb)) == ["x*y", "x^2"]
    gb = groebner(HomogeneousIdeal(kxy, ["x+y", "x"]))
    assert sorted(map(str, gb)) == ["x", "y"]


def test_membership_examples(kxy):
    I = HomogeneousIdeal(kxy, ["x^2", "x*y"])
    assert membership(kxy.zero(), I)
    assert not membership("y", HomogeneousIdeal(kxy, ["x"]))
    assert membership("x^2*y", I)


def test_radical_membership_examples(kxy):
    I = HomogeneousIdeal(kxy, ["x^2"])
    assert radical_membership("x", I)
    assert not radical_membership("y", I)
    unit = HomogeneousIdeal(kxy, [kxy.one()])
    assert radical_membership("x*y + y^2", unit)


def test_contract_examples(kxy):
    J = HomogeneousIdeal(kxy, ["x"])
    same = contract(identity_hom(kxy), J)
    assert groebner(same) == groebner(J)
    kt = polynomial_ring(2, "t")
    diag = RingHom(kxy, kt, ["t", "t"])
    assert [str(g) for g in groebner(kernel(diag))] == ["x + y"]
    k = GradedPolyRing(2, [], ())
    aug = RingHom(polynomial_ring(2, "x"), k, [k.zero()])
    assert [str(g) for g in groebner(kernel(aug))] == ["x"]


def test_relations_and_images():
    p = 2
    R = polynomial_ring(p, "eta, theta", [1, 2], relations=["eta^2"])
    S = polynomial_ring(p, "x")
    phi = RingHom(R, S, ["0", "x^2"])
    assert in_image(phi, S.parse("x^4"))
    assert not in_image(phi, S.parse("x"))
    with pytest.raises(ValueError):
        RingHom(R, S, ["x", "x^2"])  # eta^2 would map to x^2


def test_budget_is_enforced():
    R = polynomial_ring(3, "a, b, c, d")
    I = HomogeneousIdeal(R, ["a^3 + b^2*c", "a*b*c + d^3", "b^3 + a*c*d + c^3", "a^2*d + b*c*d"])
    with pytest.raises(GroebnerBudgetExceeded):
        I.full_basis(budget=2)
