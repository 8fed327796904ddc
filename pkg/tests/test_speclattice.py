from hypothesis import given, settings, strategies as st

from ttgeom.polyring import HomogeneousIdeal, RingHom, polynomial_ring
from ttgeom.speclattice import (SpecSet, canonicalize, closed_image, equal, hasse_dot, join, leq, meet,
                                preimage, sublattice, v_of)

R = polynomial_ring(2, "x, y")
R3 = polynomial_ring(3, "x, y, z")


def V(*gens, ring=R):
    return v_of(HomogeneousIdeal(ring, list(gens)))


def test_v_of_examples():
    assert V("1").is_empty()
    assert V().is_whole()
    assert V("x").describe() == "V(x)"


def test_meet_examples():
    assert equal(meet(V("x"), V("y")), V("x", "y"))
    U = V("x*y + y^2")
    assert equal(meet(U, SpecSet.whole(R)), U)
    assert equal(meet(V("x"), V("x^2")), V("x"))


def test_join_examples():
    U = V("x")
    assert equal(join(U, SpecSet.empty(R)), U)
    both = join(V("x"), V("y"))
    assert len(both.components) == 2
    J = join(V("x"), V("x*y"))
    assert len(J.components) == 1 and equal(J, V("x*y"))


def test_leq_examples():
    assert leq(SpecSet.empty(R), V("x"))
    assert leq(V("x", "y"), V("x")) and not leq(V("x"), V("x", "y"))
    assert leq(V("x"), V("x^2")) and leq(V("x^2"), V("x"))


def test_preimage_and_image():
    kt = polynomial_ring(2, "t")
    diag = RingHom(R, kt, ["t", "t"])
    assert equal(preimage(diag, V("x")), v_of(HomogeneousIdeal(kt, ["t"])))
    assert preimage(diag, SpecSet.whole(R)).is_whole()
    img = closed_image(diag, SpecSet.whole(kt))
    assert equal(img, V("x + y"))
    assert closed_image(diag, SpecSet.empty(kt)).is_empty()
    ident = RingHom(R, R, R.gens())
    assert equal(preimage(ident, V("x")), V("x"))
    assert equal(closed_image(ident, V("y")), V("y"))


def test_five_element_lattice():
    elems = sublattice([V("x"), V("y")])
    assert len(elems) == 5
    dot = hasse_dot(elems)
    assert dot.count("->") == 5
    assert dot == hasse_dot(sublattice([V("x"), V("y")]))


monomials3 = [m for d in (1, 2) for m in R3.monomials_of_degree(d)]


@st.composite
def specsets(draw):
    k = draw(st.integers(0, 2))
    gens = []
    for _ in range(k):
        d = draw(st.sampled_from([1, 2]))
        mons = R3.monomials_of_degree(d)
        coeffs = draw(st.lists(st.integers(0, 2), min_size=len(mons), max_size=len(mons)))
        gens.append(sum((R3.monomial(m, c) for m, c in zip(mons, coeffs)), R3.zero()))
    U = v_of(HomogeneousIdeal(R3, gens))
    if draw(st.booleans()):
        d = draw(st.sampled_from([1, 2]))
        mons = R3.monomials_of_degree(d)
        c = draw(st.lists(st.integers(0, 2), min_size=len(mons), max_size=len(mons)))
        U = join(U, v_of(HomogeneousIdeal(R3, [sum((R3.monomial(m, x) for m, x in zip(mons, c)), R3.zero())])))
    return U


@settings(max_examples=40, deadline=None)
@given(specsets(), specsets())
def test_absorption(U, W):
    assert equal(meet(U, join(U, W)), U)
    assert equal(join(U, meet(U, W)), U)


@settings(max_examples=40, deadline=None)
@given(specsets(), specsets(), specsets())
def test_distributive(U, W, X):
    assert equal(meet(U, join(W, X)), join(meet(U, W), meet(U, X)))


@settings(max_examples=40, deadline=None)
@given(specsets(), specsets())
def test_order_consistency(U, W):
    assert leq(U, W) == equal(meet(U, W), U) == equal(join(U, W), W)
    assert equal(canonicalize(U), U)
    assert leq(meet(U, W), U) and leq(U, join(U, W))
