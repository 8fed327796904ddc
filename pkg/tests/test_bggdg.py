import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ttgeom.bggdg import (DgError, DgModule, SemifreeSModule, algebra_module, bgg_apply, bgg_bimodule,
                          binomial_dims, dg_homology, exterior_algebra, ext_over_dg, koszul_dg,
                          koszul_homology_dims, phi_quasi_iso_check, symmetric_algebra, symmetric_dims)


def nonzero(H):
    return {n: d for n, d in H.dims.items() if d}


def test_exterior_and_symmetric():
    L = exterior_algebra(1)
    assert L.dims(-1, 0) == {-1: 1, 0: 1}
    S = symmetric_algebra(2)
    assert [len(S.basis(2 * n)) for n in range(5)] == [1, 2, 3, 4, 5]
    assert all(not L.d(L.gen(n)) for n in L.names)


def test_koszul_dg_examples():
    B = koszul_dg(2, 1)
    assert len(B.basis(0)) == 2 and len(B.basis(-1)) == 2
    B2 = koszul_dg(3, 2)
    y1, y2, z1, z2 = (B2.gen(n) for n in ("y1", "y2", "z1", "z2"))
    lhs = B2.d(B2.mul(y1, y2))
    rhs = B2.add(B2.mul(z1, y2), B2.mul(y1, z2), scale=-1)
    assert lhs == rhs
    assert B2.d_squared_zero()


def test_bad_parity_rejected():
    with pytest.raises(DgError):
        from ttgeom.bggdg import DgAlgebra
        DgAlgebra(2, [("u", 1, "even")])


def test_homology_examples():
    L = exterior_algebra(2)
    assert nonzero(dg_homology(algebra_module(L, (-2, 0)))) == {-2: 1, -1: 2, 0: 1}
    assert koszul_homology_dims(2, 1) == [1, 1]
    ident = DgModule(L, (0, 1), {0: 1, 1: 1}, {0: np.eye(1, dtype=np.int64)})
    assert nonzero(dg_homology(ident)) == {}


@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)])
def test_phi_quasi_iso(p, r):
    rep = phi_quasi_iso_check(p, r)
    assert rep.ok
    assert [rep.b_homology[-n] for n in range(r + 1)] == binomial_dims(r)


def test_bimodule_examples():
    F = bgg_bimodule(1, 2)
    M = F.as_lambda_module()
    lo, hi = M.window
    assert all(M.dim(n) <= 1 for n in range(lo, hi + 1))
    assert F.actions_commute() and M.d_squared_zero() and M.leibniz_ok()
    assert nonzero(dg_homology(bgg_bimodule(2, 6).as_lambda_module())) == {0: 1}


def test_bgg_apply_examples():
    assert nonzero(dg_homology(bgg_apply(SemifreeSModule.free(2), 6))) == {0: 1}
    assert nonzero(dg_homology(bgg_apply(SemifreeSModule.free(2, (0, 0)), 6))) == {0: 2}
    quotient = SemifreeSModule(1, [0, 1], [[{}, {(1,): 1}], [{}, {}]])
    X = bgg_apply(quotient, 6)
    H = nonzero(dg_homology(X))
    assert sum(H.values()) >= 1 and all(d == 1 for d in H.values())


@pytest.mark.parametrize("r", [1, 2, 3])
def test_ext_over_exterior(r):
    dims = ext_over_dg(exterior_algebra(r), 8)
    assert dims == symmetric_dims(r, 8)
    assert dims[0] == 1


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(1, 2), st.integers(0, 10 ** 6))
def test_leibniz_random(p, r, seed):
    B = koszul_dg(p, r)
    assert B.leibniz_spot_check(np.random.default_rng(seed), trials=5)
