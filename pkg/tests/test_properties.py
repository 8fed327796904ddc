"""Randomized invariants across modules (hypothesis drives the seeds)."""
import numpy as np
from hypothesis import given, settings, strategies as st

from ttgeom.corpus import module_corpus
from ttgeom.homalg import koszul_ideal, supp
from ttgeom.modrep import Subgroup, direct_sum, dual, elementary_abelian, restrict, tensor_diag
from ttgeom.quillen import elementary_subgroups, restriction_hom
from ttgeom.rankvariety import point_in_supp, projective_points
from ttgeom.speclattice import equal, join, meet, preimage

GROUPS = {p: elementary_abelian(p, 2) for p in (2, 3)}
seeds = st.integers(0, 2 ** 32 - 1)
primes = st.sampled_from([2, 3])


def pair(p, seed, max_dim=6):
    return module_corpus(GROUPS[p], 2, np.random.default_rng(seed), max_dim=max_dim)


@settings(max_examples=15, deadline=None)
@given(primes, seeds)
def test_sum_support_is_join(p, seed):
    M, N = pair(p, seed)
    assert equal(supp(direct_sum(M, N)), join(supp(M), supp(N)))


@settings(max_examples=15, deadline=None)
@given(primes, seeds)
def test_tensor_support_is_meet(p, seed):
    M, N = pair(p, seed, max_dim=5)
    assert equal(supp(tensor_diag(M, N)), meet(supp(M), supp(N)))


@settings(max_examples=15, deadline=None)
@given(primes, seeds)
def test_dual_has_same_support(p, seed):
    M, _ = pair(p, seed)
    assert equal(supp(dual(M)), supp(M))


@settings(max_examples=10, deadline=None)
@given(primes, seeds)
def test_rank_points_multiplicative(p, seed):
    M, N = pair(p, seed, max_dim=5)
    T = tensor_diag(M, N)
    for a in projective_points(p, 2, 2):
        assert point_in_supp(T, a) == (point_in_supp(M, a) and point_in_supp(N, a))


@settings(max_examples=10, deadline=None)
@given(st.sampled_from([(2, 3), (3, 2)]), seeds, st.data())
def test_restriction_functorial(pr, seed, data):
    p, r = pr
    G = elementary_abelian(p, r)
    rng = np.random.default_rng(seed)
    big = data.draw(st.sampled_from([H for H in elementary_subgroups(G) if H.group.rank == r - 1]))
    # a cyclic subgroup of `big`, written both in big's and in G's coordinates
    word = [int(x) for x in rng.integers(p, size=big.group.rank)]
    if not any(word):
        word[0] = 1
    small_in_big = Subgroup(big.group, [word])
    small = Subgroup(G, [big.word_value(word)])
    M = module_corpus(G, 1, rng, max_dim=6)[0]
    two_step = restrict(restrict(M, big), small_in_big)
    assert two_step.same_action(restrict(M, small))
    composite = restriction_hom(small_in_big).hom.compose(restriction_hom(big).hom)
    direct = restriction_hom(small).hom
    assert [str(x) for x in composite.images] == [str(x) for x in direct.images]
    # subgroup theorem along the chain
    assert equal(supp(two_step), preimage(direct, supp(M)))


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_koszul_generator_order(seed):
    M, _ = pair(2, seed)
    a = supp(koszul_ideal(M, ["eta1", "eta1*eta2 + eta2^2"]))
    b = supp(koszul_ideal(M, ["eta1*eta2 + eta2^2", "eta1"]))
    assert equal(a, b)
