"""Buchberger's algorithm over F_p on sparse polynomials.

Polynomials here are bare ``dict``s mapping exponent tuples to nonzero
residues mod ``p``.  Monomial orders are given as sort-key functions: a
larger key means a larger monomial.
"""
from __future__ import annotations

import itertools


class GroebnerBudgetExceeded(RuntimeError):
    """Raised when Buchberger processes more S-pairs than allowed."""


DEFAULT_PAIR_BUDGET = 20000


def grevlex_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


def block_key(split: int):
    """Elimination order: the first ``split`` variables dominate (grevlex in each block)."""
    def key(exp):
        return (grevlex_key(exp[:split]), grevlex_key(exp[split:]))
    return key


def leading(f: dict, key):
    m = max(f, key=key)
    return m, f[m]


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _sub_exp(b, a):
    return tuple(y - x for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _add_scaled(f: dict, g: dict, c: int, shift, p: int):
    """f += c * x^shift * g, in place."""
    for m, v in g.items():
        mm = tuple(x + y for x, y in zip(m, shift))
        nv = (f.get(mm, 0) + c * v) % p
        if nv:
            f[mm] = nv
        else:
            f.pop(mm, None)


def monic(f: dict, key, p: int) -> dict:
    if not f:
        return f
    _, c = leading(f, key)
    inv = pow(c, -1, p)
    return {m: v * inv % p for m, v in f.items()}


def normal_form(f: dict, basis: list, key, p: int) -> dict:
    """Full reduction of ``f`` modulo ``basis`` (a list of monic polynomials)."""
    f = dict(f)
    heads = [(leading(g, key)[0], g) for g in basis]
    rem: dict = {}
    while f:
        m, c = leading(f, key)
        for lm, g in heads:
            if _divides(lm, m):
                _add_scaled(f, g, (-c) % p, _sub_exp(m, lm), p)
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def buchberger(gens, key, p: int, budget: int = DEFAULT_PAIR_BUDGET) -> list:
    """Reduced Gröbner basis of the ideal generated by ``gens``, sorted by leading monomial."""
    basis = [monic(dict(g), key, p) for g in gens if g]
    if not basis:
        return []
    # interreduce the input first; keeps the pair list small
    basis = _interreduce(basis, key, p)
    pairs = [(i, j) for i, j in itertools.combinations(range(len(basis)), 2)]
    processed = 0
    while pairs:
        pairs.sort(key=lambda ij: key(_lcm(leading(basis[ij[0]], key)[0],
                                           leading(basis[ij[1]], key)[0])))
        i, j = pairs.pop(0)
        processed += 1
        if processed > budget:
            raise GroebnerBudgetExceeded(
                f"Buchberger exceeded {budget} S-pairs; raise the budget or simplify the input")
        li, lj = leading(basis[i], key)[0], leading(basis[j], key)[0]
        if all(x == 0 or y == 0 for x, y in zip(li, lj)):
            continue  # coprime leading monomials: S-polynomial reduces to 0
        lcm = _lcm(li, lj)
        if _chain_criterion(i, j, lcm, basis, pairs, key):
            continue
        s: dict = {}
        _add_scaled(s, basis[i], 1, _sub_exp(lcm, li), p)
        _add_scaled(s, basis[j], p - 1, _sub_exp(lcm, lj), p)
        r = normal_form(s, basis, key, p)
        if r:
            r = monic(r, key, p)
            lr = leading(r, key)[0]
            if not any(lr):
                return [{lr: 1}]
            basis.append(r)
            k = len(basis) - 1
            pairs.extend((a, k) for a in range(k))
    return _interreduce(basis, key, p)


def _chain_criterion(i, j, lcm, basis, pairs, key):
    pending = set(pairs)
    for k in range(len(basis)):
        if k in (i, j):
            continue
        lk = leading(basis[k], key)[0]
        if not _divides(lk, lcm):
            continue
        a, b = min(i, k), max(i, k)
        c, d = min(j, k), max(j, k)
        if (a, b) not in pending and (c, d) not in pending:
            return True
    return False


def _interreduce(basis, key, p):
    """Autoreduce until no element can be reduced by the others."""
    basis = [monic(g, key, p) for g in basis if g]
    changed = True
    while changed:
        changed = False
        for i, g in enumerate(basis):
            others = basis[:i] + basis[i + 1:]
            r = normal_form(g, others, key, p)
            if r != g:
                basis = others + ([monic(r, key, p)] if r else [])
                changed = True
                break
    basis.sort(key=lambda g: key(leading(g, key)[0]))
    return basis


def is_unit_basis(basis) -> bool:
    return len(basis) == 1 and all(sum(m) == 0 for m in basis[0])
