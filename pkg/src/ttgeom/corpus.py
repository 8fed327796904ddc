"""Seeded module families with varied supports, used by tests, demos and the CLI."""
from __future__ import annotations

import numpy as np

from .modrep import (GroupData, GroupModule, direct_sum, free_module, quotient_module,
                     random_module, tensor_diag, trivial_module)


def line_module(group: GroupData, alpha) -> GroupModule:
    """``kG / kG·u_α`` with ``u_α = Σ α_i z_i``; its support is the line through ``α``."""
    A = free_module(group)
    p = group.p
    u = sum(int(a) * z for a, z in zip(alpha, A.z)) % p
    M = quotient_module(A, u.T)
    M.name = "L(" + ",".join(str(int(a) % p) for a in alpha) + ")"
    return M


def rational_lines(group: GroupData):
    """Representatives of the F_p-rational points of ``P^{r-1}``."""
    p, r = group.p, group.rank
    out = []
    for lead in range(r):
        tails = np.indices((p,) * (r - lead - 1)).reshape(r - lead - 1, -1).T if r - lead - 1 else [()]
        for tail in tails:
            out.append((0,) * lead + (1,) + tuple(int(t) for t in tail))
    return out


def module_corpus(group: GroupData, count: int, rng, max_dim: int = 12):
    """``count`` modules of dimension ``≤ max_dim`` mixing all support shapes.

    Cycles through: trivial, free, line modules, sums of lines, random
    quotients of free modules, and tensor products of lines.
    """
    lines = rational_lines(group)
    out = []
    kinds = ["random", "line", "sum", "random", "tensor", "line_k", "free_k"]
    i = 0
    while len(out) < count:
        kind = kinds[i % len(kinds)]
        i += 1
        if kind == "random":
            d = int(rng.integers(1, max_dim + 1))
            M = random_module(group, d, rng)
        elif kind == "line":
            M = line_module(group, lines[int(rng.integers(len(lines)))])
        elif kind == "sum":
            a, b = rng.choice(len(lines), size=2, replace=len(lines) < 2)
            M = direct_sum(line_module(group, lines[a]), line_module(group, lines[b]))
        elif kind == "tensor":
            a, b = rng.integers(len(lines), size=2)
            M = tensor_diag(line_module(group, lines[a]), line_module(group, lines[b]))
        elif kind == "line_k":
            M = direct_sum(line_module(group, lines[int(rng.integers(len(lines)))]), trivial_module(group))
        else:
            M = direct_sum(free_module(group), trivial_module(group))
        if 0 < M.dim <= max_dim:
            out.append(M)
    return out
