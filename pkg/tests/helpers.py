"""Shared module corpora and brute-force oracles for the test suite."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement, product

import numpy as np

from modrep.homalg import carlson_L, omega_power
from modrep.kmodule import ElemAbGroupAlg, direct_sum, from_group_matrices, regular, tensor_diag, trivial
from modrep.linalg import Matrix, rank


def line_module(lam):
    return from_group_matrices(2, 2, [[[1, 0], [1, 1]], [[1, 0], [lam, 1]]])


def jordan_line_module(lam):
    return from_group_matrices(3, 2, [[[1, 0, 0], [1, 1, 0], [0, 1, 1]],
                                      [[1, 0, 0], [lam, 1, 0], [0, lam, 1]]])


def quadric_module():
    g = [
        [[1, 0, 0, 0], [0, 1, 0, 0], [1, 0, 1, 0], [0, 0, 0, 1]],
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 1, 1, 0], [0, 0, 0, 1]],
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 1]],
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 1, 0, 1]],
    ]
    return from_group_matrices(2, 4, g)


def nonzero_points(p, r):
    return [a for a in product(range(p), repeat=r) if any(a)]


@lru_cache(maxsize=None)
def base_corpus(p, r=2, max_n=3):
    """(name, module) for k, regular, Omega^{+-n}k and, for p = 2, the L_c^n."""
    alg = ElemAbGroupAlg(p, r)
    k = trivial(alg)
    out = [("k", k), ("regular", regular(alg))]
    for n in range(1, max_n + 1):
        out.append((f"omega^{n}", omega_power(k, n)))
        out.append((f"omega^-{n}", omega_power(k, -n)))
    if p == 2:
        for c in nonzero_points(2, r):
            for n in range(1, max_n + 1):
                out.append((f"L{c}^{n}", carlson_L(c, n)))
    return tuple(out)


def pair_corpus(p, r=2, max_n=3):
    base = base_corpus(p, r, max_n)
    for (na, a), (nb, b) in combinations_with_replacement(base, 2):
        yield f"{na}+{nb}", direct_sum(a, b), (a, b, "sum")
        yield f"{na}*{nb}", tensor_diag(a, b), (a, b, "tensor")


def full_corpus(p, r=2, max_n=3):
    for name, m in base_corpus(p, r, max_n):
        yield name, m
    for name, m, _ in pair_corpus(p, r, max_n):
        yield name, m


# -- polynomial brute force ---------------------------------------------------

def monomials_upto(nvars, degree):
    out = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


class TruncatedSpan:
    """span{m * g : deg(m * g) <= D} as a row-reduced GF(p) matrix; exact for deg <= D pieces."""

    def __init__(self, ring, gens, bound):
        self.ring = ring
        self.p = ring.p
        self.mons = monomials_upto(ring.nvars, bound)
        self.index = {e: i for i, e in enumerate(self.mons)}
        cols = []
        for g in gens:
            dg = g.degree()
            for m in monomials_upto(ring.nvars, bound - dg):
                cols.append(self.vector(g * ring.monomial(m)))
        self.field = ring.field
        self.base = Matrix(self.field, np.array(cols, dtype=np.int64).T) if cols else None
        self.base_rank = rank(self.base) if cols else 0

    def vector(self, f):
        v = [0] * len(self.mons)
        for e, c in f.terms.items():
            v[self.index[e]] = c % self.p
        return v

    def contains(self, f):
        if f.is_zero():
            return True
        if self.base is None:
            return False
        col = Matrix(self.field, np.array([self.vector(f)], dtype=np.int64).T)
        aug = Matrix(self.field, np.hstack([self.base.data, col.data]))
        return rank(aug) == self.base_rank
