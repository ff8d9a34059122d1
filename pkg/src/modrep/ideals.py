"""Ideals, submodules and presented modules over GF(p)[x1,...,xn].

Membership, radical membership (Rabinowitsch), syzygies via module Groebner
bases, colon ideals, intersections via tag variables, annihilators and free
resolutions.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .groebner import buchberger, from_vec, normal_form_vec, to_vec
from .poly import GREVLEX, MonomialOrder, MultiPoly, PolyRing


class Ideal:
    """Ideal of a polynomial ring with a write-once cache of reduced Groebner bases."""

    def __init__(self, ring: PolyRing, gens=()):
        self.ring = ring
        gs = []
        for g in gens:
            g = ring(g)
            if not g.is_zero():
                gs.append(g)
        self.gens = tuple(gs)
        self._gb = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Ideal({self.ring}, [{', '.join(map(str, self.gens))}])"

    def groebner_basis(self, order: MonomialOrder = GREVLEX):
        cached = self._gb.get(order)
        if cached is not None:
            return cached
        with self._lock:
            cached = self._gb.get(order)
            if cached is None:
                vecs = buchberger([to_vec([g]) for g in self.gens], self.ring.p, order)
                cached = tuple(from_vec(v, self.ring, 1)[0] for v in vecs)
                self._gb[order] = cached
        return cached

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].is_one()

    def is_zero(self) -> bool:
        return not self.gens

    def __add__(self, other: "Ideal") -> "Ideal":
        _same_ring(self.ring, other.ring)
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other: "Ideal") -> "Ideal":
        _same_ring(self.ring, other.ring)
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])


def _same_ring(a, b):
    if a != b:
        raise ValueError(f"ring mismatch: {a} vs {b}")


def groebner(ideal: Ideal, order: MonomialOrder = GREVLEX) -> Ideal:
    """Fill the ideal's cache with its reduced Groebner basis for ``order``."""
    ideal.groebner_basis(order)
    return ideal


def normal_form(f: MultiPoly, ideal: Ideal, order: MonomialOrder = GREVLEX) -> MultiPoly:
    _same_ring(f.ring, ideal.ring)
    gb = ideal.groebner_basis(order)
    v = normal_form_vec(to_vec([f]), [to_vec([g]) for g in gb], ideal.ring.p, order)
    return from_vec(v, ideal.ring, 1)[0]


def ideal_member(f: MultiPoly, ideal: Ideal) -> bool:
    return normal_form(f, ideal).is_zero()


def radical_member(f: MultiPoly, ideal: Ideal) -> bool:
    """f in sqrt(I), via 1 in I + (1 - u f) with a fresh variable u."""
    _same_ring(f.ring, ideal.ring)
    if f.is_zero():
        return True
    ring = ideal.ring
    (u_name,) = ring.fresh_names("u", 1)
    big = ring.extend(u_name)
    u = big.var(ring.nvars)
    gens = [g.change_ring(big) for g in ideal.gens]
    gens.append(big.one() - u * f.change_ring(big))
    vecs = buchberger([to_vec([g]) for g in gens], ring.p, GREVLEX, stop_on_unit=True)
    return len(vecs) == 1 and all(not any(e) for (_, e) in vecs[0])


def radical_contains(big: Ideal, small: Ideal) -> bool:
    """sqrt(big) contains small, i.e. V(big) is inside V(small)."""
    return all(radical_member(g, big) for g in small.gens)


def ideal_eq_radical(i: Ideal, j: Ideal) -> bool:
    _same_ring(i.ring, j.ring)
    return radical_contains(j, i) and radical_contains(i, j)


def ideal_intersection(i: Ideal, j: Ideal) -> Ideal:
    """I cap J = (tI + (1-t)J) cap A with a tag variable t appended last."""
    _same_ring(i.ring, j.ring)
    ring = i.ring
    if i.is_zero() or j.is_zero():
        return Ideal(ring, [])
    (t_name,) = ring.fresh_names("tag", 1)
    big = ring.extend(t_name)
    t = big.var(ring.nvars)
    gens = [t * g.change_ring(big) for g in i.gens]
    gens += [(big.one() - t) * g.change_ring(big) for g in j.gens]
    order = MonomialOrder("elim", block=1)
    vecs = buchberger([to_vec([g]) for g in gens], ring.p, order)
    keep = []
    for v in vecs:
        if all(e[-1] == 0 for (_, e) in v):
            keep.append(MultiPoly(ring, {e[:-1]: c for (_, e), c in v.items()}))
    return Ideal(ring, keep)


# -- submodules of free modules --------------------------------------------

@dataclass
class FreeSubmodule:
    """Submodule of A^rank generated by ``gens`` (tuples of MultiPoly)."""

    ring: PolyRing
    rank: int
    gens: list = field(default_factory=list)

    def __post_init__(self):
        gens = []
        for g in self.gens:
            g = tuple(self.ring(x) for x in g)
            if len(g) != self.rank:
                raise ValueError(f"generator of length {len(g)} in ambient rank {self.rank}")
            if any(not x.is_zero() for x in g):
                gens.append(g)
        self.gens = gens

    def groebner_vecs(self, order=GREVLEX):
        return buchberger([to_vec(g) for g in self.gens], self.ring.p, order,
                          product_criterion=False)

    def contains(self, vec) -> bool:
        vec = [self.ring(x) for x in vec]
        gb = self.groebner_vecs()
        return not normal_form_vec(to_vec(vec), gb, self.ring.p, GREVLEX)


@dataclass
class PresentedModule:
    """The module A^rank / relations."""

    ring: PolyRing
    rank: int
    relations: FreeSubmodule = None

    def __post_init__(self):
        if self.relations is None:
            self.relations = FreeSubmodule(self.ring, self.rank, [])
        if self.relations.rank != self.rank:
            raise ValueError("relations live in the wrong ambient rank")

    @classmethod
    def cyclic(cls, ideal: Ideal) -> "PresentedModule":
        """A / I."""
        return cls(ideal.ring, 1, FreeSubmodule(ideal.ring, 1, [(g,) for g in ideal.gens]))

    def relation_matrix(self):
        """rank x (#relations) matrix (list of rows) whose columns are the relations."""
        return [[g[i] for g in self.relations.gens] for i in range(self.rank)]

    def direct_sum(self, other: "PresentedModule") -> "PresentedModule":
        _same_ring(self.ring, other.ring)
        z = self.ring.zero()
        t = self.rank + other.rank
        gens = [tuple(g) + (z,) * other.rank for g in self.relations.gens]
        gens += [(z,) * self.rank + tuple(g) for g in other.relations.gens]
        return PresentedModule(self.ring, t, FreeSubmodule(self.ring, t, gens))


def _columns(phi, s):
    return [[row[j] for row in phi] for j in range(s)]


def module_kernel(phi, s: int, t: int, ring: PolyRing = None) -> FreeSubmodule:
    """Generators of {v in A^s : phi v = 0} for a t x s polynomial matrix phi (list of rows)."""
    if ring is None:
        ring = _ring_of(phi)
    if len(phi) != t or any(len(row) != s for row in phi):
        raise ValueError("phi has the wrong shape")
    if s == 0:
        return FreeSubmodule(ring, 0, [])
    cols = _columns(phi, s)
    one, zero = ring.one(), ring.zero()
    vecs = []
    for j, col in enumerate(cols):
        tag = [zero] * s
        tag[j] = one
        vecs.append(to_vec(list(col) + tag))
    gb = buchberger(vecs, ring.p, GREVLEX, product_criterion=False)
    syz = []
    for v in gb:
        if all(c >= t for (c, _) in v):
            shifted = {(c - t, e): x for (c, e), x in v.items()}
            syz.append(tuple(from_vec(shifted, ring, s)))
    return FreeSubmodule(ring, s, prune_generators(ring, s, syz))


def _ring_of(phi):
    for row in phi:
        for x in row:
            if isinstance(x, MultiPoly):
                return x.ring
    raise ValueError("cannot infer ring from an empty matrix; pass ring=")


def prune_generators(ring, rank, gens, limit: int = 40):
    """Drop generators lying in the submodule generated by the others (greedy, last first)."""
    gens = [tuple(g) for g in gens if any(not x.is_zero() for x in g)]
    if len(gens) > limit:
        return gens
    keep = list(gens)
    for g in reversed(list(gens)):
        others = [h for h in keep if h is not g]
        if not others:
            continue
        if FreeSubmodule(ring, rank, others).contains(g):
            keep = others
    return keep


def colon_generator(m: PresentedModule, j: int) -> Ideal:
    """(relations : e_j) = {f : f e_j in relations}."""
    ring = m.ring
    rel = m.relation_matrix()
    g = len(m.relations.gens)
    phi = [list(rel[i]) + [ring.one() if i == j else ring.zero()] for i in range(m.rank)]
    ker = module_kernel(phi, g + 1, m.rank, ring)
    return Ideal(ring, [v[g] for v in ker.gens])


def annihilator(m: PresentedModule) -> Ideal:
    """ann(M) as the intersection of the colon ideals (relations : e_j)."""
    ring = m.ring
    if m.rank == 0:
        return Ideal(ring, [ring.one()])
    ann = None
    for j in range(m.rank):
        c = colon_generator(m, j)
        ann = c if ann is None else ideal_intersection(ann, c)
        if ann.is_zero():
            break
    return Ideal(ring, [g for g in ann.groebner_basis()])


def free_resolution(m: PresentedModule, max_len: int = 10):
    """Matrices d_1, d_2, ... (lists of rows) of a free resolution of m.

    d_1 is the relation matrix A^{g} -> A^{rank}; each next matrix generates the
    kernel of the previous one.  Stops once a kernel vanishes or after max_len maps.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    ring = m.ring
    out = []
    gens = list(m.relations.gens)
    rows = m.rank
    while gens and len(out) < max_len:
        mat = [[g[i] for g in gens] for i in range(rows)]
        out.append(mat)
        ker = module_kernel(mat, len(gens), rows, ring)
        rows = len(gens)
        gens = list(ker.gens)
    return out


def poly_matmul(a, b, ring):
    """Product of polynomial matrices given as lists of rows."""
    n = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        if len(row) != n:
            raise ValueError("shape mismatch")
        new = []
        for j in range(cols):
            acc = ring.zero()
            for k in range(n):
                if not row[k].is_zero() and not b[k][j].is_zero():
                    acc = acc + row[k] * b[k][j]
            new.append(acc)
        out.append(new)
    return out


def is_zero_matrix(a) -> bool:
    return all(x.is_zero() for row in a for x in row)
