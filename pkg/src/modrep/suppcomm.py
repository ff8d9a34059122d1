"""Koszul complexes, cohomology of free complexes and support over GF(p)[y_1..y_m].

Complexes are cohomologically graded; the Koszul complex on n elements sits in
degrees [-n, 0].  Supports are unions of closed sets V(I) kept as ideals and
compared through radical membership only.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groebner import buchberger, normal_form_vec, to_vec
from .ideals import (
    FreeSubmodule,
    Ideal,
    PresentedModule,
    annihilator,
    free_resolution,
    ideal_eq_radical,
    is_zero_matrix,
    module_kernel,
    poly_matmul,
    radical_contains,
)
from .poly import GREVLEX, PolyRing

DEFAULT_RESOLUTION_CAP = 10


class ComplexError(ValueError):
    pass


class ResolutionCapError(RuntimeError):
    """A free resolution did not terminate within the length cap."""


@dataclass
class FreeComplex:
    """Bounded complex of free modules; ``differentials[n]`` maps degree n to n+1.

    A differential is a list of ``ranks[n+1]`` rows with ``ranks[n]`` entries.
    """

    ring: PolyRing
    ranks: dict
    differentials: dict = field(default_factory=dict)

    def __post_init__(self):
        self.ranks = {n: r for n, r in self.ranks.items()}
        for n, mat in self.differentials.items():
            src, tgt = self.rank(n), self.rank(n + 1)
            if len(mat) != tgt or any(len(row) != src for row in mat):
                raise ComplexError(f"differential in degree {n} has the wrong shape")
        for n in self.differentials:
            if n + 1 in self.differentials:
                if not is_zero_matrix(poly_matmul(self.differentials[n + 1], self.differentials[n], self.ring)):
                    raise ComplexError(f"d^{n + 1} d^{n} is not zero")

    @property
    def lo(self) -> int:
        return min(self.ranks) if self.ranks else 0

    @property
    def hi(self) -> int:
        return max(self.ranks) if self.ranks else 0

    def rank(self, n: int) -> int:
        return self.ranks.get(n, 0)

    def differential(self, n: int):
        mat = self.differentials.get(n)
        if mat is None:
            z = self.ring.zero()
            return [[z] * self.rank(n) for _ in range(self.rank(n + 1))]
        return mat

    def degrees(self):
        return list(range(self.lo, self.hi + 1))


def tensor_complexes(x: FreeComplex, y: FreeComplex) -> FreeComplex:
    """Total complex of X (x) Y with d(a (x) b) = da (x) b + (-1)^|a| a (x) db."""
    if x.ring != y.ring:
        raise ComplexError("ring mismatch")
    ring = x.ring
    zero = ring.zero()
    # basis of total degree n: blocks (a, b) with a ascending
    blocks = {}
    for a in x.degrees():
        for b in y.degrees():
            if x.rank(a) and y.rank(b):
                blocks.setdefault(a + b, []).append((a, b))
    offsets = {}
    ranks = {}
    for n, bl in blocks.items():
        off = 0
        for a, b in bl:
            offsets[(a, b)] = off
            off += x.rank(a) * y.rank(b)
        ranks[n] = off
    diffs = {}
    for n in sorted(ranks):
        if n + 1 not in ranks:
            continue
        mat = [[zero] * ranks[n] for _ in range(ranks[n + 1])]
        for a, b in blocks[n]:
            ry = y.rank(b)
            src_off = offsets[(a, b)]
            # dx (x) 1
            if (a + 1, b) in offsets:
                dx = x.differential(a)
                tgt_off = offsets[(a + 1, b)]
                for i2, row in enumerate(dx):
                    for i1, c in enumerate(row):
                        if c.is_zero():
                            continue
                        for j in range(ry):
                            mat[tgt_off + i2 * ry + j][src_off + i1 * ry + j] += c
            # (-1)^a 1 (x) dy
            if (a, b + 1) in offsets:
                dy = y.differential(b)
                ry2 = y.rank(b + 1)
                tgt_off = offsets[(a, b + 1)]
                sign = -1 if a % 2 else 1
                for i in range(x.rank(a)):
                    for j2, row in enumerate(dy):
                        for j1, c in enumerate(row):
                            if c.is_zero():
                                continue
                            mat[tgt_off + i * ry2 + j2][src_off + i * ry + j1] += c if sign == 1 else -c
        diffs[n] = mat
    return FreeComplex(ring, ranks, diffs)


def koszul_complex(ring: PolyRing, elems) -> FreeComplex:
    """Tensor product of the complexes 0 -> A --x--> A -> 0 (degrees -1, 0)."""
    elems = list(elems)
    if not elems:
        raise ComplexError("the Koszul complex needs at least one element")
    elems = [ring(e) for e in elems]
    for e in elems:
        if e.ring != ring:
            raise ComplexError("element from a different ring")
    out = None
    for e in elems:
        one = FreeComplex(ring, {-1: 1, 0: 1}, {-1: [[e]]})
        out = one if out is None else tensor_complexes(out, one)
    return out


def resolution_complex(m: PresentedModule, cap: int = DEFAULT_RESOLUTION_CAP) -> FreeComplex:
    """A free resolution of m as a complex in degrees [-len, 0]."""
    mats = free_resolution(m, cap + 1)
    if len(mats) > cap:
        raise ResolutionCapError(f"free resolution longer than the cap {cap}")
    ranks = {0: m.rank}
    diffs = {}
    for i, mat in enumerate(mats, start=1):
        ranks[-i] = len(mat[0]) if mat else 0
        diffs[-i] = mat
    return FreeComplex(m.ring, ranks, diffs)


def koszul_on_module(m: PresentedModule, elems, cap: int = DEFAULT_RESOLUTION_CAP) -> FreeComplex:
    return tensor_complexes(resolution_complex(m, cap), koszul_complex(m.ring, elems))


def complex_cohomology(x: FreeComplex) -> dict:
    """H^n = ker d^n / im d^{n-1}, presented on generators of ker d^n."""
    ring = x.ring
    out = {}
    for n in x.degrees():
        rn = x.rank(n)
        if rn == 0:
            out[n] = PresentedModule(ring, 0)
            continue
        if x.rank(n + 1):
            ker = module_kernel(x.differential(n), rn, x.rank(n + 1), ring).gens
        else:
            ker = [tuple(ring.one() if i == j else ring.zero() for i in range(rn)) for j in range(rn)]
        k = len(ker)
        if k == 0:
            out[n] = PresentedModule(ring, 0)
            continue
        image_cols = []
        if x.rank(n - 1):
            d = x.differential(n - 1)
            image_cols = [[d[i][j] for i in range(rn)] for j in range(x.rank(n - 1))]
        mat = [[g[i] for g in ker] + [c[i] for c in image_cols] for i in range(rn)]
        syz = module_kernel(mat, k + len(image_cols), rn, ring).gens
        rels = [tuple(v[:k]) for v in syz]
        out[n] = PresentedModule(ring, k, FreeSubmodule(ring, k, rels))
    return out


# -- supports -------------------------------------------------------------------

@dataclass
class SupportSet:
    """Union of closed sets V(I_j); empty list is the empty set."""

    ring: PolyRing
    ideals: list = field(default_factory=list)

    def __post_init__(self):
        norm = []
        for i in self.ideals:
            gb = i.groebner_basis()
            if len(gb) == 1 and gb[0].is_one():
                continue
            norm.append(Ideal(self.ring, gb))
        self.ideals = norm

    def is_empty(self) -> bool:
        return not self.ideals

    def defining_ideal(self) -> Ideal:
        """An ideal with V = this set (product of the components)."""
        if not self.ideals:
            return Ideal(self.ring, [self.ring.one()])
        out = self.ideals[0]
        for i in self.ideals[1:]:
            out = out * i
        return out

    def set_equal(self, other: "SupportSet") -> bool:
        return ideal_eq_radical(self.defining_ideal(), other.defining_ideal())

    def intersect_closed(self, ideal: Ideal) -> "SupportSet":
        return SupportSet(self.ring, [i + ideal for i in self.ideals])

    def union(self, other: "SupportSet") -> "SupportSet":
        return SupportSet(self.ring, self.ideals + other.ideals)

    def subset_of(self, other: "SupportSet") -> bool:
        """Containment of the unions (via the product ideals)."""
        return radical_contains(self.defining_ideal(), other.defining_ideal())

    def generator_strings(self):
        return [sorted(str(g) for g in i.gens) for i in self.ideals]


def supp_module(m: PresentedModule) -> SupportSet:
    return SupportSet(m.ring, [annihilator(m)])


def supp_complex(x: FreeComplex) -> SupportSet:
    comps = []
    for n, h in sorted(complex_cohomology(x).items()):
        comps.extend(supp_module(h).ideals)
    return SupportSet(x.ring, comps)


def closed_set(ideal: Ideal) -> SupportSet:
    return SupportSet(ideal.ring, [ideal])


def supp_contains_point(m: PresentedModule, c) -> bool:
    """M / m_c M != 0 for the maximal ideal m_c = (y_i - c_i)."""
    ring = m.ring
    if len(c) != ring.nvars:
        raise ValueError("point has the wrong number of coordinates")
    if m.rank == 0:
        return False
    gens = [to_vec(g) for g in m.relations.gens]
    zero = ring.zero()
    for i in range(ring.nvars):
        lin = ring.var(i) - ring.constant(int(c[i]))
        for j in range(m.rank):
            vec = [zero] * m.rank
            vec[j] = lin
            gens.append(to_vec(vec))
    gb = buchberger(gens, ring.p, GREVLEX, product_criterion=False)
    for j in range(m.rank):
        e = [zero] * m.rank
        e[j] = ring.one()
        if normal_form_vec(to_vec(e), gb, ring.p, GREVLEX):
            return True
    return False


def supp_subset(u: SupportSet, v: SupportSet) -> bool:
    """V(I) inside V(J) for single closed sets: J inside sqrt(I)."""
    if len(u.ideals) > 1 or len(v.ideals) > 1:
        raise ValueError("supp_subset only handles single closed sets")
    if not u.ideals:
        return True
    if not v.ideals:
        return False
    return radical_contains(u.ideals[0], v.ideals[0])
