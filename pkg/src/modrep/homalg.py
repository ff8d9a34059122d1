"""Projective covers, syzygies, minimal resolutions, Ext, stable Hom, Carlson modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .kmodule import (
    KModule,
    ModuleError,
    ModuleMap,
    dual,
    free_module,
    hom_space,
    quotient,
    strip_free,
    submodule,
    trivial,
    zero_module,
    ElemAbGroupAlg,
)
from .linalg import Matrix, hstack, kernel_matrix, rank, solve_matrix, vstack


# -- covers and syzygies ----------------------------------------------------

def projective_cover(m: KModule):
    """(P, epi): P free of rank dim top(M); generator j maps to a lift of a top basis vector."""
    alg = m.algebra
    lifts = m.top_lifts()
    b = len(lifts)
    p_mod = free_module(alg, b)
    if b == 0:
        return p_mod, ModuleMap(p_mod, m, Matrix.zeros(m.field, m.dim, 0), check=False)
    cols = []
    for j in lifts:
        for e in alg.monomials:
            cols.append(m.monomial_action(e)[:, j:j + 1])
    epi = ModuleMap(p_mod, m, hstack(cols), check=False)
    return p_mod, epi


@dataclass
class Syzygy:
    module: KModule       # Omega(M)
    inclusion: Matrix     # columns: basis of ker(epi) inside P
    cover: KModule        # P
    epi: ModuleMap        # P -> M


def syzygy(m: KModule) -> Syzygy:
    p_mod, epi = projective_cover(m)
    if p_mod.dim == 0:
        inc = Matrix.zeros(m.field, 0, 0)
        return Syzygy(zero_module(m.algebra), inc, p_mod, epi)
    inc = kernel_matrix(epi.matrix)
    return Syzygy(submodule(p_mod, inc), inc, p_mod, epi)


def omega(m: KModule) -> KModule:
    """Kernel of the projective cover."""
    return syzygy(m).module


def omega_inverse(m: KModule) -> KModule:
    """Cokernel of the injective hull, computed as dual(Omega(dual M))."""
    return dual(omega(dual(m)))


def omega_power(m: KModule, n: int) -> KModule:
    """Omega^n(M) for any integer n (Omega^{-1} for negative steps)."""
    step = omega if n > 0 else omega_inverse
    for _ in range(abs(n)):
        m = step(m)
    return m


# -- maps between free modules ------------------------------------------------

def free_coefficients(mat: Matrix, alg: ElemAbGroupAlg, b_src: int, b_tgt: int):
    """kE-coefficients of a map kE^b_src -> kE^b_tgt given in standard bases.

    Returns ``c[l][j]`` = dict exponent -> coefficient of the image of generator j
    in summand l.
    """
    n = alg.order
    zero_idx = alg.index((0,) * alg.r)
    out = [[{} for _ in range(b_src)] for _ in range(b_tgt)]
    for j in range(b_src):
        col = j * n + zero_idx
        for l in range(b_tgt):
            for e in alg.monomials:
                v = mat[l * n + alg.index(e), col]
                if v:
                    out[l][j][e] = v
    return out


def precompose_matrix(coeffs, b_src: int, b_tgt: int, target: KModule) -> Matrix:
    """Matrix of Hom(F_tgt, N) -> Hom(F_src, N), f -> f o phi, with Hom(F_b, N) = N^b."""
    f = target.field
    d = target.dim
    if b_src * d == 0 or b_tgt * d == 0:
        return Matrix.zeros(f, b_src * d, b_tgt * d)
    if f.is_prime_field:
        out = np.zeros((b_src * d, b_tgt * d), dtype=np.int64)
        for j in range(b_src):
            for l in range(b_tgt):
                for e, c in coeffs[l][j].items():
                    out[j * d:(j + 1) * d, l * d:(l + 1) * d] += c * target.monomial_action(e).data
        return Matrix(f, out)
    rows = []
    for j in range(b_src):
        blocks = []
        for l in range(b_tgt):
            acc = Matrix.zeros(f, d, d)
            for e, c in coeffs[l][j].items():
                acc = acc + target.monomial_action(e).scale(c)
            blocks.append(acc)
        rows.append(hstack(blocks))
    return vstack(rows)


# -- minimal resolutions ------------------------------------------------------

@dataclass
class MinimalResolution:
    target: KModule
    ranks: list
    modules: list                 # P_0 .. P_n
    augmentation: ModuleMap       # P_0 -> target
    boundaries: list = field(default_factory=list)   # boundaries[i-1]: P_i -> P_{i-1}

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def boundary_coefficients(self, i: int):
        """kE-coefficients of the boundary P_i -> P_{i-1} (i >= 1)."""
        d = self.boundaries[i - 1]
        return free_coefficients(d.matrix, self.target.algebra, self.ranks[i], self.ranks[i - 1])

    def is_complex(self) -> bool:
        if self.boundaries and not (self.augmentation.matrix @ self.boundaries[0].matrix).is_zero():
            return False
        return all((a.matrix @ b.matrix).is_zero()
                   for a, b in zip(self.boundaries, self.boundaries[1:]))

    def is_minimal(self) -> bool:
        """Every boundary has image in the radical: constant coefficients vanish."""
        zero = (0,) * self.target.r
        for i in range(1, len(self.ranks)):
            for row in self.boundary_coefficients(i):
                for c in row:
                    if c.get(zero):
                        return False
        return True


def minimal_resolution(m: KModule, n: int) -> MinimalResolution:
    if n < 0:
        raise ValueError("length must be non-negative")
    syz = syzygy(m)
    modules = [syz.cover]
    ranks = [syz.cover.dim // m.algebra.order]
    aug = syz.epi
    boundaries = []
    for _ in range(n):
        nxt = syzygy(syz.module)
        bd = syz.inclusion @ nxt.epi.matrix if syz.inclusion.ncols else \
            Matrix.zeros(m.field, syz.cover.dim, nxt.cover.dim)
        boundaries.append(ModuleMap(nxt.cover, syz.cover, bd, check=False))
        modules.append(nxt.cover)
        ranks.append(nxt.cover.dim // m.algebra.order)
        syz = nxt
    return MinimalResolution(m, ranks, modules, aug, boundaries)


def hom_complex_ranks(res: MinimalResolution, n_mod: KModule):
    """Ranks of the differentials Hom(P_{i-1}, N) -> Hom(P_i, N), i = 1..length."""
    out = []
    for i in range(1, len(res.ranks)):
        mat = precompose_matrix(res.boundary_coefficients(i), res.ranks[i], res.ranks[i - 1], n_mod)
        out.append(rank(mat))
    return out


def ext_dims(m: KModule, n_mod: KModule, top: int):
    """dim Ext^i(M, N) for 0 <= i <= top, from Hom(P_*, N) of a minimal resolution."""
    if top < 0:
        raise ValueError("top degree must be non-negative")
    if m.algebra != n_mod.algebra:
        raise ModuleError("algebra mismatch")
    res = minimal_resolution(m, top + 1)
    rks = hom_complex_ranks(res, n_mod)
    d = n_mod.dim
    dims = []
    for i in range(top + 1):
        incoming = rks[i - 1] if i >= 1 else 0
        outgoing = rks[i]
        dims.append(res.ranks[i] * d - outgoing - incoming)
    return dims


def expected_ext_trivial(p: int, r: int, n: int) -> int:
    """dim H^n(E, k): coefficient of t^n in (1 + t)^r/(1 - t^2)^r (p odd) or 1/(1 - t)^r (p = 2)."""
    if p == 2:
        return comb(n + r - 1, r - 1)
    return sum(comb(r, j) * comb((n - j) // 2 + r - 1, r - 1)
               for j in range(0, min(r, n) + 1) if (n - j) % 2 == 0)


# -- stable homomorphisms -----------------------------------------------------

def projective_factoring_maps(m: KModule, n_mod: KModule):
    """Spanning set of the maps M -> N factoring through the projective cover of N.

    Hom_kE(M, kE) is parametrised by functionals phi on M via
    x -> sum_e phi(z^{top-e} x) z^e; composing with the cover gives
    sum_e Z_N^e u_j phi Z_M^{top-e} for each cover generator image u_j.
    """
    alg = m.algebra
    top = alg.top_exponent
    lifts = n_mod.top_lifts()
    f = m.field
    out = []
    if m.dim == 0 or not lifts:
        return out
    for j in lifts:
        for l in range(m.dim):
            acc = Matrix.zeros(f, n_mod.dim, m.dim)
            for e in alg.monomials:
                u = n_mod.monomial_action(e)[:, j:j + 1]
                phi = m.monomial_action(tuple(t - x for t, x in zip(top, e)))[l:l + 1, :]
                acc = acc + u @ phi
            out.append(acc)
    return out


def _flatten(mats, f, rows):
    if not mats:
        return Matrix.zeros(f, rows, 0)
    return hstack([Matrix._wrap(f, x.data.reshape(-1, 1).copy()) for x in mats])


def phom_dim(m: KModule, n_mod: KModule) -> int:
    maps = projective_factoring_maps(m, n_mod)
    if not maps:
        return 0
    return rank(_flatten(maps, m.field, m.dim * n_mod.dim))


def stable_hom_dim(m: KModule, n_mod: KModule) -> int:
    return len(hom_space(m, n_mod)) - phom_dim(m, n_mod)


def tate_dim(m: KModule, n_mod: KModule, degree: int) -> int:
    """dim of stable Hom(Omega^degree M, N)."""
    return stable_hom_dim(omega_power(m, degree), n_mod)


class StableMapClass:
    """A module map up to maps factoring through a projective."""

    def __init__(self, representative: ModuleMap):
        self.representative = representative

    def factors_through_projective(self) -> bool:
        f = self.representative
        maps = projective_factoring_maps(f.source, f.target)
        fld = f.matrix.field
        target = Matrix._wrap(fld, f.matrix.data.reshape(-1, 1).copy())
        if f.matrix.is_zero():
            return True
        if not maps:
            return False
        return solve_matrix(_flatten(maps, fld, f.source.dim * f.target.dim), target) is not None

    def __eq__(self, other):
        if not isinstance(other, StableMapClass):
            return NotImplemented
        a, b = self.representative, other.representative
        if a.source.dim != b.source.dim or a.target.dim != b.target.dim:
            return False
        diff = ModuleMap(a.source, a.target, a.matrix - b.matrix, check=False)
        return StableMapClass(diff).factors_through_projective()

    __hash__ = None


def omega_of_map(f: ModuleMap) -> ModuleMap:
    """Lift f through the projective covers and restrict to the syzygies."""
    sm, sn = syzygy(f.source), syzygy(f.target)
    alg = f.source.algebra
    nn = alg.order
    cols = []
    pn = sn.cover
    for j in range(sm.cover.dim // nn):
        img = f.matrix @ sm.epi.matrix[:, [j * nn + alg.index((0,) * alg.r)]]
        x = solve_matrix(sn.epi.matrix, img)
        if x is None:
            raise RuntimeError("lift through projective cover failed")
        for e in alg.monomials:
            cols.append(pn.monomial_action(e) @ x)
    if cols:
        lift = hstack(cols)
    else:
        lift = Matrix.zeros(f.matrix.field, pn.dim, 0)
    if sm.module.dim == 0:
        return ModuleMap(sm.module, sn.module, Matrix.zeros(f.matrix.field, sn.module.dim, 0), check=False)
    image = lift @ sm.inclusion
    if sn.module.dim == 0:
        return ModuleMap(sm.module, sn.module, Matrix.zeros(f.matrix.field, 0, sm.module.dim), check=False)
    c = solve_matrix(sn.inclusion, image)
    if c is None:
        raise RuntimeError("lifted map does not preserve syzygies")
    return ModuleMap(sm.module, sn.module, c, check=False)


# -- Carlson modules ----------------------------------------------------------

def degree_one_class(alg: ElemAbGroupAlg, c) -> ModuleMap:
    """zeta_c: Omega(k) -> k, the functional on rad/rad^2 with value c_i on z_i."""
    k = trivial(alg)
    syz = syzygy(k)
    f = alg.field
    row = [0] * alg.order
    for i, ci in enumerate(c):
        e = [0] * alg.r
        e[i] = 1
        row[alg.index(e)] = f(ci)
    u = Matrix(f, [row])
    return ModuleMap(syz.module, k, u @ syz.inclusion)


def carlson_L(c, n: int, p: int = 2) -> KModule:
    """Free-summand-free kernel of zeta_c^n: Omega^n(k) -> k (p = 2)."""
    if p != 2:
        raise NotImplementedError("Carlson modules are only implemented for p = 2")
    if n < 1:
        raise ValueError("n must be at least 1")
    alg = ElemAbGroupAlg(2, len(c))
    if all(int(x) % 2 == 0 for x in c):
        raise ValueError("class must be nonzero")
    zeta = degree_one_class(alg, c)
    composite = zeta
    step = zeta
    for _ in range(n - 1):
        step = omega_of_map(step)
        composite = composite.compose(step)
    src = composite.source
    ker = kernel_matrix(composite.matrix)
    return strip_free(submodule(src, ker))


# -- injective resolutions ------------------------------------------------------

@dataclass
class InjectiveResolution:
    target: KModule
    modules: list          # I^0 .. I^N
    coaugmentation: ModuleMap   # M -> I^0
    differentials: list    # d^j: I^j -> I^{j+1}

    @property
    def ranks(self):
        return [m.dim // self.target.algebra.order for m in self.modules]


def injective_hull(m: KModule):
    """(I, iota): I = dual of the projective cover of dual(M)."""
    p_mod, epi = projective_cover(dual(m))
    inj = dual(p_mod)
    return inj, ModuleMap(m, inj, epi.matrix.T, check=False)


def injective_resolution(m: KModule, n: int) -> InjectiveResolution:
    if n < 0:
        raise ValueError("length must be non-negative")
    inj, iota = injective_hull(m)
    modules = [inj]
    diffs = []
    cur_inj, cur_iota = inj, iota
    for _ in range(n):
        coker, q = quotient(cur_inj, cur_iota.matrix)
        nxt, nxt_iota = injective_hull(coker)
        diffs.append(ModuleMap(cur_inj, nxt, nxt_iota.matrix @ q, check=False))
        modules.append(nxt)
        cur_inj, cur_iota = nxt, ModuleMap(cur_inj, nxt, nxt_iota.matrix @ q, check=False)
    return InjectiveResolution(m, modules, iota, diffs)
