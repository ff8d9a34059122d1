"""A finite window of the BGG-type functor over kE, p = 2.

J is the complex kE (x) S with S = GF(2)[x_1..x_r] in degree i spanned by the
degree-i monomials and d(z^e (x) s) = sum_l z_l z^e (x) x_l s; it is an injective
coresolution of k.  For a module M with injective resolution I, the cohomology
of Hom(J, I) is Ext(k, M) and S acts by precomposition with right
multiplication by x_l.  Everything is truncated; which degrees are exact is
tracked explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb

import numpy as np

from .fields import PrimeField
from .homalg import ext_dims, injective_resolution, precompose_matrix
from .kmodule import ElemAbGroupAlg, KModule, free_module, trivial
from .linalg import Matrix, block_diag, hstack, kernel_matrix, rank, rref, solve_matrix


def s_monomials(r: int, degree: int):
    """Exponent tuples of degree ``degree`` in r variables, in a fixed order."""
    out = []
    for combo in combinations_with_replacement(range(r), degree):
        e = [0] * r
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def _shift(e, l, k=1):
    e = list(e)
    e[l] += k
    return tuple(e)


@dataclass
class TruncatedJ:
    r: int
    N: int
    algebra: ElemAbGroupAlg
    monomials: list          # monomials[i]: basis of S^i
    index: list              # index[i]: monomial -> position
    coefficients: list       # kE-coefficients of d^i: J^i -> J^{i+1}
    differentials: list      # d^i as GF(2) matrices

    @property
    def ranks(self):
        return [len(m) for m in self.monomials]

    def module(self, i: int) -> KModule:
        return free_module(self.algebra, self.ranks[i])

    def right_mult_coefficients(self, i: int, l: int):
        """gen(s) -> gen(s x_l) from J^i to J^{i+1}, as kE-coefficients."""
        zero = (0,) * self.r
        out = [[{} for _ in self.monomials[i]] for _ in self.monomials[i + 1]]
        for j, s in enumerate(self.monomials[i]):
            out[self.index[i + 1][_shift(s, l)]][j][zero] = 1
        return out


def build_J(r: int, N: int) -> TruncatedJ:
    if N < 1:
        raise ValueError("the window must have N >= 1")
    if r < 1:
        raise ValueError("rank must be positive")
    alg = ElemAbGroupAlg(2, r)
    mons = [s_monomials(r, i) for i in range(N + 1)]
    index = [{s: k for k, s in enumerate(ms)} for ms in mons]
    coeffs = []
    diffs = []
    n = alg.order
    f = PrimeField(2)
    for i in range(N):
        c = [[{} for _ in mons[i]] for _ in mons[i + 1]]
        for j, s in enumerate(mons[i]):
            for l in range(r):
                c[index[i + 1][_shift(s, l)]][j][_shift((0,) * r, l)] = 1
        coeffs.append(c)
        data = [[0] * (len(mons[i]) * n) for _ in range(len(mons[i + 1]) * n)]
        for j, s in enumerate(mons[i]):
            for e in alg.monomials:
                src = j * n + alg.index(e)
                for l in range(r):
                    if e[l] == 0:
                        tgt = index[i + 1][_shift(s, l)] * n + alg.index(_shift(e, l))
                        data[tgt][src] ^= 1
        diffs.append(Matrix(f, data))
    return TruncatedJ(r, N, alg, mons, index, coeffs, diffs)


class HomComplex:
    """Hom(J_{<=A}, T_{<=B}) with Hom(J^i, T) = T^{b_i} (images of generators)."""

    def __init__(self, jay: TruncatedJ, src_top: int, targets, target_diffs):
        if src_top > jay.N:
            raise ValueError("source truncation beyond the built J")
        self.jay = jay
        self.A = src_top
        self.targets = list(targets)
        self.tdiffs = list(target_diffs)
        self.B = len(self.targets) - 1
        self.field = PrimeField(2)
        self._layout = {}

    def layout(self, n: int):
        """[(i, offset, size)] for the components Hom(J^i, T^{i+n})."""
        if n not in self._layout:
            out = []
            off = 0
            b = self.jay.ranks
            for i in range(self.A + 1):
                j = i + n
                if 0 <= j <= self.B:
                    size = b[i] * self.targets[j].dim
                    out.append((i, off, size))
                    off += size
            self._layout[n] = (out, off)
        return self._layout[n]

    def dim(self, n: int) -> int:
        return self.layout(n)[1]

    def _assemble(self, n_src: int, n_tgt: int, blocks):
        src, ds = self.layout(n_src)
        tgt, dt = self.layout(n_tgt)
        spos = {i: (o, s) for i, o, s in src}
        tpos = {i: (o, s) for i, o, s in tgt}
        data = np.zeros((dt, ds), dtype=np.int64)
        for (ti, si), mat in blocks:
            if ti not in tpos or si not in spos:
                continue
            to, _ = tpos[ti]
            so, _ = spos[si]
            data[to:to + mat.nrows, so:so + mat.ncols] += mat.data
        return Matrix(self.field, data % 2)

    def differential(self, n: int) -> Matrix:
        """(Df)_i = d_T f_i + f_{i+1} d_J^i (signs vanish in characteristic 2)."""
        b = self.jay.ranks
        blocks = []
        for i in range(self.A + 1):
            j = i + n
            if 0 <= j and j + 1 <= self.B:
                blocks.append(((i, i), block_diag([self.tdiffs[j]] * b[i], field=self.field)))
            if i + 1 <= self.A and 0 <= j + 1 <= self.B:
                pre = precompose_matrix(self.jay.coefficients[i], b[i], b[i + 1], self.targets[j + 1])
                blocks.append(((i, i + 1), pre))
        return self._assemble(n, n + 1, blocks)

    def right_mult(self, n: int, l: int) -> Matrix:
        """f -> f o (right multiplication by x_l), Hom^n -> Hom^{n+1}."""
        b = self.jay.ranks
        blocks = []
        for i in range(self.A):
            j = i + n + 1
            if 0 <= j <= self.B:
                c = self.jay.right_mult_coefficients(i, l)
                blocks.append(((i, i + 1), precompose_matrix(c, b[i], b[i + 1], self.targets[j])))
        return self._assemble(n, n + 1, blocks)


@dataclass
class Cohomology:
    """H^n = Z^n / B^n with chosen cocycle representatives."""

    boundaries: Matrix
    representatives: Matrix

    @property
    def dim(self) -> int:
        return self.representatives.ncols

    def coordinates(self, vecs: Matrix) -> Matrix:
        """Coordinates of cocycles (columns) in the representative basis."""
        f = vecs.field
        if self.dim == 0:
            return Matrix.zeros(f, 0, vecs.ncols)
        sol = solve_matrix(hstack([self.boundaries, self.representatives], field=f,
                                  rows=vecs.nrows), vecs)
        if sol is None:
            raise ValueError("vector is not a cocycle")
        nb = self.boundaries.ncols
        return sol[nb:, :]


def _cohomology(d_prev: Matrix, d_cur: Matrix) -> Cohomology:
    f = d_cur.field
    z = kernel_matrix(d_cur)
    dim = d_cur.ncols
    _, piv = rref(d_prev) if d_prev.ncols else (None, [])
    b = d_prev[:, list(piv)] if piv else Matrix.zeros(f, dim, 0)
    if z.ncols == 0:
        return Cohomology(b, Matrix.zeros(f, dim, 0))
    both = hstack([b, z], field=f, rows=dim)
    _, pivots = rref(both)
    keep = [c - b.ncols for c in pivots if c >= b.ncols]
    return Cohomology(b, z[:, keep] if keep else Matrix.zeros(f, dim, 0))


def _hom_cohomology(hc: HomComplex, n: int) -> Cohomology:
    return _cohomology(hc.differential(n - 1), hc.differential(n))


# -- checks on the window ---------------------------------------------------------

def eta_check(r: int, N: int) -> bool:
    """J_{<=N} has H^0 spanned by w (x) 1 and H^i = 0 for 1 <= i <= N-1."""
    if N < 2:
        raise ValueError("eta_check needs N >= 2")
    jay = build_J(r, N)
    d0 = jay.differentials[0]
    ker = kernel_matrix(d0)
    if ker.ncols != 1:
        return False
    alg = jay.algebra
    w = [0] * alg.order
    w[alg.index(alg.top_exponent)] = 1
    if ker.column_list(0) != w:
        return False
    for i in range(1, N):
        dim_ker = jay.differentials[i].ncols - rank(jay.differentials[i])
        if dim_ker != rank(jay.differentials[i - 1]):
            return False
    return True


def _zeta_cochain(hc: HomComplex, jay: TruncatedJ, m) -> Matrix:
    """Right multiplication by x^m as a cochain of degree |m|."""
    n = sum(m)
    comps, dim = hc.layout(n)
    alg = jay.algebra
    zero = alg.index((0,) * jay.r)
    vec = [0] * dim
    for i, off, _ in comps:
        j = i + n
        for k, s in enumerate(jay.monomials[i]):
            t = tuple(a + b for a, b in zip(s, m))
            vec[off + k * hc.targets[j].dim + jay.index[j][t] * alg.order + zero] = 1
    return Matrix(PrimeField(2), [[v] for v in vec])


def zeta_data(r: int, N: int):
    """(dims of H^n(Hom(J, J)), independence of the classes of x^m) for n <= N-1."""
    jay = build_J(r, N + 1)
    targets = [jay.module(j) for j in range(N + 1)]
    hc = HomComplex(jay, N + 1, targets, jay.differentials[:N])
    dims, independent = [], []
    for n in range(N):
        h = _hom_cohomology(hc, n)
        dims.append(h.dim)
        cols = [_zeta_cochain(hc, jay, m) for m in s_monomials(r, n)]
        mat = hstack(cols, field=PrimeField(2), rows=hc.dim(n))
        ok = (hc.differential(n) @ mat).is_zero() and rank(h.coordinates(mat)) == len(cols)
        independent.append(ok)
    return dims, independent


def zeta_check(r: int, N: int) -> bool:
    """S^n -> H^n(Hom(J, J)) is an isomorphism for 0 <= n <= N-1."""
    if N < 1:
        raise ValueError("the window must have N >= 1")
    dims, independent = zeta_data(r, N)
    expected = [comb(n + r - 1, r - 1) for n in range(N)]
    return dims == expected and all(independent)


# -- the transform ------------------------------------------------------------------

@dataclass
class DGSWindow:
    """Degrees 0..N of the graded S-module attached to M; degrees < certified+1 are exact."""

    r: int
    window: int
    dims: list
    actions: dict = field(default_factory=dict)   # (l, n): H^n -> H^{n+1}
    certified: int = 0

    def action(self, l: int, n: int) -> Matrix:
        return self.actions[(l, n)]


def bgg_transform(m: KModule, N: int) -> DGSWindow:
    if m.p != 2:
        raise NotImplementedError("the BGG window is implemented for p = 2 only")
    if not m.field.is_prime_field:
        raise ValueError("module must be over GF(2)")
    if N < 1:
        raise ValueError("the window must have N >= 1")
    res = injective_resolution(m, N + 1)
    jay = build_J(m.r, N + 2)
    diffs = [d.matrix for d in res.differentials]
    hc = HomComplex(jay, N + 2, res.modules, diffs)
    coh = [_hom_cohomology(hc, n) for n in range(N + 1)]
    actions = {}
    for n in range(N):
        for l in range(m.r):
            img = hc.right_mult(n, l) @ coh[n].representatives
            actions[(l, n)] = coh[n + 1].coordinates(img)
    return DGSWindow(m.r, N, [h.dim for h in coh], actions, certified=N - 1)


def compare_with_ext(m: KModule, N: int) -> bool:
    """Window dims agree with dim Ext^n(k, M) on the certified degrees."""
    win = bgg_transform(m, N)
    ext = ext_dims(trivial(m.algebra), m, win.certified)
    return win.dims[: win.certified + 1] == list(ext)
