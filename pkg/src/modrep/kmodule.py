"""Modules over kE, E = (Z/p)^r, stored by the nilpotent actions Z_i = g_i - 1."""

from __future__ import annotations

import itertools
from functools import cached_property

from .fields import PrimeField
from .linalg import (
    Matrix,
    block_diag,
    column_space_basis,
    complement_columns,
    hstack,
    kernel_matrix,
    rank,
    rref,
    solve_matrix,
    vstack,
)


class ModuleError(ValueError):
    """Invalid module data (shapes, commutation, nilpotency)."""


class ElemAbGroupAlg:
    """The group algebra kE = k[z_1..z_r]/(z_i^p) of E = (Z/p)^r."""

    def __init__(self, p: int, r: int, field=None):
        if r < 1:
            raise ValueError("rank must be at least 1")
        self.field = field if field is not None else PrimeField(p)
        if self.field.characteristic != p:
            raise ValueError(f"field {self.field} does not have characteristic {p}")
        self.p = p
        self.r = r

    @property
    def order(self) -> int:
        return self.p ** self.r

    @cached_property
    def monomials(self):
        """Exponent vectors of the basis z^e of kE, lexicographic."""
        return list(itertools.product(range(self.p), repeat=self.r))

    def index(self, e) -> int:
        i = 0
        for x in e:
            i = i * self.p + x
        return i

    @property
    def top_exponent(self):
        return (self.p - 1,) * self.r

    def with_field(self, field) -> "ElemAbGroupAlg":
        return ElemAbGroupAlg(self.p, self.r, field)

    def sub(self, size: int) -> "ElemAbGroupAlg":
        return ElemAbGroupAlg(self.p, size, self.field)

    def __eq__(self, other):
        return (isinstance(other, ElemAbGroupAlg) and (self.p, self.r) == (other.p, other.r)
                and self.field == other.field)

    def __hash__(self):
        return hash((self.p, self.r, self.field))

    def __repr__(self):
        return f"ElemAbGroupAlg(p={self.p}, r={self.r}, field={self.field})"


class KModule:
    """Finite-dimensional kE-module: d x d matrices Z_1..Z_r (action of g_i - 1)."""

    def __init__(self, algebra: ElemAbGroupAlg, actions, validate: bool = True):
        self.algebra = algebra
        self.actions = tuple(actions)
        if len(self.actions) != algebra.r:
            raise ModuleError(f"expected {algebra.r} action matrices, got {len(self.actions)}")
        dims = {a.shape for a in self.actions}
        if len(dims) != 1:
            raise ModuleError("action matrices have different shapes")
        (shape,) = dims
        if shape[0] != shape[1]:
            raise ModuleError(f"action matrices are not square: {shape}")
        for a in self.actions:
            if a.field != algebra.field:
                raise ModuleError(f"matrix over {a.field}, algebra over {algebra.field}")
        self.dim = shape[0]
        self._mono = {}
        if validate:
            self.validate()

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def r(self) -> int:
        return self.algebra.r

    @property
    def field(self):
        return self.algebra.field

    def validate(self):
        zs = self.actions
        for i in range(len(zs)):
            for j in range(i + 1, len(zs)):
                if zs[i] @ zs[j] != zs[j] @ zs[i]:
                    raise ModuleError(f"actions {i + 1} and {j + 1} do not commute")
        for i, z in enumerate(zs):
            if not (z ** self.p).is_zero():
                raise ModuleError(f"action {i + 1} is not p-nilpotent")
        return self

    def monomial_action(self, e) -> Matrix:
        """Matrix of z^e = prod z_i^{e_i}."""
        e = tuple(e)
        out = self._mono.get(e)
        if out is None:
            out = Matrix.identity(self.field, self.dim)
            for z, k in zip(self.actions, e):
                if k:
                    out = out @ (z ** k)
            self._mono[e] = out
        return out

    def group_matrices(self):
        ident = Matrix.identity(self.field, self.dim)
        return [ident + z for z in self.actions]

    def radical_matrix(self) -> Matrix:
        """Columns span rad M = sum_i Z_i M."""
        if self.dim == 0:
            return Matrix.zeros(self.field, 0, 0)
        return hstack(self.actions)

    def top_dim(self) -> int:
        return self.dim - rank(self.radical_matrix())

    def top_lifts(self):
        """Standard basis indices whose images form a basis of M / rad M (greedy)."""
        if self.dim == 0:
            return []
        rad = column_space_basis(self.radical_matrix())
        return complement_columns(rad)

    def __eq__(self, other):
        return (isinstance(other, KModule) and other.algebra == self.algebra
                and other.dim == self.dim
                and all(a == b for a, b in zip(self.actions, other.actions)))

    __hash__ = None

    def __repr__(self):
        return f"KModule(p={self.p}, r={self.r}, dim={self.dim})"


class ModuleMap:
    """kE-linear map; ``matrix`` is (dim target) x (dim source)."""

    def __init__(self, source: KModule, target: KModule, matrix: Matrix, check: bool = True):
        if source.algebra != target.algebra:
            raise ModuleError("source and target over different algebras")
        if matrix.shape != (target.dim, source.dim):
            raise ModuleError(f"map matrix has shape {matrix.shape}, expected {(target.dim, source.dim)}")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check and not self.is_linear():
            raise ModuleError("matrix does not intertwine the actions")

    def is_linear(self) -> bool:
        return all(self.matrix @ zs == zt @ self.matrix
                   for zs, zt in zip(self.source.actions, self.target.actions))

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self o other."""
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix, check=False)


# -- constructors -----------------------------------------------------------

def from_group_matrices(p: int, r: int, mats, z_form: bool = False, field=None) -> KModule:
    """Module from matrices of the generators g_i (or of z_i when ``z_form``)."""
    field = field if field is not None else PrimeField(p)
    alg = ElemAbGroupAlg(p, r, field)
    mats = [m if isinstance(m, Matrix) else Matrix(field, m) for m in mats]
    if len(mats) != r:
        raise ModuleError(f"expected {r} matrices, got {len(mats)}")
    sizes = {m.shape for m in mats}
    for i, m in enumerate(mats):
        if m.nrows != m.ncols:
            raise ModuleError(f"matrix {i + 1} is not square: {m.shape}")
    if len(sizes) > 1:
        raise ModuleError("matrices have different sizes")
    if z_form:
        zs = mats
    else:
        d = mats[0].nrows
        ident = Matrix.identity(field, d)
        for i, g in enumerate(mats):
            if g ** p != ident:
                raise ModuleError(f"generator {i + 1} does not have order dividing p")
        zs = [g - ident for g in mats]
    return KModule(alg, zs)


def zero_module(alg: ElemAbGroupAlg) -> KModule:
    return KModule(alg, [Matrix.zeros(alg.field, 0, 0)] * alg.r, validate=False)


def trivial(alg: ElemAbGroupAlg) -> KModule:
    return KModule(alg, [Matrix.zeros(alg.field, 1, 1)] * alg.r, validate=False)


def regular(alg: ElemAbGroupAlg) -> KModule:
    """kE acting on itself, basis z^e in lexicographic order of e."""
    n = alg.order
    mons = alg.monomials
    zs = []
    for i in range(alg.r):
        a = [[0] * n for _ in range(n)]
        for col, e in enumerate(mons):
            if e[i] < alg.p - 1:
                f = list(e)
                f[i] += 1
                a[alg.index(f)][col] = 1
        zs.append(Matrix(alg.field, a))
    return KModule(alg, zs, validate=False)


def free_module(alg: ElemAbGroupAlg, rank_: int) -> KModule:
    return direct_sum(*([regular(alg)] * rank_)) if rank_ else zero_module(alg)


def generic_module(r: int, names=None) -> KModule:
    """The 2-dimensional module over GF(2)(t_1..t_r) with g_i = [[1,0],[t_i,1]]."""
    from .fields import RationalFunctionField

    names = names or [f"t{i + 1}" for i in range(r)]
    field = RationalFunctionField(PrimeField(2), names)
    alg = ElemAbGroupAlg(2, r, field)
    zs = [Matrix(field, [[0, 0], [field.gen(i), 0]]) for i in range(r)]
    return KModule(alg, zs)


# -- functorial operations ---------------------------------------------------

def _same_algebra(m: KModule, n: KModule):
    if m.algebra != n.algebra:
        raise ModuleError(f"algebra mismatch: {m.algebra} vs {n.algebra}")


def direct_sum(*mods: KModule) -> KModule:
    if not mods:
        raise ValueError("direct_sum needs at least one module")
    for m in mods[1:]:
        _same_algebra(mods[0], m)
    alg = mods[0].algebra
    zs = [block_diag([m.actions[i] for m in mods], alg.field) for i in range(alg.r)]
    return KModule(alg, zs, validate=False)


def tensor_diag(m: KModule, n: KModule) -> KModule:
    """M (x)_k N with the diagonal action: z acts as Z(x)I + I(x)Z' + Z(x)Z'."""
    _same_algebra(m, n)
    im = Matrix.identity(m.field, m.dim)
    inn = Matrix.identity(n.field, n.dim)
    zs = []
    for a, b in zip(m.actions, n.actions):
        zs.append(a.kron(inn) + im.kron(b) + a.kron(b))
    return KModule(m.algebra, zs, validate=False)


def _unipotent_inverse(z: Matrix, p: int) -> Matrix:
    """(I + Z)^{-1} = sum_{j<p} (-Z)^j for Z^p = 0."""
    n = z.nrows
    out = Matrix.identity(z.field, n)
    term = Matrix.identity(z.field, n)
    neg = -z
    for _ in range(1, p):
        term = term @ neg
        out = out + term
    return out


def dual(m: KModule) -> KModule:
    """Hom_k(M, k) with (g.f)(x) = f(g^{-1} x)."""
    ident = Matrix.identity(m.field, m.dim)
    zs = [_unipotent_inverse(z, m.p).T - ident for z in m.actions]
    return KModule(m.algebra, zs, validate=False)


def hom_module(m: KModule, n: KModule) -> KModule:
    """Hom_k(M, N) with the conjugation action, realised as M* (x) N."""
    return tensor_diag(dual(m), n)


def fixed_points(m: KModule) -> Matrix:
    """Basis (columns) of the simultaneous kernel of all Z_i."""
    if m.dim == 0:
        return Matrix.zeros(m.field, 0, 0)
    return kernel_matrix(vstack(m.actions))


def hom_space(m: KModule, n: KModule):
    """Basis of Hom_kE(M, N) as (dim N) x (dim M) matrices, by solving X Z = Z' X."""
    _same_algebra(m, n)
    f = m.field
    dm, dn = m.dim, n.dim
    if dm == 0 or dn == 0:
        return []
    blocks = []
    for a, b in zip(m.actions, n.actions):
        # row-major vec: vec(X A) = (I kron A^T) vec X, vec(B X) = (B kron I) vec X
        blocks.append(Matrix.identity(f, dn).kron(a.T) - b.kron(Matrix.identity(f, dm)))
    ker = kernel_matrix(vstack(blocks))
    out = []
    for j in range(ker.ncols):
        col = ker.data[:, j]
        out.append(Matrix._wrap(f, col.reshape(dn, dm).copy()))
    return out


def hom_dim(m: KModule, n: KModule) -> int:
    return len(hom_space(m, n))


def restrict_shifted(m: KModule, alpha) -> Matrix:
    """X(alpha) = sum_i alpha_i Z_i, the action of the shifted generator."""
    if len(alpha) != m.r:
        raise ValueError(f"alpha must have {m.r} entries")
    f = m.field
    coords = [f(a) for a in alpha]
    if all(f.is_zero(a) for a in coords):
        raise ValueError("alpha must be nonzero")
    out = Matrix.zeros(f, m.dim, m.dim)
    for a, z in zip(coords, m.actions):
        if not f.is_zero(a):
            out = out + z.scale(a)
    return out


def shifted_free(m: KModule, alpha) -> bool:
    """Is the restriction to <1 + x_alpha> free?  Never when p does not divide dim."""
    x = restrict_shifted(m, alpha)
    if m.dim % m.p:
        return False
    return rank(x) == (m.p - 1) * m.dim // m.p


def restrict_subset(m: KModule, subset) -> KModule:
    """Restriction to the subgroup generated by g_i, i in subset (0-based indices)."""
    subset = sorted(set(subset))
    if not subset:
        raise ValueError("subset must be nonempty")
    if subset[0] < 0 or subset[-1] >= m.r:
        raise ValueError(f"subset indices must lie in 0..{m.r - 1}")
    alg = m.algebra.sub(len(subset))
    return KModule(alg, [m.actions[i] for i in subset], validate=False)


def induce_subset(m: KModule, algebra: ElemAbGroupAlg, subset) -> KModule:
    """kE (x)_{kE_S} M for the subgroup E_S generated by g_i, i in subset (0-based).

    Basis: coset monomials z^f (f supported off S, lexicographic) tensor basis of M.
    """
    subset = sorted(set(subset))
    if len(subset) != m.r:
        raise ModuleError(f"module has rank {m.r} but subset has {len(subset)} elements")
    if m.p != algebra.p or m.field != algebra.field:
        raise ModuleError("module and algebra differ in p or field")
    if subset and (subset[0] < 0 or subset[-1] >= algebra.r):
        raise ValueError("subset index out of range")
    rest = [i for i in range(algebra.r) if i not in subset]
    f = algebra.field
    if not rest:
        return KModule(algebra, list(m.actions), validate=False)
    cos = regular(ElemAbGroupAlg(algebra.p, len(rest), f))
    ic = Matrix.identity(f, cos.dim)
    im = Matrix.identity(f, m.dim)
    zs = []
    for i in range(algebra.r):
        if i in subset:
            zs.append(ic.kron(m.actions[subset.index(i)]))
        else:
            zs.append(cos.actions[rest.index(i)].kron(im))
    return KModule(algebra, zs, validate=False)


# -- projectivity and free summands -------------------------------------------

def is_projective(m: KModule) -> bool:
    """M is free iff dim M = p^r dim(M / rad M)."""
    return m.dim == m.algebra.order * m.top_dim()


def socle_element_action(m: KModule) -> Matrix:
    """Action of w = (z_1 ... z_r)^{p-1}."""
    return m.monomial_action(m.algebra.top_exponent)


def free_rank(m: KModule) -> int:
    if m.dim == 0:
        return 0
    return rank(socle_element_action(m))


def frobenius_functional_map(m: KModule, phi: Matrix) -> Matrix:
    """kE-linear map M -> kE^s attached to functionals phi (s x dim M).

    Row (j, e) is phi_j o z^{top - e}; the z^0-coefficient of the image is phi_j o w.
    """
    alg = m.algebra
    top = alg.top_exponent
    rows = []
    for j in range(phi.nrows):
        pj = phi[j:j + 1, :]
        for e in alg.monomials:
            rows.append(pj @ m.monomial_action(tuple(t - x for t, x in zip(top, e))))
    return vstack(rows, m.field, m.dim)


def split_free(m: KModule):
    """(generators m_j, complement basis C) with M = (+) kE m_j  (+)  span(C).

    The m_j are standard basis vectors chosen greedily so that w m_j are independent;
    the complement is the kernel of the kE-map M -> kE^s built from functionals dual
    to the socle images w m_j.
    """
    w = socle_element_action(m) if m.dim else Matrix.zeros(m.field, 0, 0)
    if m.dim == 0 or w.is_zero():
        return [], Matrix.identity(m.field, m.dim)
    _, idx = rref(w)
    u = w[:, idx] if len(idx) else None
    s = len(idx)
    f = m.field
    ident = Matrix.identity(f, s)
    phi_t = solve_matrix(u.T, ident)
    phi = phi_t.T  # s x d with phi u = I
    big = frobenius_functional_map(m, phi)
    comp = kernel_matrix(big)
    return idx, comp


def submodule(m: KModule, basis: Matrix) -> KModule:
    """Induced action on an invariant subspace with the given basis columns."""
    k = basis.ncols
    if k == 0:
        return zero_module(m.algebra)
    zs = []
    for z in m.actions:
        a = solve_matrix(basis, z @ basis)
        if a is None:
            raise ModuleError("subspace is not invariant")
        zs.append(a)
    return KModule(m.algebra, zs, validate=False)


def quotient(m: KModule, basis: Matrix):
    """(M / span(basis), projection matrix Q) with Q kE-linear."""
    f = m.field
    d = m.dim
    if basis.ncols:
        basis = column_space_basis(basis)
    comp = complement_columns(basis) if basis.ncols else list(range(d))
    ident = Matrix.identity(f, d)
    e_s = ident[:, comp] if comp else Matrix.zeros(f, d, 0)
    t = hstack([basis, e_s]) if basis.ncols else e_s
    tinv = solve_matrix(t, ident)
    q = tinv[basis.ncols:, :] if comp else Matrix.zeros(f, 0, d)
    if not comp:
        return zero_module(m.algebra), q
    zs = [q @ z @ e_s for z in m.actions]
    return KModule(m.algebra, zs, validate=False), q


def strip_free(m: KModule) -> KModule:
    """Complement of a maximal free summand."""
    idx, comp = split_free(m)
    if not idx:
        return m
    return submodule(m, comp)


def change_basis(m: KModule, t: Matrix) -> KModule:
    """Module with actions T^{-1} Z T (columns of T are the new basis)."""
    from .linalg import inverse

    ti = inverse(t)
    return KModule(m.algebra, [ti @ z @ t for z in m.actions], validate=False)
