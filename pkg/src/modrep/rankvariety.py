"""Rank varieties as determinantal ideals in GF(p)[a_1..a_r], compared up to radical.

The ideal of a module of dimension d (p | d) is generated by the N x N minors of
X(a) = sum a_i Z_i, N = (p-1) d / p.  When the minor count is out of reach and
r <= 2, the same radical is obtained from the N-th determinantal divisor of the
pencil Z_1 + t Z_2 over GF(p)[t] (plus the point at infinity).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .ideals import Ideal, ideal_eq_radical, radical_contains, radical_member
from .kmodule import KModule, shifted_free
from .linalg import rank
from .poly import PolyRing

MAX_MINOR_DIM = 12
MAX_RANK = 4
MAX_MINORS = 4000
MAX_PENCIL_DIM = 400


class SizeLimitError(RuntimeError):
    """Input exceeds the documented computation limits."""


@dataclass
class RankVarietyIdeal:
    ideal: Ideal
    required_rank: int | None
    never_free: bool = False

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring

    @property
    def generators(self):
        return list(self.ideal.gens)

    def generator_strings(self):
        return [str(g) for g in self.ideal.gens]


def variety_ring(p: int, r: int) -> PolyRing:
    return PolyRing(p, [f"a{i + 1}" for i in range(r)])


def symbolic_matrix(m: KModule, ring: PolyRing):
    """X(a) = sum a_i Z_i as a list of rows of MultiPoly."""
    d = m.dim
    out = [[ring.zero() for _ in range(d)] for _ in range(d)]
    for i, z in enumerate(m.actions):
        a = ring.var(i)
        data = z.data
        for r_ in range(d):
            for c in range(d):
                v = int(data[r_, c])
                if v:
                    out[r_][c] = out[r_][c] + a.scale(v)
    return out


def determinant(mat, ring):
    """Fraction-free (Bareiss) determinant of a square polynomial matrix."""
    n = len(mat)
    if n == 0:
        return ring.one()
    a = [list(row) for row in mat]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return ring.zero()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev) if not num.is_zero() else num
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def _canonical(gens, ring):
    seen = {}
    for g in gens:
        if g.is_zero():
            continue
        g = g.monic()
        seen.setdefault(str(g), g)
    return [seen[k] for k in sorted(seen, key=lambda s: (seen[s].degree(), s))]


def rank_variety_ideal(m: KModule) -> RankVarietyIdeal:
    if not m.field.is_prime_field:
        raise ValueError("rank varieties are computed for modules over a prime field only")
    p, r, d = m.p, m.r, m.dim
    ring = variety_ring(p, r)
    if d % p:
        return RankVarietyIdeal(Ideal(ring, []), None, never_free=True)
    n_req = (p - 1) * d // p
    if n_req == 0:
        return RankVarietyIdeal(Ideal(ring, [ring.one()]), 0)
    x = symbolic_matrix(m, ring)
    rows = [i for i in range(d) if any(not e.is_zero() for e in x[i])]
    cols = [j for j in range(d) if any(not x[i][j].is_zero() for i in range(d))]
    if len(rows) < n_req or len(cols) < n_req:
        return RankVarietyIdeal(Ideal(ring, []), n_req)
    count = comb(len(rows), n_req) * comb(len(cols), n_req)
    if d <= MAX_MINOR_DIM and r <= MAX_RANK and count <= MAX_MINORS:
        gens = []
        for rs in combinations(rows, n_req):
            for cs in combinations(cols, n_req):
                gens.append(determinant([[x[i][j] for j in cs] for i in rs], ring))
        return RankVarietyIdeal(Ideal(ring, _canonical(gens, ring)), n_req)
    if r <= 2 and d <= MAX_PENCIL_DIM:
        return RankVarietyIdeal(Ideal(ring, _pencil_generators(m, n_req, ring)), n_req)
    raise SizeLimitError(
        f"rank variety of a {d}-dimensional module over a rank-{r} group exceeds the limits "
        f"(dim <= {MAX_MINOR_DIM}, r <= {MAX_RANK}, or r <= 2 and dim <= {MAX_PENCIL_DIM})")


# -- pencil route (r <= 2) -----------------------------------------------------

def _upoly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _upoly_sub(a, b, p):
    n = max(len(a), len(b))
    return _upoly_trim(((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n))


def _upoly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _upoly_trim(out)


def _upoly_divmod(a, b, p):
    inv = pow(b[-1], p - 2, p)
    rem = list(a)
    db = len(b) - 1
    q = [0] * max(0, len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = rem[k]
        if c:
            c = (c * inv) % p
            q[k - db] = c
            for j, y in enumerate(b):
                rem[k - db + j] = (rem[k - db + j] - c * y) % p
    return _upoly_trim(q), _upoly_trim(rem[:db] if db else [])


def determinantal_divisor(z1, z2, n_req: int, p: int):
    """N-th determinantal divisor of Z1 + t Z2 over GF(p)[t] (coefficients low to high).

    Returns () when the rank over GF(p)(t) is below N.  The matrix is diagonalised
    by unimodular row and column operations with minimal-degree pivots.
    """
    d = z1.nrows
    a1, a2 = z1.data, z2.data
    rows = {}
    colsets = {}
    for i in range(d):
        for j in range(d):
            e = _upoly_trim((int(a1[i, j]), int(a2[i, j])))
            if e:
                rows.setdefault(i, {})[j] = e
                colsets.setdefault(j, set()).add(i)

    def setv(i, j, v):
        if v:
            rows.setdefault(i, {})[j] = v
            colsets.setdefault(j, set()).add(i)
        else:
            row = rows.get(i)
            if row is not None and j in row:
                del row[j]
                if not row:
                    del rows[i]
                colsets[j].discard(i)
                if not colsets[j]:
                    del colsets[j]

    def best():
        bi = bj = None
        bd = None
        for i in sorted(rows):
            for j, v in rows[i].items():
                if bd is None or len(v) < bd or (len(v) == bd and (i, j) < (bi, bj)):
                    bi, bj, bd = i, j, len(v)
                    if bd == 1:
                        return bi, bj
        return (bi, bj) if bd is not None else None

    product = (1,)
    pivots = 0
    while rows:
        i, j = best()
        while True:
            piv = rows[i][j]
            for k in sorted(colsets.get(j, ()) - {i}):
                q, _ = _upoly_divmod(rows[k][j], piv, p)
                for l, v in list(rows[i].items()):
                    setv(k, l, _upoly_sub(rows.get(k, {}).get(l, ()), _upoly_mul(q, v, p), p))
            for l in sorted(set(rows.get(i, {})) - {j}):
                q, _ = _upoly_divmod(rows[i][l], piv, p)
                for k in list(colsets.get(j, ())):
                    v = rows[k][j]
                    setv(k, l, _upoly_sub(rows.get(k, {}).get(l, ()), _upoly_mul(q, v, p), p))
            cand = [(len(rows[k][j]), k, j) for k in colsets.get(j, ()) if k != i]
            cand += [(len(v), i, l) for l, v in rows.get(i, {}).items() if l != j]
            if not cand:
                break
            _, i, j = min(cand)
        product = _upoly_mul(product, rows[i][j], p)
        pivots += 1
        setv(i, j, ())
    if pivots < n_req:
        return ()
    inv = pow(product[-1], p - 2, p)
    return tuple((c * inv) % p for c in product)


def _pencil_generators(m: KModule, n_req: int, ring: PolyRing):
    p = m.p
    if m.r == 1:
        if rank(m.actions[0]) < n_req:
            return []
        return [ring.var(0) ** n_req]
    z1, z2 = m.actions
    dd = determinantal_divisor(z1, z2, n_req, p)
    if not dd:
        return []
    a1, a2 = ring.var(0), ring.var(1)
    e = len(dd) - 1
    g = ring.zero()
    for k, c in enumerate(dd):
        if c:
            g = g + (a1 ** (e - k) * a2 ** k).scale(c)
    if rank(z2) < n_req:
        g = g * a1
    rest = n_req - g.degree()
    if rest < 0:
        raise RuntimeError("determinantal divisor exceeds the minor degree")
    if rest == 0:
        return [g]
    return _canonical([g * a1 ** rest, g * a2 ** rest], ring)


# -- queries and set operations --------------------------------------------------

def is_origin_only(v: RankVarietyIdeal) -> bool:
    if v.never_free:
        return False
    ring = v.ring
    return all(radical_member(ring.var(i), v.ideal) for i in range(ring.nvars))


def variety_contains_point(v: RankVarietyIdeal, alpha) -> bool:
    if len(alpha) != v.ring.nvars:
        raise ValueError("point has the wrong number of coordinates")
    for g in v.ideal.gens:
        val = g.evaluate(list(alpha))
        if (val % v.ring.p if isinstance(val, int) else not val.is_zero()):
            return False
    return True


def variety_intersect(u: RankVarietyIdeal, v: RankVarietyIdeal) -> RankVarietyIdeal:
    return RankVarietyIdeal(u.ideal + v.ideal, None)


def variety_union(u: RankVarietyIdeal, v: RankVarietyIdeal) -> RankVarietyIdeal:
    return RankVarietyIdeal(u.ideal * v.ideal, None, never_free=u.never_free or v.never_free)


def variety_equal(u: RankVarietyIdeal, v: RankVarietyIdeal) -> bool:
    return ideal_eq_radical(u.ideal, v.ideal)


def variety_subset(u: RankVarietyIdeal, v: RankVarietyIdeal) -> bool:
    """V(u) inside V(v)."""
    return radical_contains(u.ideal, v.ideal)


def point_consistent(m: KModule, v: RankVarietyIdeal, alpha) -> bool:
    return variety_contains_point(v, alpha) == (not shifted_free(m, alpha))
