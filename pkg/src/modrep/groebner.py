"""Buchberger's algorithm for ideals and submodules of free modules over GF(p)[x].

Elements are "vector polynomials": dicts mapping ``(component, exponents)`` to
a nonzero coefficient.  Ideals are the one-component case.  Module terms are
ordered position-over-term with lower component index larger, so a basis of
``[image | tags]`` vectors eliminates the image components.
"""

from __future__ import annotations

import heapq


def to_vec(polys):
    """List of MultiPoly (one per component) -> vector dict."""
    v = {}
    for c, f in enumerate(polys):
        for e, coef in f.terms.items():
            v[(c, e)] = coef
    return v


def from_vec(v, ring, ncomps):
    out = [dict() for _ in range(ncomps)]
    for (c, e), coef in v.items():
        out[c][e] = coef
    from .poly import MultiPoly

    return [MultiPoly(ring, t) for t in out]


def term_key(order):
    k = order.key
    return lambda t: (-t[0], k(t[1]))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _sub_multiple(f, g, shift, coef, p):
    """f -= coef * x^shift * g  (in place)."""
    for (c, e), v in g.items():
        t = (c, tuple(a + b for a, b in zip(e, shift)))
        nv = (f.get(t, 0) - coef * v) % p
        if nv:
            f[t] = nv
        else:
            f.pop(t, None)


class _Basis:
    def __init__(self, p, key):
        self.p = p
        self.key = key
        self.elems = []   # (lt, lc, vec)

    def add(self, vec):
        lt = max(vec, key=self.key)
        self.elems.append((lt, vec[lt], vec))
        return len(self.elems) - 1

    def find_reducer(self, t, skip=None):
        c, e = t
        for idx, (lt, lc, g) in enumerate(self.elems):
            if idx == skip or g is None:
                continue
            if lt[0] == c and _divides(lt[1], e):
                return lt, lc, g
        return None

    def reduce(self, f, skip=None):
        """Full normal form of f (a new dict)."""
        p, key = self.p, self.key
        f = dict(f)
        r = {}
        while f:
            t = max(f, key=key)
            c = f[t]
            red = self.find_reducer(t, skip)
            if red is None:
                r[t] = c
                del f[t]
                continue
            lt, lc, g = red
            q = (c * pow(lc, p - 2, p)) % p
            shift = tuple(a - b for a, b in zip(t[1], lt[1]))
            _sub_multiple(f, g, shift, q, p)
        return r


def _monic(v, key, p):
    lt = max(v, key=key)
    inv = pow(v[lt], p - 2, p)
    if inv == 1:
        return v
    return {t: (c * inv) % p for t, c in v.items()}


def buchberger(vecs, p, order, product_criterion=True, stop_on_unit=False):
    """Reduced Groebner basis (list of monic vector dicts, sorted by leading term).

    ``product_criterion`` must only be enabled for ideals (one component).
    ``stop_on_unit`` returns ``[{(0, 0...): 1}]`` as soon as a constant appears.
    """
    key = term_key(order)
    basis = _Basis(p, key)
    for v in vecs:
        v = basis.reduce(v) if basis.elems else dict(v)
        if v:
            if stop_on_unit and _is_unit(v):
                return [_monic(v, key, p)]
            basis.add(_monic(v, key, p))
    # the initial inputs may reduce each other further; pairs take care of it
    pending = set()
    heap = []

    def push(i, j):
        lti, ltj = basis.elems[i][0], basis.elems[j][0]
        if lti[0] != ltj[0]:
            return
        lcm = tuple(max(a, b) for a, b in zip(lti[1], ltj[1]))
        if product_criterion and all(min(a, b) == 0 for a, b in zip(lti[1], ltj[1])):
            return
        pending.add((i, j))
        heapq.heappush(heap, (key((lti[0], lcm)), i, j, lcm))

    n0 = len(basis.elems)
    for j in range(n0):
        for i in range(j):
            push(i, j)

    while heap:
        _, i, j, lcm = heapq.heappop(heap)
        pending.discard((i, j))
        comp = basis.elems[i][0][0]
        # chain criterion
        skip = False
        for k, (ltk, _, gk) in enumerate(basis.elems):
            if k in (i, j) or ltk[0] != comp:
                continue
            if _divides(ltk[1], lcm):
                a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
                if a not in pending and b not in pending:
                    skip = True
                    break
        if skip:
            continue
        s = _spoly(basis.elems[i], basis.elems[j], lcm, p)
        h = basis.reduce(s)
        if not h:
            continue
        h = _monic(h, key, p)
        if stop_on_unit and _is_unit(h):
            return [h]
        new = basis.add(h)
        for k in range(new):
            push(k, new)

    return _reduce_basis([g for (_, _, g) in basis.elems], p, key)


def _is_unit(v):
    if len(v) != 1:
        return False
    (c, e), = v.keys()
    return not any(e)


def _spoly(a, b, lcm, p):
    (lta, lca, ga), (ltb, lcb, gb) = a, b
    sa = tuple(x - y for x, y in zip(lcm, lta[1]))
    sb = tuple(x - y for x, y in zip(lcm, ltb[1]))
    s = {}
    ia = pow(lca, p - 2, p)
    ib = pow(lcb, p - 2, p)
    _sub_multiple(s, ga, sa, (-ia) % p, p)
    _sub_multiple(s, gb, sb, ib, p)
    return s


def _reduce_basis(gs, p, key):
    lts = [max(g, key=key) for g in gs]
    keep = []
    for i, g in enumerate(gs):
        lt = lts[i]
        redundant = False
        for j, ltj in enumerate(lts):
            if j == i or ltj[0] != lt[0] or not _divides(ltj[1], lt[1]):
                continue
            if ltj != lt or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = _Basis(p, key)
        for j, h in enumerate(keep):
            if j != i:
                others.add(h)
        lt = max(g, key=key)
        tail = {t: c for t, c in g.items() if t != lt}
        red = others.reduce(tail) if tail else {}
        red[lt] = g[lt]
        out.append(_monic(red, key, p))
    out.sort(key=lambda v: key(max(v, key=key)))
    return out


def normal_form_vec(v, basis_vecs, p, order):
    b = _Basis(p, term_key(order))
    for g in basis_vecs:
        b.add(g)
    return b.reduce(v)
