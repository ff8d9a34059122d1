"""Sparse multivariate polynomials over GF(p), monomial orders, text grammar.

Grammar: terms joined by ``+`` (``-`` accepted on input), a term is an
optional coefficient followed by ``*``-separated variables with ``^`` powers,
e.g. ``a1^2*a2 + 3*a2^3``.  Rings are written ``GF(p)[v1,...,vn]``.
"""

from __future__ import annotations

import re
from functools import lru_cache

from .fields import PrimeField


# -- monomial orders --------------------------------------------------------

class MonomialOrder:
    """A monomial order given by a sort key (larger key = larger monomial).

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"elim"``.  ``elim`` with
    ``block=k`` compares the last k variables first (lex), then breaks ties
    by grevlex on the remaining ones; it eliminates appended tag variables.
    """

    def __init__(self, kind: str = "grevlex", block: int = 0):
        if kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "elim" and block < 1:
            raise ValueError("elimination order needs block >= 1")
        self.kind = kind
        self.block = block if kind == "elim" else 0
        self.key = _make_key(kind, self.block)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.block) == (other.kind, other.block)

    def __hash__(self):
        return hash((self.kind, self.block))

    def __repr__(self):
        return self.kind if self.kind != "elim" else f"elim({self.block})"


def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def _make_key(kind, block):
    if kind == "grevlex":
        return lru_cache(maxsize=None)(_grevlex_key)
    if kind == "lex":
        return lambda e: e

    def elim_key(e):
        n = len(e) - block
        return (e[n:], _grevlex_key(e[:n]))

    return lru_cache(maxsize=None)(elim_key)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def _grlex_print_key(e):
    return (sum(e), e)


# -- rings and polynomials --------------------------------------------------

_RING_RE = re.compile(r"^\s*GF\(\s*(\d+)\s*\)\s*\[([^\]]*)\]\s*$")
_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")


class PolyRing:
    """GF(p)[v1,...,vn] with ordered variable names."""

    def __init__(self, field, names):
        if isinstance(field, int):
            field = PrimeField(field)
        self.field = field
        self.p = field.p
        self.names = tuple(names)
        for nm in self.names:
            if not _NAME_RE.match(nm):
                raise ValueError(f"bad variable name {nm!r}")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.nvars = len(self.names)
        self._zero_exp = (0,) * self.nvars

    @classmethod
    def from_string(cls, s: str) -> "PolyRing":
        m = _RING_RE.match(s)
        if not m:
            raise ValueError(f"bad ring descriptor {s!r}")
        names = [v.strip() for v in m.group(2).split(",") if v.strip()]
        return cls(PrimeField(int(m.group(1))), names)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.p == other.p and self.names == other.names

    def __hash__(self):
        return hash((self.p, self.names))

    def __repr__(self):
        return f"GF({self.p})[{','.join(self.names)}]"

    __str__ = __repr__

    def extend(self, *names) -> "PolyRing":
        """Ring with extra variables appended after the existing ones."""
        return PolyRing(self.field, self.names + tuple(names))

    def fresh_names(self, base: str, count: int):
        out, i = [], 0
        while len(out) < count:
            nm = f"{base}{i}" if (count > 1 or i) else base
            if nm not in self.names and nm not in out:
                out.append(nm)
            i += 1
        return out

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return MultiPoly(self, {self._zero_exp: 1})

    def constant(self, c) -> "MultiPoly":
        c %= self.p
        return MultiPoly(self, {self._zero_exp: c} if c else {})

    def var(self, i) -> "MultiPoly":
        if isinstance(i, str):
            i = self.names.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return MultiPoly(self, {tuple(e): 1})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff=1) -> "MultiPoly":
        coeff %= self.p
        return MultiPoly(self, {tuple(exps): coeff} if coeff else {})

    def __call__(self, x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            if x.ring == self:
                return x
            return x.change_ring(self)
        if isinstance(x, int):
            return self.constant(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot convert {x!r} into {self}")

    def parse(self, s: str) -> "MultiPoly":
        return _parse_poly(self, s)


class MultiPoly:
    """Polynomial as a map exponent-tuple -> nonzero coefficient in 0..p-1."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # construction helpers
    def _new(self, terms):
        return MultiPoly(self.ring, terms)

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.ring.p
        t = dict(self.terms)
        for e, c in o.terms.items():
            v = (t.get(e, 0) + c) % p
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return self._new(t)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return self._new({e: (-c) % p for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.ring.p
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = (t.get(e, 0) + c1 * c2) % p
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        return self._new(t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c):
        c %= self.ring.p
        if not c:
            return self.ring.zero()
        p = self.ring.p
        return self._new({e: (v * c) % p for e, v in self.terms.items()})

    def mul_term(self, exps, coeff):
        p = self.ring.p
        return self._new({tuple(a + b for a, b in zip(e, exps)): (c * coeff) % p for e, c in self.terms.items()})

    # predicates and accessors
    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {self.ring._zero_exp: 1}

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring._zero_exp in self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def leading_exp(self, order: MonomialOrder = GREVLEX):
        return max(self.terms, key=order.key)

    def leading_coeff(self, order: MonomialOrder = GREVLEX):
        return self.terms[self.leading_exp(order)]

    def monic(self, order: MonomialOrder = GREVLEX):
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coeff(order)))

    def evaluate(self, point):
        """Value at a point given as a sequence of field elements (ints or Fracs)."""
        if len(point) != self.ring.nvars:
            raise ValueError("point has wrong length")
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * (x ** k)
            total = total + v
        if isinstance(total, int):
            return total % self.ring.p
        return total

    def substitute(self, images):
        """Ring map sending variable i to images[i] (MultiPolys of one target ring)."""
        target = images[0].ring if images else self.ring
        out = target.zero()
        for e, c in self.terms.items():
            t = target.constant(c)
            for img, k in zip(images, e):
                if k:
                    t = t * img ** k
            out = out + t
        return out

    def change_ring(self, ring: PolyRing):
        """Embed into a ring whose variables include these (by name)."""
        idx = [ring.names.index(nm) for nm in self.ring.names]
        t = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for j, k in zip(idx, e):
                ne[j] = k
            t[tuple(ne)] = c % ring.p
        return MultiPoly(ring, t)

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Quotient self/other; raises ValueError if the division is not exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        order = GREVLEX
        le = other.leading_exp(order)
        inv = self.ring.field.inv(other.terms[le])
        rem = self
        q = {}
        p = self.ring.p
        while rem.terms:
            e = rem.leading_exp(order)
            d = tuple(a - b for a, b in zip(e, le))
            if min(d) < 0:
                raise ValueError("inexact polynomial division")
            c = (rem.terms[e] * inv) % p
            q[d] = c
            rem = rem - other.mul_term(d, c)
        return self._new(q)

    # printing
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_print_key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for nm, k in zip(self.ring.names, e):
                if k == 1:
                    factors.append(nm)
                elif k > 1:
                    factors.append(f"{nm}^{k}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self})"


_TOKEN_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")


def _parse_poly(ring: PolyRing, s: str) -> MultiPoly:
    text = s.strip()
    if not text:
        raise ValueError("empty polynomial")
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1].strip()
    out = ring.zero()
    pos = 0
    first = True
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {s!r}")
        sign, body = m.group(1), m.group(2).strip()
        if sign is None and not first:
            raise ValueError(f"cannot parse polynomial {s!r}")
        first = False
        term = _parse_term(ring, body, s)
        out = out - term if sign == "-" else out + term
        pos = m.end()
    return out


def _parse_term(ring: PolyRing, body: str, whole: str) -> MultiPoly:
    coeff = 1
    exps = [0] * ring.nvars
    for factor in body.split("*"):
        factor = factor.strip()
        if not factor:
            raise ValueError(f"empty factor in {whole!r}")
        if factor.isdigit():
            coeff *= int(factor)
            continue
        if "^" in factor:
            name, _, power = factor.partition("^")
            name, power = name.strip(), power.strip()
            if not power.isdigit():
                raise ValueError(f"bad exponent in {whole!r}")
            k = int(power)
        else:
            name, k = factor, 1
        if name not in ring.names:
            raise ValueError(f"unknown variable {name!r} in {whole!r}")
        exps[ring.names.index(name)] += k
    return ring.monomial(exps, coeff)
