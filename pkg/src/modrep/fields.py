"""Exact fields: prime fields GF(p) and rational function fields GF(p)(t1,...,tm)."""

from __future__ import annotations

import re

MAX_PRIME = 97


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """The field of residues modulo a prime p; elements are ints in 0..p-1."""

    is_prime_field = True

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"not a prime: {p!r}")
        if p > MAX_PRIME:
            raise ValueError(f"prime {p} exceeds supported bound {MAX_PRIME}")
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def base(self) -> "PrimeField":
        return self

    zero = 0
    one = 1

    def __call__(self, x) -> int:
        if isinstance(x, str):
            x = int(x.strip())
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def to_str(self, a) -> str:
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    __str__ = __repr__


class Frac:
    """Element num/den of a rational function field.

    Fractions are not reduced by a gcd; the denominator is only scaled so that
    its leading coefficient is 1.  Equality is decided by cross-multiplication.
    """

    __slots__ = ("field", "num", "den")

    def __init__(self, field: "RationalFunctionField", num, den):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        lc = den.leading_coeff()
        if lc != 1:
            s = field.base.inv(lc)
            num = num.scale(s)
            den = den.scale(s)
        self.field = field
        self.num = num
        self.den = den

    def _coerce(self, other):
        if isinstance(other, Frac):
            return other
        return self.field(other)

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return Frac(self.field, self.num + o.num, self.den)
        return Frac(self.field, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Frac(self.field, -self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return Frac(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return Frac(self.field, self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.num * o.den == o.num * self.den

    __hash__ = None  # equality is not canonical-form based

    def __bool__(self):
        return not self.num.is_zero()

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


class RationalFunctionField:
    """k(t1,...,tm) for k = GF(p)."""

    is_prime_field = False

    def __init__(self, base: PrimeField, names):
        from .poly import PolyRing

        self.base = base
        self.names = tuple(names)
        if not self.names:
            raise ValueError("rational function field needs at least one variable")
        self.ring = PolyRing(base, self.names)
        self.zero = Frac(self, self.ring.zero(), self.ring.one())
        self.one = Frac(self, self.ring.one(), self.ring.one())

    @property
    def characteristic(self) -> int:
        return self.base.p

    @property
    def p(self) -> int:
        return self.base.p

    def gen(self, i: int) -> Frac:
        return Frac(self, self.ring.var(i), self.ring.one())

    def __call__(self, x) -> Frac:
        if isinstance(x, Frac):
            if x.field != self:
                raise ValueError("element of a different field")
            return x
        if isinstance(x, int):
            return Frac(self, self.ring.constant(x), self.ring.one())
        if isinstance(x, str):
            return self.parse(x)
        if hasattr(x, "terms"):
            return Frac(self, self.ring(x), self.ring.one())
        raise TypeError(f"cannot convert {x!r} into {self}")

    def parse(self, s: str) -> Frac:
        parts = _split_top_level_slash(s)
        if len(parts) == 1:
            return Frac(self, self.ring.parse(_strip_parens(parts[0])), self.ring.one())
        if len(parts) != 2:
            raise ValueError(f"bad fraction {s!r}")
        num = self.ring.parse(_strip_parens(parts[0]))
        den = self.ring.parse(_strip_parens(parts[1]))
        return Frac(self, num, den)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return a.inverse()

    def div(self, a, b):
        return a / b

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def to_str(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunctionField)
            and other.base == self.base
            and other.names == self.names
        )

    def __hash__(self):
        return hash(("RFF", self.base.p, self.names))

    def __repr__(self):
        return f"GF({self.base.p})({','.join(self.names)})"

    __str__ = __repr__


def _split_top_level_slash(s: str):
    depth = 0
    parts, cur = [], []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "/" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _strip_parens(s: str) -> str:
    s = s.strip()
    while s.startswith("(") and s.endswith(")"):
        inner = s[1:-1]
        depth = 0
        ok = True
        for ch in inner:
            depth += ch == "("
            depth -= ch == ")"
            if depth < 0:
                ok = False
                break
        if not ok:
            break
        s = inner.strip()
    return s


_FIELD_RE = re.compile(r"^\s*GF\(\s*(\d+)\s*\)\s*(?:\(\s*([^)]*)\))?\s*$")


def parse_field(s: str):
    """Parse ``GF(p)`` or ``GF(p)(t1,t2)``."""
    m = _FIELD_RE.match(s)
    if not m:
        raise ValueError(f"bad field descriptor {s!r}")
    base = PrimeField(int(m.group(1)))
    if m.group(2) is None:
        return base
    names = [v.strip() for v in m.group(2).split(",") if v.strip()]
    return RationalFunctionField(base, names)
