"""Dense exact matrices over GF(p) or GF(p)(t1,...,tm).

Prime-field matrices are stored as int64 numpy arrays reduced mod p and are
eliminated with vectorised row operations; function-field matrices are object
arrays of ``Frac`` and use a plain Python elimination.  Pivoting is always the
leftmost nonzero column, first nonzero row in the current order.
"""

from __future__ import annotations

import numpy as np

from .fields import PrimeField


class Matrix:
    __slots__ = ("field", "data")

    def __init__(self, field, data):
        self.field = field
        if field.is_prime_field:
            arr = np.array(data, dtype=np.int64)
            if arr.ndim != 2:
                arr = arr.reshape(_shape_of(data))
            arr %= field.p
        else:
            arr = _object_array(field, data)
        arr.setflags(write=False)
        self.data = arr

    @classmethod
    def _wrap(cls, field, arr):
        m = object.__new__(cls)
        m.field = field
        if field.is_prime_field:
            arr = arr % field.p
        arr.setflags(write=False)
        m.data = arr
        return m

    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> "Matrix":
        if field.is_prime_field:
            return cls._wrap(field, np.zeros((rows, cols), dtype=np.int64))
        arr = np.empty((rows, cols), dtype=object)
        for i in range(rows):
            for j in range(cols):
                arr[i, j] = field.zero
        return cls._wrap(field, arr)

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        if field.is_prime_field:
            return cls._wrap(field, np.eye(n, dtype=np.int64))
        arr = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                arr[i, j] = field.one if i == j else field.zero
        return cls._wrap(field, arr)

    @classmethod
    def column(cls, field, vec) -> "Matrix":
        return cls(field, [[x] for x in vec]) if len(vec) else cls.zeros(field, 0, 1)

    # shape
    @property
    def nrows(self) -> int:
        return self.data.shape[0]

    @property
    def ncols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    def __getitem__(self, idx):
        out = self.data[idx]
        if isinstance(out, np.ndarray):
            if out.ndim == 2:
                return Matrix._wrap(self.field, out.copy())
            return list(out)
        return int(out) if self.field.is_prime_field else out

    def tolist(self):
        if self.field.is_prime_field:
            return self.data.tolist()
        return [list(row) for row in self.data]

    def column_list(self, j):
        return [self[i, j] for i in range(self.nrows)]

    def columns(self):
        return [self.column_list(j) for j in range(self.ncols)]

    # arithmetic
    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other):
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.field.is_prime_field:
            return Matrix._wrap(self.field, _matmul_mod(self.data, other.data, self.field.p))
        return Matrix._wrap(self.field, _object_matmul(self.field, self.data, other.data))

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix._wrap(self.field, self.data + other.data)

    def __sub__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix._wrap(self.field, self.data - other.data)

    def __neg__(self):
        return Matrix._wrap(self.field, -self.data)

    def scale(self, c) -> "Matrix":
        if self.field.is_prime_field:
            return Matrix._wrap(self.field, self.data * (int(c) % self.field.p))
        c = self.field(c)
        return Matrix._wrap(self.field, self.data * c)

    @property
    def T(self) -> "Matrix":
        return Matrix._wrap(self.field, self.data.T.copy())

    def __pow__(self, n: int) -> "Matrix":
        out = Matrix.identity(self.field, self.nrows)
        base = self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def kron(self, other) -> "Matrix":
        self._check(other)
        if self.field.is_prime_field:
            return Matrix._wrap(self.field, np.kron(self.data, other.data))
        a, b = self.data, other.data
        out = np.empty((a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]), dtype=object)
        for i in range(a.shape[0]):
            for j in range(a.shape[1]):
                for k in range(b.shape[0]):
                    for l in range(b.shape[1]):
                        out[i * b.shape[0] + k, j * b.shape[1] + l] = a[i, j] * b[k, l]
        return Matrix._wrap(self.field, out)

    def is_zero(self) -> bool:
        if self.field.is_prime_field:
            return not self.data.any()
        return all(x.is_zero() for x in self.data.flat)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if other.field != self.field or other.shape != self.shape:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        rows = [[self.field.to_str(x) for x in row] for row in self.tolist()]
        return f"Matrix({self.field}, {rows})"


def _shape_of(data):
    if len(data) == 0:
        return (0, 0)
    return (len(data), len(data[0]))


def _object_array(field, data):
    if isinstance(data, np.ndarray) and data.ndim == 2:
        rows, cols = data.shape
    else:
        rows, cols = _shape_of(data)
    arr = np.empty((rows, cols), dtype=object)
    for i in range(rows):
        for j in range(cols):
            arr[i, j] = field(data[i][j])
    return arr


def _matmul_mod(a, b, p):
    # chunk the inner dimension so int64 never overflows
    k = a.shape[1]
    step = max(1, (2**62) // max(1, (p - 1) ** 2) - 1)
    if k <= step:
        return (a @ b) % p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, k, step):
        out = (out + a[:, s:s + step] @ b[s:s + step, :]) % p
    return out


def _object_matmul(field, a, b):
    out = np.empty((a.shape[0], b.shape[1]), dtype=object)
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            acc = field.zero
            for k in range(a.shape[1]):
                x = a[i, k]
                if not x.is_zero():
                    y = b[k, j]
                    if not y.is_zero():
                        acc = acc + x * y
            out[i, j] = acc
    return out


def hstack(mats, field=None, rows=None) -> Matrix:
    mats = list(mats)
    if not mats:
        return Matrix.zeros(field, rows or 0, 0)
    f = mats[0].field
    return Matrix._wrap(f, np.hstack([m.data for m in mats]))


def vstack(mats, field=None, cols=None) -> Matrix:
    mats = list(mats)
    if not mats:
        return Matrix.zeros(field, 0, cols or 0)
    f = mats[0].field
    return Matrix._wrap(f, np.vstack([m.data for m in mats]))


def block_diag(mats, field=None) -> Matrix:
    mats = list(mats)
    if not mats:
        return Matrix.zeros(field, 0, 0)
    f = mats[0].field
    n = sum(m.nrows for m in mats)
    c = sum(m.ncols for m in mats)
    out = Matrix.zeros(f, n, c).data.copy()
    i = j = 0
    for m in mats:
        out[i:i + m.nrows, j:j + m.ncols] = m.data
        i += m.nrows
        j += m.ncols
    return Matrix._wrap(f, out)


# -- elimination ------------------------------------------------------------

def _rref_gf2(a: np.ndarray, full: bool = True):
    a = (a & 1).astype(np.uint8)
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            a[[r, i]] = a[[i, r]]
        col = a[:, c]
        rows = np.flatnonzero(col[r + 1:]) + r + 1
        if full:
            rows = np.concatenate([np.flatnonzero(col[:r]), rows])
        if rows.size:
            a[rows] ^= a[r]
        pivots.append(c)
        r += 1
    return a.astype(np.int64), pivots


def _rref_mod(a: np.ndarray, p: int, full: bool = True):
    if p == 2:
        return _rref_gf2(a, full)
    a = a.copy()
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        if inv != 1:
            a[r] = (a[r] * inv) % p
        f = a[:, c].copy()
        f[r] = 0
        if not full:
            f[:r] = 0
        rows = np.flatnonzero(f)
        if rows.size:
            a[rows] = (a[rows] - np.outer(f[rows], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def _rref_object(field, a: np.ndarray):
    a = a.copy()
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        i = next((k for k in range(r, m) if not a[k, c].is_zero()), None)
        if i is None:
            continue
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = a[r, c].inverse()
        for j in range(n):
            a[r, j] = a[r, j] * inv
        for k in range(m):
            if k != r and not a[k, c].is_zero():
                f = a[k, c]
                for j in range(n):
                    if not a[r, j].is_zero():
                        a[k, j] = a[k, j] - f * a[r, j]
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: Matrix):
    """Reduced row echelon form and pivot columns."""
    if m.field.is_prime_field:
        a, piv = _rref_mod(m.data, m.field.p)
    else:
        a, piv = _rref_object(m.field, m.data)
    return Matrix._wrap(m.field, a), piv


def rank(m: Matrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    if m.field.is_prime_field:
        data = m.data
        if data.shape[0] > data.shape[1]:
            data = data.T
        return len(_rref_mod(data, m.field.p, full=False)[1])
    return len(_rref_object(m.field, m.data)[1])


def kernel_matrix(m: Matrix) -> Matrix:
    """Columns form a basis of the null space; each has a 1 in its free column."""
    n = m.ncols
    red, piv = rref(m)
    free = [j for j in range(n) if j not in set(piv)]
    f = m.field
    if f.is_prime_field:
        p = f.p
        k = np.zeros((n, len(free)), dtype=np.int64)
        if free:
            k[free, np.arange(len(free))] = 1
            if piv:
                k[np.ix_(list(piv), np.arange(len(free)))] = (-red.data[np.ix_(range(len(piv)), free)]) % p
        return Matrix._wrap(f, k)
    k = Matrix.zeros(f, n, len(free)).data.copy()
    for t, j in enumerate(free):
        k[j, t] = f.one
        for r, c in enumerate(piv):
            k[c, t] = -red.data[r, j]
    return Matrix._wrap(f, k)


def kernel_basis(m: Matrix):
    """Null-space basis as a list of column vectors (lists of field elements)."""
    return kernel_matrix(m).columns()


def solve_matrix(a: Matrix, b: Matrix):
    """Some X with a @ X = b (free variables 0), or None when inconsistent."""
    if a.field != b.field:
        raise ValueError("field mismatch")
    if a.nrows != b.nrows:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    n = a.ncols
    aug = hstack([a, b])
    red, piv = rref(aug)
    if any(c >= n for c in piv):
        return None
    f = a.field
    x = Matrix.zeros(f, n, b.ncols).data.copy()
    for r, c in enumerate(piv):
        x[c, :] = red.data[r, n:]
    return Matrix._wrap(f, x)


def solve(a: Matrix, b):
    """Solve a @ x = b for a column vector b (list); None marks no solution."""
    if len(b) != a.nrows:
        raise ValueError(f"shape mismatch: {a.shape} vs vector of length {len(b)}")
    bm = Matrix.column(a.field, b) if len(b) else Matrix.zeros(a.field, 0, 1)
    x = solve_matrix(a, bm)
    if x is None:
        return None
    return x.column_list(0)


def column_space_basis(m: Matrix) -> Matrix:
    """Independent columns of m spanning its column space (pivot columns)."""
    _, piv = rref(m)
    if m.field.is_prime_field:
        return Matrix._wrap(m.field, m.data[:, piv].copy())
    return Matrix._wrap(m.field, m.data[:, piv].copy())


def complement_columns(b: Matrix):
    """Indices j of standard vectors e_j completing the columns of b to a basis (greedy)."""
    n = b.nrows
    ident = Matrix.identity(b.field, n)
    _, piv = rref(hstack([b, ident]))
    k = b.ncols
    return [c - k for c in piv if c >= k]


def inverse(m: Matrix) -> Matrix:
    if m.nrows != m.ncols:
        raise ValueError("not square")
    x = solve_matrix(m, Matrix.identity(m.field, m.nrows))
    if x is None or rank(m) != m.nrows:
        raise ZeroDivisionError("singular matrix")
    return x


def prime_matrix(p: int, rows) -> Matrix:
    return Matrix(PrimeField(p), rows)
