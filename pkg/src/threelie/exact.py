"""Exact rational linear algebra and index bookkeeping.

Scalars are ``fractions.Fraction``.  Matrices are stored densely (row-major
tuple of Fractions) and follow the column convention used everywhere in the
package: column ``j`` holds the coordinates of the image of basis vector
``j``.  Products and elimination skip zero entries, which keeps the large
but very sparse coboundary matrices cheap to handle.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Optional, Sequence

Vector = tuple  # tuple of Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def scalar(x) -> Fraction:
    """Coerce ``x`` to an exact rational.

    Accepts ints, Fractions and strings like ``"3"`` or ``"-2/5"``.  Floats
    are refused because they would silently smuggle rounding into a verdict.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if any(c in s for c in ".eE"):
            raise ValueError(f"floating-point literal forbidden; write p/q instead of {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot use {type(x).__name__} {x!r} as an exact scalar")


def vector(values: Iterable) -> Vector:
    return tuple(scalar(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vec_add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u: Sequence) -> Vector:
    return tuple(c * a for a in u)


def vec_is_zero(u: Sequence) -> bool:
    return not any(u)


def lin_comb(terms: Iterable, n: int) -> Vector:
    """Sum of ``c * v`` over ``(c, v)`` pairs, as a length-``n`` vector."""
    out = [ZERO] * n
    for c, v in terms:
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


class Matrix:
    """Dense exact matrix, immutable by convention."""

    __slots__ = ("rows", "cols", "entries", "_nz")

    def __init__(self, rows: int, cols: int, entries: Optional[Iterable] = None):
        self.rows = rows
        self.cols = cols
        if entries is None:
            self.entries = (ZERO,) * (rows * cols)
        else:
            self.entries = tuple(scalar(e) for e in entries)
            if len(self.entries) != rows * cols:
                raise ValueError(
                    f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(self.entries)}")
        self._nz = None

    @classmethod
    def _trusted(cls, rows: int, cols: int, data) -> "Matrix":
        """Internal constructor for data already made of Fractions."""
        M = cls.__new__(cls)
        M.rows, M.cols, M.entries, M._nz = rows, cols, tuple(data), None
        return M

    # -- construction -------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: Optional[int] = None) -> "Matrix":
        columns = [list(c) for c in columns]
        if rows is None:
            if not columns:
                raise ValueError("row count needed for an empty column list")
            rows = len(columns[0])
        ncols = len(columns)
        data = [ZERO] * (rows * ncols)
        for j, c in enumerate(columns):
            if len(c) != rows:
                raise ValueError("column length mismatch")
            for i, x in enumerate(c):
                data[i * ncols + j] = x
        return cls(rows, ncols, data)

    @classmethod
    def from_dict(cls, rows: int, cols: int, entries: dict) -> "Matrix":
        data = [ZERO] * (rows * cols)
        for (i, j), x in entries.items():
            data[i * cols + j] = scalar(x)
        return cls._trusted(rows, cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        data = [ZERO] * (n * n)
        for i in range(n):
            data[i * n + i] = ONE
        return cls._trusted(n, n, data)

    @classmethod
    def scalar_matrix(cls, n: int, c) -> "Matrix":
        c = scalar(c)
        data = [ZERO] * (n * n)
        for i in range(n):
            data[i * n + i] = c
        return cls._trusted(n, n, data)

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        n = len(values)
        data = [ZERO] * (n * n)
        for i, c in enumerate(values):
            data[i * n + i] = c
        return cls(n, n, data)

    # -- access -------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def _row_nonzeros(self):
        if self._nz is None:
            c = self.cols
            e = self.entries
            self._nz = [[(j, e[i * c + j]) for j in range(c) if e[i * c + j]]
                        for i in range(self.rows)]
        return self._nz

    def nonzero_entries(self):
        for i, r in enumerate(self._row_nonzeros()):
            for j, x in r:
                yield i, j, x

    def nnz(self) -> int:
        return sum(len(r) for r in self._row_nonzeros())

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic ---------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._trusted(self.rows, self.cols,
                               [a + b if b else a for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._trusted(self.rows, self.cols,
                               [a - b if b else a for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "Matrix":
        return Matrix._trusted(self.rows, self.cols, [-a if a else a for a in self.entries])

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        c = scalar(c)
        return Matrix._trusted(self.rows, self.cols, [c * a if a else a for a in self.entries])

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            out = [ZERO] * (self.rows * other.cols)
            onz = other._row_nonzeros()
            oc = other.cols
            for i, r in enumerate(self._row_nonzeros()):
                base = i * oc
                for k, a in r:
                    for j, b in onz[k]:
                        out[base + j] += a * b
            return Matrix._trusted(self.rows, other.cols, out)
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} does not fit {self.shape}")
        if not any(v):
            return (ZERO,) * self.rows
        out = []
        for r in self._row_nonzeros():
            acc = ZERO
            for j, a in r:
                x = v[j]
                if x:
                    acc += a * x
            out.append(acc)
        return tuple(out)

    def apply(self, v: Sequence) -> Vector:
        return self @ v

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def transpose(self) -> "Matrix":
        r, c = self.rows, self.cols
        e = self.entries
        return Matrix._trusted(c, r, [e[i * c + j] for j in range(c) for i in range(r)])

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def kron(self, other: "Matrix") -> "Matrix":
        r2, c2 = other.rows, other.cols
        cols = self.cols * c2
        out = [ZERO] * (self.rows * r2 * cols)
        onz = other._row_nonzeros()
        for i1, r in enumerate(self._row_nonzeros()):
            for j1, a in r:
                for i2 in range(r2):
                    base = (i1 * r2 + i2) * cols + j1 * c2
                    for j2, b in onz[i2]:
                        out[base + j2] = a * b
        return Matrix._trusted(self.rows * r2, cols, out)

    def power(self, k: int) -> "Matrix":
        out = Matrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._trusted(len(rows), len(cols), [self[i, j] for i in rows for j in cols])

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def hstack(*blocks: Matrix) -> Matrix:
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise ValueError("hstack needs equal row counts")
    data = []
    for i in range(rows):
        for b in blocks:
            data.extend(b.row(i))
    return Matrix._trusted(rows, sum(b.cols for b in blocks), data)


def vstack(*blocks: Matrix) -> Matrix:
    cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        raise ValueError("vstack needs equal column counts")
    data = []
    for b in blocks:
        data.extend(b.entries)
    return Matrix._trusted(sum(b.rows for b in blocks), cols, data)


def block(grid: Sequence[Sequence[Matrix]]) -> Matrix:
    return vstack(*[hstack(*row) for row in grid])


# -- fraction-free elimination ---------------------------------------------

def _integer_row(items) -> dict:
    """Scale a sparse rational row to a primitive integer row."""
    items = [(j, x) for j, x in items if x]
    if not items:
        return {}
    den = lcm(*(x.denominator for _, x in items))
    row = {j: x.numerator * (den // x.denominator) for j, x in items}
    return _primitive(row)


def _primitive(row: dict) -> dict:
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {j: x // g for j, x in row.items()}
    return row


def _combine(r: dict, p: dict, col: int) -> dict:
    """Return the primitive form of ``p[col]*r - r[col]*p`` (kills ``col``)."""
    a, b = r[col], p[col]
    g = gcd(a, b)
    a //= g
    b //= g
    out = {j: b * x for j, x in r.items()}
    for j, x in p.items():
        y = out.get(j, 0) - a * x
        if y:
            out[j] = y
        else:
            out.pop(j, None)
    out.pop(col, None)
    return _primitive(out) if out else out


class Echelon:
    """Incremental reduced row echelon form over the integers.

    Rows are kept primitive (content 1) with a positive pivot; every pivot
    column is zero in all other stored rows.  Elimination is fraction free:
    a row is updated as ``p*row - a*pivot_row`` and then divided by its
    content, which keeps entry growth in check.
    """

    def __init__(self):
        self.pivots: dict = {}

    def reduce(self, row: dict) -> dict:
        for col in sorted(set(row) & self.pivots.keys()):
            if col in row:
                row = _combine(row, self.pivots[col], col)
        return row

    def add(self, row: dict) -> Optional[int]:
        """Insert an integer row; return its new pivot column or None."""
        row = self.reduce(row)
        if not row:
            return None
        col = min(row)
        for c, q in list(self.pivots.items()):
            if col in q:
                self.pivots[c] = _combine(q, row, col)
        self.pivots[col] = row
        return col

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _echelon_of_rows(M: Matrix) -> Echelon:
    ech = Echelon()
    for r in M._row_nonzeros():
        if r:
            ech.add(_integer_row(r))
    return ech


def rank(M: Matrix) -> int:
    """Exact rank over the rationals."""
    return _echelon_of_rows(M).rank


def kernel_basis(M: Matrix) -> list:
    """Exact basis of ``{x : M x = 0}``, one vector per free column."""
    ech = _echelon_of_rows(M)
    basis = []
    for f in range(M.cols):
        if f in ech.pivots:
            continue
        x = [ZERO] * M.cols
        x[f] = ONE
        for c, p in ech.pivots.items():
            if f in p:
                x[c] = Fraction(-p[f], p[c])
        basis.append(tuple(x))
    return basis


def solve(M: Matrix, b: Sequence) -> Optional[Vector]:
    """Some ``x`` with ``M x = b``, or None when the system is inconsistent."""
    b = vector(b)
    if len(b) != M.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {M.rows}")
    aug = M.cols
    ech = Echelon()
    for i, r in enumerate(M._row_nonzeros()):
        items = list(r)
        if b[i]:
            items.append((aug, b[i]))
        if items:
            col = ech.add(_integer_row(items))
            if col == aug:
                return None
    x = [ZERO] * M.cols
    for c, p in ech.pivots.items():
        if aug in p:
            x[c] = Fraction(p[aug], p[c])
    x = tuple(x)
    if M @ x != b:
        raise ArithmeticError("back-substitution check failed")
    return x


def rank_of_vectors(vectors: Sequence[Sequence]) -> int:
    ech = Echelon()
    for v in vectors:
        row = _integer_row(enumerate(v))
        if row:
            ech.add(row)
    return ech.rank


def in_span(vectors: Sequence[Sequence], target: Sequence) -> bool:
    return rank_of_vectors(list(vectors) + [target]) == rank_of_vectors(vectors)


# -- index combinatorics --------------------------------------------------

def perm_sign(p: Sequence[int]) -> int:
    """Parity sign of a permutation of ``0..m-1``."""
    p = list(p)
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"{p} is not a permutation of 0..{len(p) - 1}")
    seen = [False] * len(p)
    sign = 1
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = p[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def sort_with_sign(idx: Sequence[int]):
    """Sort distinct indices, returning ``(sign, sorted_tuple)``.

    Repeated indices give ``(0, None)``: an alternating map vanishes there.
    """
    idx = tuple(idx)
    if len(set(idx)) != len(idx):
        return 0, None
    order = sorted(range(len(idx)), key=idx.__getitem__)
    return perm_sign(order), tuple(idx[k] for k in order)


class WedgeIndex:
    """Basis ``e_i ^ e_j`` (i < j) of the exterior square, lexicographic."""

    def __init__(self, n: int):
        self.n = n
        self.pairs = tuple(combinations(range(n), 2))
        self._pos = {p: a for a, p in enumerate(self.pairs)}

    @property
    def dim(self) -> int:
        return len(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def index(self, i: int, j: int):
        """``(sign, a)`` with ``e_i ^ e_j = sign * E_a``; ``(0, None)`` if i == j."""
        if i == j:
            return 0, None
        if i < j:
            return 1, self._pos[(i, j)]
        return -1, self._pos[(j, i)]

    def wedge(self, u: Sequence, v: Sequence) -> Vector:
        """Coordinates of ``u ^ v``."""
        return tuple(u[i] * v[j] - u[j] * v[i] for i, j in self.pairs)

    def __repr__(self):
        return f"WedgeIndex(n={self.n})"
