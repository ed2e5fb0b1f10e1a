"""Exact scalar fields and dense linear algebra.

Two fields are supported: the rationals (backed by :class:`fractions.Fraction`)
and prime fields ``F_p``.  Elements of both support the ordinary arithmetic
operators and compare equal to Python ints, so the elimination code below is
written once for either field.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, FieldError


class RationalField:
    characteristic = 0
    name = "Q"

    def __call__(self, x) -> Fraction:
        if isinstance(x, str):
            return self.parse(x)
        return Fraction(x)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def parse(self, s: str) -> Fraction:
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"not a rational scalar: {s!r}") from exc

    def format(self, x) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class FpElement:
    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise FieldError("mixing elements of different prime fields")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpElement(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpElement(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpElement(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpElement(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return FpElement(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return FpElement(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return FpElement(-self.v, self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v}"


class PrimeField:
    def __init__(self, p: int):
        if not _is_prime(int(p)):
            raise FieldError(f"{p} is not prime")
        self.p = int(p)
        self.characteristic = self.p
        self.name = f"F{self.p}"

    def __call__(self, x) -> FpElement:
        if isinstance(x, FpElement):
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"{x} has no image in F_{self.p}")
            return FpElement(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return FpElement(int(x), self.p)

    @property
    def zero(self):
        return FpElement(0, self.p)

    @property
    def one(self):
        return FpElement(1, self.p)

    def parse(self, s: str) -> FpElement:
        try:
            return self(Fraction(s.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"not a scalar: {s!r}") from exc

    def format(self, x) -> str:
        return str(self(x).v)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def field_from_spec(spec) -> RationalField | PrimeField:
    """Accept ``"Q"``, ``"Fp:7"``, ``{"Fp": 7}`` or an existing field."""
    if isinstance(spec, (RationalField, PrimeField)):
        return spec
    if spec is None or spec == "Q" or spec == "QQ":
        return QQ
    if isinstance(spec, dict) and set(spec) == {"Fp"}:
        return PrimeField(int(spec["Fp"]))
    if isinstance(spec, str) and spec.lower().startswith("fp:"):
        try:
            return PrimeField(int(spec[3:]))
        except ValueError as exc:
            raise FieldError(f"bad field spec {spec!r}") from exc
    raise FieldError(f"bad field spec {spec!r}")


class Matrix:
    """Dense matrix over an exact field.  Treated as immutable."""

    __slots__ = ("field", "nrows", "ncols", "_rows")

    def __init__(self, field, nrows: int, ncols: int, rows: Sequence[Sequence] | None = None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            z = field.zero
            self._rows = [[z] * ncols for _ in range(nrows)]
        else:
            if len(rows) != nrows or any(len(r) != ncols for r in rows):
                raise DimensionMismatch(f"expected {nrows}x{ncols} entries")
            self._rows = [[field(x) for x in r] for r in rows]

    @classmethod
    def _wrap(cls, field, nrows, ncols, rows):
        m = cls.__new__(cls)
        m.field, m.nrows, m.ncols, m._rows = field, nrows, ncols, rows
        return m

    @classmethod
    def zeros(cls, field, nrows, ncols):
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field, n):
        m = cls(field, n, n)
        for i in range(n):
            m._rows[i][i] = field.one
        return m

    @classmethod
    def from_rows(cls, field, rows, ncols=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise DimensionMismatch("column count needed for an empty row list")
            ncols = len(rows[0])
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, field, nrows, cols):
        cols = [list(c) for c in cols]
        if any(len(c) != nrows for c in cols):
            raise DimensionMismatch("column length mismatch")
        rows = [[c[i] for c in cols] for i in range(nrows)]
        return cls(field, nrows, len(cols), rows)

    @classmethod
    def unit(cls, field, nrows, ncols, i, j):
        m = cls(field, nrows, ncols)
        m._rows[i][j] = field.one
        return m

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row(self, i):
        return list(self._rows[i])

    def col(self, j):
        return [r[j] for r in self._rows]

    def rows(self):
        return [list(r) for r in self._rows]

    def columns(self):
        return [self.col(j) for j in range(self.ncols)]

    def flatten(self):
        return [x for r in self._rows for x in r]

    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other):
        self._check_same(other)
        return Matrix._wrap(self.field, self.nrows, self.ncols,
                            [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other):
        self._check_same(other)
        return Matrix._wrap(self.field, self.nrows, self.ncols,
                            [[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __neg__(self):
        return Matrix._wrap(self.field, self.nrows, self.ncols, [[-a for a in r] for r in self._rows])

    def scale(self, c):
        c = self.field(c)
        return Matrix._wrap(self.field, self.nrows, self.ncols, [[c * a for a in r] for r in self._rows])

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        z = self.field.zero
        ocols = other.ncols
        orows = other._rows
        out = []
        for r in self._rows:
            acc = [z] * ocols
            for k, a in enumerate(r):
                if a != 0:
                    ok = orows[k]
                    for j in range(ocols):
                        b = ok[j]
                        if b != 0:
                            acc[j] = acc[j] + a * b
            out.append(acc)
        return Matrix._wrap(self.field, self.nrows, ocols, out)

    @property
    def T(self):
        return Matrix._wrap(self.field, self.ncols, self.nrows,
                            [[r[j] for r in self._rows] for j in range(self.ncols)])

    def is_zero(self):
        return all(x == 0 for r in self._rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self._rows, other._rows) for a, b in zip(r, s))

    def __hash__(self):
        return hash((self.shape, tuple(str(x) for x in self.flatten())))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]):
        rows, cols = list(rows), list(cols)
        return Matrix._wrap(self.field, len(rows), len(cols),
                            [[self._rows[i][j] for j in cols] for i in rows])

    def kron(self, other):
        rows = []
        for r in self._rows:
            for s in other._rows:
                rows.append([a * b for a in r for b in s])
        return Matrix._wrap(self.field, self.nrows * other.nrows, self.ncols * other.ncols, rows)


def hstack(field, nrows, blocks):
    blocks = list(blocks)
    for b in blocks:
        if b.nrows != nrows:
            raise DimensionMismatch("hstack row mismatch")
    rows = [[x for b in blocks for x in b._rows[i]] for i in range(nrows)]
    return Matrix._wrap(field, nrows, sum(b.ncols for b in blocks), rows)


def vstack(field, ncols, blocks):
    blocks = list(blocks)
    rows = []
    for b in blocks:
        if b.ncols != ncols:
            raise DimensionMismatch("vstack column mismatch")
        rows.extend(list(r) for r in b._rows)
    return Matrix._wrap(field, len(rows), ncols, rows)


def block_diag(field, blocks):
    blocks = list(blocks)
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    out = Matrix(field, n, m)
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.nrows):
            out._rows[r0 + i][c0:c0 + b.ncols] = b._rows[i]
        r0 += b.nrows
        c0 += b.ncols
    return out


def rref(m: Matrix):
    """Reduced row echelon form.  Returns ``(R, pivot_columns)``."""
    rows = [list(r) for r in m._rows]
    pivots = _rref_in_place(m.field, rows, m.ncols)
    return Matrix._wrap(m.field, m.nrows, m.ncols, rows), pivots


def _rref_in_place(field, rows, ncols, stop_col=None):
    # pivots sought only in columns < stop_col when given
    nrows = len(rows)
    limit = ncols if stop_col is None else stop_col
    pivots = []
    r = 0
    for c in range(limit):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        lead = prow[c]
        if lead != 1:
            inv = field.one / lead
            prow = [x * inv if x != 0 else x for x in prow]
            rows[r] = prow
        nz = [(k, prow[k]) for k in range(c, ncols) if prow[k] != 0]
        for i in range(nrows):
            if i == r:
                continue
            ri = rows[i]
            f = ri[c]
            if f != 0:
                for k, b in nz:
                    ri[k] = ri[k] - f * b
        pivots.append(c)
        r += 1
    return pivots


def rank(m: Matrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    rows = [list(r) for r in m._rows]
    return len(_rref_in_place(m.field, rows, m.ncols))


def nullspace(m: Matrix) -> Matrix:
    """Columns of the result form a basis of ``{v : m v = 0}``."""
    field = m.field
    n = m.ncols
    if m.nrows == 0:
        return Matrix.identity(field, n)
    rows = [list(r) for r in m._rows]
    pivots = _rref_in_place(field, rows, n)
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    cols = []
    for f in free:
        v = [field.zero] * n
        v[f] = field.one
        for r, pc in enumerate(pivots):
            x = rows[r][f]
            if x != 0:
                v[pc] = -x
        cols.append(v)
    return Matrix.from_columns(field, n, cols)


def solve(m: Matrix, b: Matrix) -> Matrix | None:
    """Some ``x`` with ``m @ x == b``, or ``None`` if the system is inconsistent."""
    if m.nrows != b.nrows:
        raise DimensionMismatch(f"row counts {m.nrows} and {b.nrows} differ")
    field = m.field
    n, k = m.ncols, b.ncols
    rows = [list(r) + list(s) for r, s in zip(m._rows, b._rows)]
    pivots = _rref_in_place(field, rows, n + k, stop_col=n)
    r = len(pivots)
    for i in range(r, m.nrows):
        if any(x != 0 for x in rows[i][n:]):
            return None
    x = Matrix(field, n, k)
    for i, pc in enumerate(pivots):
        x._rows[pc] = list(rows[i][n:])
    return x


def column_space(m: Matrix) -> Matrix:
    """Canonical basis (reduced echelon, transposed) of the column span."""
    if m.ncols == 0:
        return Matrix(m.field, m.nrows, 0)
    rows = [list(r) for r in m.T._rows]
    piv = _rref_in_place(m.field, rows, m.nrows)
    return Matrix.from_columns(m.field, m.nrows, rows[:len(piv)])


def inverse(m: Matrix) -> Matrix | None:
    if m.nrows != m.ncols:
        raise DimensionMismatch("inverse of a non-square matrix")
    return solve(m, Matrix.identity(m.field, m.nrows)) if rank(m) == m.nrows else None


def is_invertible(m: Matrix) -> bool:
    return m.nrows == m.ncols and rank(m) == m.nrows


def quotient_basis(ambient_dim: int, subspace: Matrix):
    """Projection onto ``k^n / span(subspace)`` and a section of it.

    Returns ``(projection, lift)`` with ``projection @ lift == I`` and
    ``ker(projection) == span(subspace)``.  The section picks the standard
    basis vectors at the non-pivot positions of the echelon form, so the
    choice is deterministic.
    """
    field = subspace.field
    if subspace.nrows != ambient_dim:
        raise DimensionMismatch("subspace columns must live in the ambient space")
    basis = column_space(subspace)
    r = basis.ncols
    rows = [list(c) for c in basis.columns()]
    piv = set(_rref_in_place(field, rows, ambient_dim))
    comp = [j for j in range(ambient_dim) if j not in piv]
    lift = Matrix.from_columns(field, ambient_dim,
                               [[field.one if i == j else field.zero for i in range(ambient_dim)] for j in comp])
    full = hstack(field, ambient_dim, [basis, lift])
    inv = inverse(full)
    projection = inv.submatrix(range(r, ambient_dim), range(ambient_dim))
    return projection, lift
