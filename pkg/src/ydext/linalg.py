"""Exact scalars, sparse vectors, matrices, echelon forms and quotients.

Vectors are sparse dicts ``{index: scalar}`` without zero entries.  A
:class:`Matrix` stores its columns as such dicts; its semantics are dense.
All elimination is exact: scalars live in ``QQ`` (gmpy2 rationals) or in a
prime field ``GF(p)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2


class ModP:
    """Residue class modulo a prime; arithmetic mirrors the rationals."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, ModP):
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return ModP(self._lift(other), self.p) / self

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return "%d" % self.v

    __str__ = __repr__


@dataclass(frozen=True)
class Field:
    """The scalar field: ``p = 0`` is the rationals, otherwise GF(p)."""

    p: int = 0

    def __post_init__(self):
        if self.p and (self.p < 2 or not gmpy2.is_prime(self.p)):
            raise ValueError("field characteristic must be 0 or a prime, got %d" % self.p)

    @property
    def name(self) -> str:
        return "QQ" if self.p == 0 else "F(%d)" % self.p

    def __call__(self, x):
        """Coerce an int, Fraction, string "a/b" or scalar into the field."""
        if self.p == 0:
            if isinstance(x, str):
                return gmpy2.mpq(Fraction(x.strip()))
            if isinstance(x, Fraction):
                return gmpy2.mpq(x.numerator, x.denominator)
            if isinstance(x, ModP):
                raise TypeError("cannot coerce a residue into QQ")
            return gmpy2.mpq(x)
        if isinstance(x, ModP):
            if x.p != self.p:
                raise TypeError("residue modulo %d is not in F(%d)" % (x.p, self.p))
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, (Fraction, type(gmpy2.mpq()))):
            return ModP(int(x.numerator), self.p) / int(x.denominator)
        return ModP(int(x), self.p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def fmt(self, x) -> str:
        return str(x)

    @staticmethod
    def parse(text: str) -> "Field":
        """Parse ``QQ`` or ``F(p)``."""
        t = text.strip().strip('"')
        if t in ("QQ", "Q", "QQ()"):
            return Field(0)
        if t.startswith("F(") and t.endswith(")"):
            return Field(int(t[2:-1]))
        raise ValueError("unknown field %r (expected QQ or F(p))" % text)


QQ = Field(0)


# sparse vector helpers -------------------------------------------------------

def vadd(u: dict, v: dict, c=1) -> dict:
    """Return u + c*v."""
    out = dict(u)
    for k, x in v.items():
        y = out.get(k)
        y = c * x if y is None else y + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vaxpy(acc: dict, v: dict, c=1) -> None:
    """In place: acc += c*v."""
    for k, x in v.items():
        y = acc.get(k)
        y = c * x if y is None else y + c * x
        if y:
            acc[k] = y
        else:
            del acc[k]


def vscale(v: dict, c) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vclean(v: dict) -> dict:
    return {k: x for k, x in v.items() if x}


def vdense(v: dict, n: int, zero) -> list:
    out = [zero] * n
    for k, x in v.items():
        out[k] = x
    return out


def vsparse(row: Sequence) -> dict:
    return {k: x for k, x in enumerate(row) if x}


# matrices --------------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    """A ``rows x cols`` matrix stored as sparse columns."""

    rows: int
    cols: int
    columns: tuple = dc_field(repr=False)

    @staticmethod
    def from_columns(rows: int, columns: Iterable[dict]) -> "Matrix":
        cols = tuple(vclean(c) for c in columns)
        for c in cols:
            for k in c:
                if not 0 <= k < rows:
                    raise ValueError("row index %d out of range %d" % (k, rows))
        return Matrix(rows, len(cols), cols)

    @staticmethod
    def from_rows(rows: Sequence[Sequence], field: Field = QQ, cols: int | None = None) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if rows else (cols or 0)
        columns = [dict() for _ in range(c)]
        for i, row in enumerate(rows):
            if len(row) != c:
                raise ValueError("ragged matrix rows")
            for j, x in enumerate(row):
                x = field(x)
                if x:
                    columns[j][i] = x
        return Matrix(r, c, tuple(columns))

    @staticmethod
    def from_sparse_rows(rows: Sequence[dict], cols: int) -> "Matrix":
        columns = [dict() for _ in range(cols)]
        for i, row in enumerate(rows):
            for j, x in row.items():
                if x:
                    columns[j][i] = x
        return Matrix(len(rows), cols, tuple(columns))

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, tuple({} for _ in range(cols)))

    @staticmethod
    def identity(n: int, field: Field = QQ) -> "Matrix":
        one = field.one
        return Matrix(n, n, tuple({i: one} for i in range(n)))

    def sparse_rows(self) -> list:
        out = [dict() for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                out[i][j] = x
        return out

    def dense(self, field: Field = QQ) -> list:
        z = field.zero
        out = [[z] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                out[i][j] = x
        return out

    def apply(self, v: dict) -> dict:
        out: dict = {}
        cols = self.columns
        for j, x in v.items():
            vaxpy(out, cols[j], x)
        return out

    __call__ = apply

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch %dx%d @ %dx%d" % (self.rows, self.cols, other.rows, other.cols))
        return Matrix(self.rows, other.cols, tuple(self.apply(c) for c in other.columns))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(vadd(a, b) for a, b in zip(self.columns, other.columns)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(vadd(a, b, -1) for a, b in zip(self.columns, other.columns)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(vscale(a, -1) for a in self.columns))

    def scale(self, c) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(vscale(a, c) for a in self.columns))

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(self.sparse_rows()))

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch %dx%d vs %dx%d" % (self.rows, self.cols, other.rows, other.cols))

    def is_zero(self) -> bool:
        return not any(self.columns)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            a == b for a, b in zip(self.columns, other.columns))

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(sorted(c.items())) for c in self.columns)))

    def nonzero_witness(self):
        """First (row, col, value) of a nonzero entry, or None."""
        for j, col in enumerate(self.columns):
            if col:
                i = min(col)
                return (i, j, col[i])
        return None


def hstack(mats: Sequence[Matrix]) -> Matrix:
    rows = mats[0].rows
    cols = []
    for m in mats:
        if m.rows != rows:
            raise ValueError("hstack row mismatch")
        cols.extend(m.columns)
    return Matrix(rows, len(cols), tuple(cols))


def vstack(mats: Sequence[Matrix]) -> Matrix:
    cols = mats[0].cols
    out = [dict() for _ in range(cols)]
    off = 0
    for m in mats:
        if m.cols != cols:
            raise ValueError("vstack column mismatch")
        for j, c in enumerate(m.columns):
            for i, x in c.items():
                out[j][i + off] = x
        off += m.rows
    return Matrix(off, cols, tuple(out))


def block_diag(mats: Sequence[Matrix]) -> Matrix:
    rows = sum(m.rows for m in mats)
    out = []
    off = 0
    for m in mats:
        for c in m.columns:
            out.append({i + off: x for i, x in c.items()})
        off += m.rows
    return Matrix(rows, len(out), tuple(out))


# echelon forms ----------------------------------------------------------------

class Echelon:
    """Incrementally maintained reduced row-echelon basis.

    ``pivots`` maps a pivot column to its row; every row has a 1 at its pivot
    and zeros in all other pivot columns.
    """

    def __init__(self):
        self.pivots: dict = {}

    def reduce(self, row: dict) -> dict:
        r = dict(row)
        for c in [c for c in r if c in self.pivots]:
            x = r.get(c)
            if x:
                vaxpy(r, self.pivots[c], -x)
        return r

    def add(self, row: dict) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        c = min(r)
        inv = 1 / r[c]
        r = {k: x * inv for k, x in r.items()}
        for prow in self.pivots.values():
            x = prow.get(c)
            if x:
                vaxpy(prow, r, -x)
        self.pivots[c] = r
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def rows(self) -> list:
        return [self.pivots[c] for c in sorted(self.pivots)]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rref(m: Matrix) -> Matrix:
    """Reduced row-echelon form of ``m`` (zero rows kept at the bottom)."""
    ech = Echelon()
    for row in m.sparse_rows():
        ech.add(row)
    rows = ech.rows()
    rows += [{} for _ in range(m.rows - len(rows))]
    return Matrix.from_sparse_rows(rows, m.cols)


def rank(m: Matrix) -> int:
    ech = Echelon()
    for row in m.sparse_rows():
        ech.add(row)
    return ech.rank


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``k^ambient_dim`` with canonical (reduced echelon) basis rows."""

    ambient_dim: int
    basis: tuple  # sparse rows in reduced echelon form, ordered by pivot

    @staticmethod
    def span(ambient_dim: int, vectors: Iterable[dict]) -> "Subspace":
        ech = Echelon()
        for v in vectors:
            ech.add(v)
        return Subspace.from_echelon(ambient_dim, ech)

    @staticmethod
    def from_echelon(ambient_dim: int, ech: Echelon) -> "Subspace":
        return Subspace(ambient_dim, tuple(ech.rows()))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple:
        return tuple(min(r) for r in self.basis)

    def echelon(self) -> Echelon:
        ech = Echelon()
        for r in self.basis:
            ech.pivots[min(r)] = dict(r)
        return ech

    def contains(self, v: dict) -> bool:
        return self.echelon().contains(v)

    def contains_space(self, other: "Subspace") -> bool:
        ech = self.echelon()
        return all(ech.contains(r) for r in other.basis)

    def matrix(self) -> Matrix:
        return Matrix.from_sparse_rows(list(self.basis), self.ambient_dim)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, tuple(tuple(sorted(r.items())) for r in self.basis)))


def kernel(m: Matrix, field: Field = QQ) -> Subspace:
    """Null space ``{v : m v = 0}``."""
    ech = Echelon()
    for row in m.sparse_rows():
        ech.add(row)
    pivots = ech.pivots
    one = field.one
    vecs = []
    for f in range(m.cols):
        if f in pivots:
            continue
        v = {f: one}
        for c, row in pivots.items():
            x = row.get(f)
            if x:
                v[c] = -x
        vecs.append(v)
    return Subspace.span(m.cols, vecs)


def image(m: Matrix) -> Subspace:
    """Column space of ``m``."""
    return Subspace.span(m.rows, m.columns)


def solve(m: Matrix, b: dict):
    """Some ``x`` with ``m x = b`` (sparse dict), or None if inconsistent."""
    n = m.cols
    ech = Echelon()
    rows = m.sparse_rows()
    for i, row in enumerate(rows):
        r = dict(row)
        if b.get(i):
            r[n] = b[i]
        ech.add(r)
    if n in ech.pivots:
        return None
    x = {}
    for c, row in ech.pivots.items():
        y = row.get(n)
        if y:
            x[c] = y
    return x


@dataclass(frozen=True)
class QuotientSpace:
    """``k^ambient_dim / relations`` with pivot-complement representatives.

    ``basis_cols[k]`` is the ambient index represented by quotient basis
    vector k; ``projection`` sends ambient vectors to quotient coordinates.
    """

    ambient_dim: int
    relations: Subspace
    basis_cols: tuple
    projection: Matrix

    @property
    def dim(self) -> int:
        return len(self.basis_cols)

    @property
    def representatives(self) -> Matrix:
        return Matrix(self.ambient_dim, self.dim, tuple({c: 1} for c in self.basis_cols))

    def project(self, v: dict) -> dict:
        return self.projection.apply(v)

    def project_index(self, j: int) -> dict:
        return self.projection.columns[j]


def quotient(ambient_dim: int, rel: Subspace, field: Field = QQ) -> QuotientSpace:
    if rel.ambient_dim != ambient_dim:
        raise ValueError("relation space lives in dimension %d, not %d" % (rel.ambient_dim, ambient_dim))
    one = field.one
    piv = {min(r): r for r in rel.basis}
    free = [j for j in range(ambient_dim) if j not in piv]
    index = {j: k for k, j in enumerate(free)}
    cols = []
    for j in range(ambient_dim):
        if j in index:
            cols.append({index[j]: one})
        else:
            row = piv[j]
            cols.append({index[c]: -x for c, x in row.items() if c != j})
    return QuotientSpace(ambient_dim, rel, tuple(free), Matrix(len(free), ambient_dim, tuple(cols)))


def quotient_by(ambient_dim: int, relations: Iterable[dict], field: Field = QQ) -> QuotientSpace:
    return quotient(ambient_dim, Subspace.span(ambient_dim, relations), field)
