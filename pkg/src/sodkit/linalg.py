"""Exact rational matrices with sparse row storage.

Every entry is a :class:`fractions.Fraction`; nothing in here ever touches a
float.  Rows are kept as ``{column: value}`` dictionaries holding only the
nonzero entries, which keeps the permutation-like matrices produced by the
collection engine cheap to eliminate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError
from .poly import RatPoly, lcm

SparseRow = dict[int, Fraction]


def to_q(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_q(value: Fraction) -> str:
    """Canonical ``p/q`` rendering (integers as ``p/1``)."""
    return f"{value.numerator}/{value.denominator}"


class RatMatrix:
    """Immutable exact rational matrix."""

    __slots__ = ("_nrows", "_ncols", "_rows")

    def __init__(self, rows: Sequence[Sequence], ncols: int | None = None):
        data = [list(r) for r in rows]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        sparse = []
        for r in data:
            if len(r) != ncols:
                raise DimensionError("ragged rows")
            sparse.append({j: q for j, v in enumerate(r) if (q := to_q(v))})
        self._nrows = len(data)
        self._ncols = ncols
        self._rows = tuple(sparse)

    @classmethod
    def from_sparse(cls, nrows: int, ncols: int, rows: Iterable[Mapping[int, Fraction]]) -> "RatMatrix":
        obj = cls.__new__(cls)
        obj._nrows = nrows
        obj._ncols = ncols
        obj._rows = tuple({j: Fraction(v) for j, v in r.items() if v} for r in rows)
        if len(obj._rows) != nrows:
            raise DimensionError("row count mismatch")
        return obj

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.from_sparse(n, n, ({i: Fraction(1)} for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RatMatrix":
        return cls.from_sparse(nrows, ncols, ({} for _ in range(nrows)))

    @classmethod
    def diag(cls, values: Sequence) -> "RatMatrix":
        n = len(values)
        return cls.from_sparse(n, n, ({i: to_q(v)} for i, v in enumerate(values)))

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping[int, Fraction]]) -> "RatMatrix":
        rows: list[SparseRow] = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rows[i][j] = v
        return cls.from_sparse(nrows, len(columns), rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self._nrows, self._ncols

    @property
    def nrows(self) -> int:
        return self._nrows

    @property
    def ncols(self) -> int:
        return self._ncols

    def is_square(self) -> bool:
        return self._nrows == self._ncols

    def row(self, i: int) -> SparseRow:
        return dict(self._rows[i])

    def sparse_rows(self) -> tuple[SparseRow, ...]:
        # callers must not mutate
        return self._rows

    def columns(self) -> list[SparseRow]:
        cols: list[SparseRow] = [{} for _ in range(self._ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self._nrows and 0 <= j < self._ncols):
            raise IndexError(ij)
        return self._rows[i].get(j, Fraction(0))

    def tolist(self) -> list[list[Fraction]]:
        zero = Fraction(0)
        return [[r.get(j, zero) for j in range(self._ncols)] for r in self._rows]

    def transpose(self) -> "RatMatrix":
        return RatMatrix.from_sparse(self._ncols, self._nrows, self.columns())

    @property
    def T(self) -> "RatMatrix":
        return self.transpose()

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.transpose()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(sorted(r.items())) for r in self._rows)))

    def __repr__(self) -> str:
        return f"RatMatrix({[[str(v) for v in r] for r in self.tolist()]})"

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in addition")
        return RatMatrix.from_sparse(
            self._nrows, self._ncols, (_axpy(a, Fraction(1), b) for a, b in zip(self._rows, other._rows))
        )

    def __neg__(self) -> "RatMatrix":
        return self.scale(-1)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in subtraction")
        return RatMatrix.from_sparse(
            self._nrows, self._ncols, (_axpy(a, Fraction(-1), b) for a, b in zip(self._rows, other._rows))
        )

    def scale(self, c) -> "RatMatrix":
        c = to_q(c)
        return RatMatrix.from_sparse(self._nrows, self._ncols, ({j: c * v for j, v in r.items()} for r in self._rows))

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self._ncols != other._nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for r in self._rows:
            acc: SparseRow = {}
            for k, a in r.items():
                for j, b in other._rows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            out.append(acc)
        return RatMatrix.from_sparse(self._nrows, other._ncols, out)

    def apply(self, vec: Sequence | Mapping[int, Fraction]) -> list[Fraction]:
        """Matrix-vector product, returned dense."""
        items = vec.items() if isinstance(vec, Mapping) else enumerate(vec)
        x = {j: to_q(v) for j, v in items if v}
        return [sum((v * x[j] for j, v in r.items() if j in x), Fraction(0)) for r in self._rows]

    def apply_sparse(self, x: Mapping[int, Fraction]) -> SparseRow:
        """Product with a sparse vector, row by row."""
        out: SparseRow = {}
        for i, r in enumerate(self._rows):
            s = Fraction(0)
            for j, v in r.items():
                xv = x.get(j)
                if xv:
                    s += v * xv
            if s:
                out[i] = s
        return out

    def power(self, k: int) -> "RatMatrix":
        if not self.is_square():
            raise DimensionError("power of a non-square matrix")
        result = RatMatrix.identity(self._nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def kron(self, other: "RatMatrix") -> "RatMatrix":
        r2, c2 = other.shape
        rows = []
        for ra in self._rows:
            for rb in other._rows:
                rows.append({ja * c2 + jb: a * b for ja, a in ra.items() for jb, b in rb.items()})
        return RatMatrix.from_sparse(self._nrows * r2, self._ncols * c2, rows)

    def rref(self) -> "Echelon":
        ech = Echelon(self._ncols)
        for r in self._rows:
            ech.add(r)
        return ech

    def rank(self) -> int:
        return self.rref().rank

    def kernel(self) -> list[list[Fraction]]:
        return kernel(self)

    def inverse(self) -> "RatMatrix":
        if not self.is_square():
            raise DimensionError("inverse of a non-square matrix")
        n = self._nrows
        aug = [dict(r) | {n + i: Fraction(1)} for i, r in enumerate(self._rows)]
        ech = Echelon(2 * n)
        for r in aug:
            ech.add(r)
        if any(p >= n for p in ech.pivots) or ech.rank < n:
            raise ZeroDivisionError("matrix is singular")
        inv = [None] * n
        for p, row in ech.pivot_rows():
            inv[p] = {j - n: v for j, v in row.items() if j >= n}
        return RatMatrix.from_sparse(n, n, inv)

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self._nrows


def _axpy(y: Mapping[int, Fraction], a: Fraction, x: Mapping[int, Fraction]) -> SparseRow:
    out = dict(y)
    for j, v in x.items():
        s = out.get(j, 0) + a * v
        if s:
            out[j] = s
        else:
            out.pop(j, None)
    return out


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Rows are added one at a time; each stored row has a leading 1 in its pivot
    column and zeros in every other pivot column.  ``add`` returns whether the
    row enlarged the span, which makes this double as an independence test.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: dict[int, SparseRow] = {}
        # column -> pivots whose rows have a nonzero there; speeds back-substitution
        self._occ: dict[int, set[int]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def pivot_rows(self) -> list[tuple[int, SparseRow]]:
        return sorted(self._rows.items())

    def reduce(self, row: Mapping[int, Fraction]) -> SparseRow:
        r = {j: v for j, v in row.items() if v}
        for p in [j for j in r if j in self._rows]:
            c = r.get(p)
            if c:
                for j, v in self._rows[p].items():
                    s = r.get(j, 0) - c * v
                    if s:
                        r[j] = s
                    else:
                        r.pop(j, None)
        return r

    def contains(self, row: Mapping[int, Fraction]) -> bool:
        return not self.reduce(row)

    def add(self, row: Mapping[int, Fraction]) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {j: v * inv for j, v in r.items()}
        for q in list(self._occ.get(p, ())):
            other = self._rows[q]
            c = other[p]
            for j, v in r.items():
                s = other.get(j, 0) - c * v
                if s:
                    if j not in other:
                        self._occ.setdefault(j, set()).add(q)
                    other[j] = s
                else:
                    if j in other:
                        del other[j]
                        self._occ[j].discard(q)
        self._occ.pop(p, None)
        self._rows[p] = r
        for j in r:
            if j != p:
                self._occ.setdefault(j, set()).add(p)
        return True

    def kernel_basis(self) -> list[SparseRow]:
        """Null space of the row space, one vector per free column."""
        free = [j for j in range(self.ncols) if j not in self._rows]
        free_set = set(free)
        col_entries: dict[int, list[tuple[int, Fraction]]] = {f: [] for f in free}
        for p, r in self._rows.items():
            for j, v in r.items():
                if j in free_set:
                    col_entries[j].append((p, v))
        basis = []
        for f in free:
            vec: SparseRow = {f: Fraction(1)}
            for p, v in col_entries[f]:
                vec[p] = -v
            basis.append(vec)
        return basis


def kernel_sparse(m: RatMatrix) -> list[SparseRow]:
    return m.rref().kernel_basis()


def kernel(m: RatMatrix) -> list[list[Fraction]]:
    """Basis of {v : m v = 0}, in reduced form (one free coordinate per vector)."""
    zero = Fraction(0)
    return [[v.get(j, zero) for j in range(m.ncols)] for v in kernel_sparse(m)]


def minimal_polynomial(m: RatMatrix) -> RatPoly:
    """Least-degree monic polynomial annihilating ``m``.

    Computed as the lcm of the local minimal polynomials of the standard basis
    vectors; vectors already inside the accumulated invariant subspace are
    skipped since their local polynomial divides the running lcm.
    """
    if not m.is_square():
        raise DimensionError("minimal polynomial needs a square matrix")
    n = m.nrows
    if n == 0:
        return RatPoly([1])
    result = RatPoly([1])
    span = Echelon(n)
    for i in range(n):
        e = {i: Fraction(1)}
        if span.contains(e):
            continue
        local = _local_minpoly(m, e, span)
        result = lcm(result, local)
        if span.rank == n:
            break
    return result


def _local_minpoly(m: RatMatrix, v: SparseRow, span: Echelon) -> RatPoly:
    # Krylov: express the first dependent power via tracked combinations.
    n = m.nrows
    ech = Echelon(2 * n + 1)
    powers = [v]
    k = 0
    cur = v
    while True:
        # augmented row [cur | e_k] records which power combination produced it
        aug = dict(cur)
        aug[n + k] = Fraction(1)
        reduced = ech.reduce(aug)
        if not any(j < n for j in reduced):
            coeffs = [Fraction(0)] * (k + 1)
            for j, val in reduced.items():
                coeffs[j - n] = val
            for w in powers[:-1]:
                span.add(w)
            return RatPoly(coeffs).monic()
        ech.add(aug)
        cur = m.apply_sparse(cur)
        powers.append(cur)
        k += 1


def signature(form: RatMatrix) -> tuple[int, int, int]:
    """Sylvester signature (positive, negative, zero) by symmetric reduction."""
    if not form.is_symmetric():
        raise DimensionError("signature requires a symmetric matrix")
    a = form.tolist()
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and a[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # congruence e_i -> e_i + e_j makes the diagonal entry 2 a_ij
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        d = a[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        row = a[piv]
        for i in active:
            f = a[i][piv]
            if f:
                f = f / d
                ai = a[i]
                for k in active:
                    if row[k]:
                        ai[k] -= f * row[k]
    return pos, neg, n - pos - neg
