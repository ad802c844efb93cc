"""Finite-dimensional associative algebras over Q given by structure constants.

Elements are coordinate vectors with respect to a fixed basis ``e_0..e_{d-1}``.
Internally they travel as sparse ``{index: Fraction}`` dictionaries; the public
functions also accept plain sequences.

The real classification works factor by factor on the Q-simple components
``eA`` cut out by central primitive idempotents ``e``.  Because taking
invariants and tensoring with R commute, classifying these Q-algebras is the
same as classifying the real algebras they become after base change.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import isqrt
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import (
    DimensionError,
    InvalidAlgebra,
    NotAutomorphism,
    NotSemisimple,
    SodkitError,
    UnsupportedCenter,
)
from .linalg import Echelon, RatMatrix, SparseRow, kernel_sparse, signature, to_q
from .poly import RatPoly, count_real_roots, factor_over_q, xgcd

Vector = dict[int, Fraction]

# full basis-triple associativity check is skipped above this size when the
# algebra is derived from an already validated one (see QAlgebra.__init__)
EXHAUSTIVE_CHECK_DIM = 32
SEED_RETRIES = 64
# regular elements without a real eigenvalue needed to call a factor quaternionic
REGULAR_SAMPLES = 16
KIND_ORDER = {"R": 0, "C": 1, "H": 2}


def _sparse(vec: Sequence | Mapping[int, Fraction]) -> Vector:
    if isinstance(vec, Mapping):
        return {i: to_q(v) for i, v in vec.items() if v}
    return {i: q for i, v in enumerate(vec) if (q := to_q(v))}


def _dense(vec: Mapping[int, Fraction], dim: int) -> tuple[Fraction, ...]:
    zero = Fraction(0)
    return tuple(vec.get(i, zero) for i in range(dim))


def _add(x: Vector, y: Mapping[int, Fraction], c: Fraction = Fraction(1)) -> Vector:
    out = dict(x)
    for k, v in y.items():
        s = out.get(k, 0) + c * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _scale(x: Mapping[int, Fraction], c: Fraction) -> Vector:
    if not c:
        return {}
    return {k: c * v for k, v in x.items()}


class QAlgebra:
    """Unital associative Q-algebra with basis products ``e_i e_j = sum_k c[i][j][k] e_k``."""

    __slots__ = ("dim", "unit", "name", "_table", "_unit_sparse", "_traces")

    def __init__(self, constants, unit: Sequence, *, name: str = "", check: bool = True):
        dim = len(unit)
        table: list[tuple[tuple[int, Fraction], ...]] = []
        if len(constants) != dim:
            raise DimensionError("structure constants do not match the unit length")
        for i in range(dim):
            if len(constants[i]) != dim:
                raise DimensionError("structure constants must be dim x dim x dim")
            for j in range(dim):
                row = constants[i][j]
                if len(row) != dim:
                    raise DimensionError("structure constants must be dim x dim x dim")
                table.append(tuple((k, q) for k, v in enumerate(row) if (q := to_q(v))))
        self._init(dim, table, unit, name, check)

    @classmethod
    def from_table(cls, dim: int, table, unit: Sequence | Mapping, *, name: str = "", check: bool = True) -> "QAlgebra":
        obj = cls.__new__(cls)
        tab = [tuple((k, Fraction(c)) for k, c in entry if c) for entry in table]
        if len(tab) != dim * dim:
            raise DimensionError("table must hold dim*dim entries")
        if isinstance(unit, Mapping):
            unit = _dense(unit, dim)
        obj._init(dim, tab, unit, name, check)
        return obj

    def _init(self, dim, table, unit, name, check):
        if dim < 1:
            raise DimensionError("algebras have positive dimension")
        self.dim = dim
        self.name = name
        self._table = table
        self.unit = tuple(to_q(u) for u in unit)
        if len(self.unit) != dim:
            raise DimensionError("unit has the wrong length")
        self._unit_sparse = _sparse(self.unit)
        self._traces = None
        if check:
            self.validate()

    # -- basic arithmetic -------------------------------------------------

    def basis_product(self, i: int, j: int) -> Vector:
        return dict(self._table[i * self.dim + j])

    def mul(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> Vector:
        tab = self._table
        d = self.dim
        out: dict[int, Fraction] = {}
        for i, a in x.items():
            base = i * d
            for j, b in y.items():
                ab = a * b
                for k, c in tab[base + j]:
                    out[k] = out.get(k, 0) + ab * c
        return {k: v for k, v in out.items() if v}

    def multiply(self, x: Sequence, y: Sequence) -> tuple[Fraction, ...]:
        """Dense convenience wrapper around :meth:`mul`."""
        return _dense(self.mul(_sparse(x), _sparse(y)), self.dim)

    def one(self) -> Vector:
        return dict(self._unit_sparse)

    def basis_vector(self, i: int) -> Vector:
        return {i: Fraction(1)}

    def power(self, x: Mapping[int, Fraction], k: int) -> Vector:
        out = self.one()
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def evaluate(self, p: RatPoly, x: Mapping[int, Fraction], one: Mapping[int, Fraction] | None = None) -> Vector:
        """p(x) by Horner; ``one`` stands in for the constant term (defaults to the unit)."""
        one = self.one() if one is None else dict(one)
        acc: Vector = {}
        for c in reversed(p.coeffs):
            acc = _add(self.mul(acc, x), one, c)
        return acc

    @property
    def structure_constants(self) -> list[list[list[Fraction]]]:
        d = self.dim
        zero = Fraction(0)
        out = []
        for i in range(d):
            rows = []
            for j in range(d):
                entry = dict(self._table[i * d + j])
                rows.append([entry.get(k, zero) for k in range(d)])
            out.append(rows)
        return out

    def left_matrix(self, x: Mapping[int, Fraction]) -> RatMatrix:
        cols = [self.mul(x, {j: Fraction(1)}) for j in range(self.dim)]
        return RatMatrix.from_columns(self.dim, cols)

    def right_matrix(self, x: Mapping[int, Fraction]) -> RatMatrix:
        """Matrix of y -> y*x."""
        cols = [self.mul({j: Fraction(1)}, x) for j in range(self.dim)]
        return RatMatrix.from_columns(self.dim, cols)

    def trace_vector(self) -> tuple[Fraction, ...]:
        """Tr(L_{e_k}) for every basis element."""
        if self._traces is None:
            d = self.dim
            tr = [Fraction(0)] * d
            for k in range(d):
                for j in range(d):
                    for kk, c in self._table[k * d + j]:
                        if kk == j:
                            tr[k] += c
            self._traces = tuple(tr)
        return self._traces

    def trace(self, x: Mapping[int, Fraction]) -> Fraction:
        tr = self.trace_vector()
        return sum((v * tr[i] for i, v in x.items()), Fraction(0))

    def trace_form(self) -> RatMatrix:
        """Gram matrix of (x, y) -> Tr(L_{xy}) on the basis."""
        d = self.dim
        tr = self.trace_vector()
        rows = []
        for i in range(d):
            row = {}
            for j in range(d):
                s = sum((c * tr[k] for k, c in self._table[i * d + j]), Fraction(0))
                if s:
                    row[j] = s
            rows.append(row)
        return RatMatrix.from_sparse(d, d, rows)

    # -- validation -------------------------------------------------------

    def validate(self) -> None:
        """Exhaustive associativity and unit-law check on the basis."""
        d = self.dim
        one = self._unit_sparse
        for i in range(d):
            e = {i: Fraction(1)}
            if self.mul(one, e) != e or self.mul(e, one) != e:
                raise InvalidAlgebra(f"unit law fails on e_{i}")
        tab = self._table
        for i in range(d):
            for j in range(d):
                ij = tab[i * d + j]
                for k in range(d):
                    left: dict[int, Fraction] = {}
                    for m, c in ij:
                        for t, c2 in tab[m * d + k]:
                            left[t] = left.get(t, 0) + c * c2
                    right: dict[int, Fraction] = {}
                    for m, c in tab[j * d + k]:
                        for t, c2 in tab[i * d + m]:
                            right[t] = right.get(t, 0) + c * c2
                    if {a: b for a, b in left.items() if b} != {a: b for a, b in right.items() if b}:
                        raise InvalidAlgebra(f"associativity fails on (e_{i}, e_{j}, e_{k})")

    def is_commutative(self) -> bool:
        d = self.dim
        return all(
            dict(self._table[i * d + j]) == dict(self._table[j * d + i]) for i in range(d) for j in range(i + 1, d)
        )

    def element_minpoly(self, x: Mapping[int, Fraction], one: Mapping[int, Fraction] | None = None) -> RatPoly:
        """Minimal polynomial of ``x`` (inside the corner with identity ``one``)."""
        one = self.one() if one is None else dict(one)
        d = self.dim
        lx = self.right_matrix(x)
        ech = Echelon(2 * d + 2)
        cur = one
        k = 0
        while True:
            aug = dict(cur)
            aug[d + k] = Fraction(1)
            red = ech.reduce(aug)
            if not any(j < d for j in red):
                coeffs = [Fraction(0)] * (k + 1)
                for j, v in red.items():
                    coeffs[j - d] = v
                return RatPoly(coeffs).monic()
            ech.add(aug)
            cur = lx.apply_sparse(cur)
            k += 1
            if k > d + 1:
                raise SodkitError("minimal polynomial search did not terminate")

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<QAlgebra{label} dim={self.dim}>"

    def __eq__(self, other) -> bool:
        if not isinstance(other, QAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.unit == other.unit and self._table == other._table

    def __hash__(self):
        return hash((self.dim, self.unit))


# -- standard algebras ------------------------------------------------------


def rationals() -> QAlgebra:
    return QAlgebra.from_table(1, [((0, Fraction(1)),)], [1], name="Q")


def matrix_algebra(k: int) -> QAlgebra:
    """M_k(Q) on the matrix units E_ab (index a*k + b)."""
    if k < 1:
        raise DimensionError("matrix size must be positive")
    d = k * k
    table = []
    for i in range(d):
        a, b = divmod(i, k)
        for j in range(d):
            c, e = divmod(j, k)
            table.append(((a * k + e, Fraction(1)),) if b == c else ())
    unit = [1 if i // k == i % k else 0 for i in range(d)]
    return QAlgebra.from_table(d, table, unit, name=f"M_{k}(Q)", check=k <= 3)


def quaternions(a=-1, b=-1) -> QAlgebra:
    """Quaternion algebra (a, b)_Q on the basis 1, i, j, k; defaults to H_Q."""
    a, b = to_q(a), to_q(b)
    if not a or not b:
        raise DimensionError("quaternion parameters must be nonzero")
    # i^2 = a, j^2 = b, ij = k = -ji, k^2 = -ab
    mult = {
        (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
        (1, 0): (1, 1), (1, 1): (0, a), (1, 2): (3, 1), (1, 3): (2, a),
        (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (0, b), (2, 3): (1, -b),
        (3, 0): (3, 1), (3, 1): (2, -a), (3, 2): (1, b), (3, 3): (0, -a * b),
    }
    table = [((mult[i, j][0], Fraction(mult[i, j][1])),) for i in range(4) for j in range(4)]
    name = "H_Q" if (a, b) == (-1, -1) else f"({a},{b})_Q"
    return QAlgebra.from_table(4, table, [1, 0, 0, 0], name=name)


def number_field(poly: RatPoly | Sequence) -> QAlgebra:
    """Q[x]/(f) on the power basis 1, x, ..., x^(n-1); f need not be irreducible."""
    f = poly if isinstance(poly, RatPoly) else RatPoly(poly)
    f = f.monic()
    n = f.degree
    if n < 1:
        raise DimensionError("modulus must have positive degree")
    table = []
    for i in range(n):
        for j in range(n):
            mono = RatPoly([0] * (i + j) + [1]) % f
            table.append(tuple((k, c) for k, c in enumerate(mono.coeffs) if c))
    return QAlgebra.from_table(n, table, [1] + [0] * (n - 1), name=f"Q[x]/({f})")


def direct_product(algebras: Sequence[QAlgebra]) -> QAlgebra:
    if not algebras:
        raise DimensionError("empty product")
    d = sum(a.dim for a in algebras)
    offsets = []
    off = 0
    for a in algebras:
        offsets.append(off)
        off += a.dim
    table: list[tuple] = [()] * (d * d)
    unit = [Fraction(0)] * d
    for a, o in zip(algebras, offsets):
        for i in range(a.dim):
            unit[o + i] = a.unit[i]
            for j in range(a.dim):
                table[(o + i) * d + (o + j)] = tuple((o + k, c) for k, c in a._table[i * a.dim + j])
    return QAlgebra.from_table(d, table, unit, name=" x ".join(a.name or "?" for a in algebras), check=d <= EXHAUSTIVE_CHECK_DIM)


def tensor(factors: Sequence[QAlgebra]) -> QAlgebra:
    """Tensor product on the product basis, first factor most significant.

    The result is associative and unital whenever the factors are, so it is
    only re-checked exhaustively when small.
    """
    if not factors:
        raise DimensionError("tensor product of an empty list")
    result = factors[0]
    for nxt in factors[1:]:
        result = _tensor2(result, nxt)
    return result


def _tensor2(a: QAlgebra, b: QAlgebra) -> QAlgebra:
    da, db = a.dim, b.dim
    d = da * db
    table = []
    for a1 in range(da):
        for b1 in range(db):
            for a2 in range(da):
                ta = a._table[a1 * da + a2]
                for b2 in range(db):
                    tb = b._table[b1 * db + b2]
                    table.append(tuple((ka * db + kb, ca * cb) for ka, ca in ta for kb, cb in tb))
    unit = [a.unit[i // db] * b.unit[i % db] for i in range(d)]
    name = f"{a.name or '?'} (x) {b.name or '?'}"
    return QAlgebra.from_table(d, table, unit, name=name, check=d <= EXHAUSTIVE_CHECK_DIM)


# -- automorphisms and subalgebras ----------------------------------------


@dataclass(frozen=True)
class AlgebraAutomorphism:
    """Invertible unital multiplicative linear map; column j is the image of e_j."""

    matrix: RatMatrix

    @classmethod
    def checked(cls, algebra: QAlgebra, matrix: RatMatrix) -> "AlgebraAutomorphism":
        if not verify_automorphism(algebra, matrix):
            raise NotAutomorphism("matrix is not an algebra automorphism")
        return cls(matrix)

    def __call__(self, x: Mapping[int, Fraction]) -> Vector:
        return self.matrix.apply_sparse(x)


def verify_automorphism(algebra: QAlgebra, phi: RatMatrix) -> bool:
    d = algebra.dim
    if phi.shape != (d, d):
        raise DimensionError("automorphism matrix must be dim x dim")
    cols = phi.columns()
    if not phi.is_invertible():
        return False
    if phi.apply_sparse(algebra._unit_sparse) != algebra._unit_sparse:
        return False
    tab = algebra._table
    for i in range(d):
        for j in range(d):
            lhs: dict[int, Fraction] = {}
            for k, c in tab[i * d + j]:
                for t, v in cols[k].items():
                    lhs[t] = lhs.get(t, 0) + c * v
            lhs = {t: v for t, v in lhs.items() if v}
            if lhs != algebra.mul(cols[i], cols[j]):
                return False
    return True


def subalgebra_from_span(
    algebra: QAlgebra, vectors: Iterable[Mapping[int, Fraction]], unit: Mapping[int, Fraction] | None = None, name: str = ""
) -> tuple[QAlgebra, RatMatrix]:
    """Intrinsic structure constants of a subalgebra given by spanning vectors.

    Closure is verified exactly: every basis product must reconstruct from its
    coordinates.  Since the embedding is then an injective multiplicative map
    into ``algebra``, associativity is inherited; the triple check is repeated
    directly for small results.  ``unit`` defaults to the unit of ``algebra``.
    """
    ech = Echelon(algebra.dim)
    for v in vectors:
        ech.add(v)
    basis = [row for _, row in ech.pivot_rows()]
    pivots = ech.pivots
    m = len(basis)
    if m == 0:
        raise DimensionError("empty subalgebra")

    def coords(v: Mapping[int, Fraction]) -> Vector:
        c = {t: v[p] for t, p in enumerate(pivots) if p in v and v[p]}
        recon: Vector = {}
        for t, ct in c.items():
            recon = _add(recon, basis[t], ct)
        if recon != {k: x for k, x in v.items() if x}:
            raise InvalidAlgebra("span is not closed under multiplication")
        return c

    table = []
    for s in range(m):
        for t in range(m):
            table.append(tuple(sorted(coords(algebra.mul(basis[s], basis[t])).items())))
    one = algebra.one() if unit is None else dict(unit)
    sub_unit = coords(one)
    sub = QAlgebra.from_table(m, table, sub_unit, name=name, check=False)
    # unit law must hold for the declared unit; it is not inherited
    for s in range(m):
        e = {s: Fraction(1)}
        if sub.mul(sub._unit_sparse, e) != e or sub.mul(e, sub._unit_sparse) != e:
            raise InvalidAlgebra("declared unit does not act as identity on the subalgebra")
    if m <= EXHAUSTIVE_CHECK_DIM:
        sub.validate()
    embedding = RatMatrix.from_columns(algebra.dim, basis)
    return sub, embedding


def fixed_subalgebra(
    algebra: QAlgebra, generators: Sequence[AlgebraAutomorphism | RatMatrix], *, verify: bool = True
) -> tuple[QAlgebra, RatMatrix]:
    """Subalgebra fixed by every generator: the intersection of ker(g - id)."""
    d = algebra.dim
    rows: list[SparseRow] = []
    for g in generators:
        mat = g.matrix if isinstance(g, AlgebraAutomorphism) else g
        if verify and not verify_automorphism(algebra, mat):
            raise NotAutomorphism("generator is not an automorphism of the algebra")
        for i, r in enumerate(mat.sparse_rows()):
            row = dict(r)
            row[i] = row.get(i, 0) - 1
            row = {j: v for j, v in row.items() if v}
            if row:
                rows.append(row)
    if not rows:
        basis = [{i: Fraction(1)} for i in range(d)]
    else:
        basis = kernel_sparse(RatMatrix.from_sparse(len(rows), d, rows))
    sub, emb = subalgebra_from_span(algebra, basis, name=f"{algebra.name}^G" if algebra.name else "")
    return sub, emb


def radical(algebra: QAlgebra) -> list[tuple[Fraction, ...]]:
    """Kernel of the trace form, which is the Jacobson radical in characteristic 0."""
    return [_dense(v, algebra.dim) for v in kernel_sparse(algebra.trace_form())]


def is_semisimple(algebra: QAlgebra) -> bool:
    return algebra.trace_form().rank() == algebra.dim


def center(algebra: QAlgebra) -> tuple[QAlgebra, RatMatrix]:
    d = algebra.dim
    tab = algebra._table
    # unknown z = sum z_i e_i; equations (z e_j - e_j z)_k = 0 for all j, k
    rows = []
    for j in range(d):
        eq: dict[int, dict[int, Fraction]] = {}
        for i in range(d):
            for k, c in tab[i * d + j]:
                eq.setdefault(k, {})
                eq[k][i] = eq[k].get(i, 0) + c
            for k, c in tab[j * d + i]:
                eq.setdefault(k, {})
                eq[k][i] = eq[k].get(i, 0) - c
        for k, r in eq.items():
            r = {i: v for i, v in r.items() if v}
            if r:
                rows.append(r)
    if rows:
        basis = kernel_sparse(RatMatrix.from_sparse(len(rows), d, rows))
    else:
        basis = [{i: Fraction(1)} for i in range(d)]
    return subalgebra_from_span(algebra, basis, name=f"Z({algebra.name})" if algebra.name else "")


# -- idempotents --------------------------------------------------------------


def _crt_idempotent_polys(mu: RatPoly, factors: list[RatPoly]) -> list[RatPoly]:
    """Polynomials E_i with E_i = 1 mod f_i and 0 mod f_j (j != i)."""
    out = []
    for f in factors:
        g = mu // f
        _, s, _ = xgcd(g % f, f)
        out.append((g * s) % mu)
    return out


def _random_element(rng: random.Random, basis: Sequence[Mapping[int, Fraction]], spread: int = 3) -> Vector:
    out: Vector = {}
    for b in basis:
        c = rng.randint(-spread, spread)
        if c:
            out = _add(out, b, Fraction(c))
    return out


def _split_commutative(
    algebra: QAlgebra,
    space: Sequence[Mapping[int, Fraction]],
    candidates: Callable[[Vector, int], Iterator[Vector]],
) -> list[Vector]:
    """Primitive idempotents of a commutative semisimple subalgebra.

    ``space`` spans the subalgebra inside ``algebra``; ``candidates(e, dim)``
    yields elements of the corner e*space to try.  A corner is certified to be
    a field once some element has an irreducible minimal polynomial of full
    degree; otherwise a reducible minimal polynomial splits it.
    """
    pending = [algebra.one()]
    done: list[Vector] = []
    while pending:
        e = pending.pop()
        corner = Echelon(algebra.dim)
        for b in space:
            corner.add(algebra.mul(e, b))
        cdim = corner.rank
        split = None
        for x in candidates(e, cdim):
            x = algebra.mul(e, x)
            mu = algebra.element_minpoly(x, one=e)
            facs = factor_over_q(mu)
            if len(facs) == 1:
                if facs[0][1] > 1:
                    raise NotSemisimple("nilpotent element in a commutative semisimple algebra")
                if mu.degree == cdim:
                    break
                continue
            if any(mult > 1 for _, mult in facs):
                raise NotSemisimple("non-squarefree minimal polynomial in the center")
            polys = _crt_idempotent_polys(mu, [f for f, _ in facs])
            split = [algebra.evaluate(p, x, one=e) for p in polys]
            break
        else:
            raise SodkitError("could not certify a field or split the center")
        if split is None:
            done.append(e)
        else:
            pending.extend(split)
    return done


def _order_idempotents(algebra: QAlgebra, idems: list[Vector]) -> list[Vector]:
    def key(e):
        size = Echelon(algebra.dim)
        for i in range(algebra.dim):
            size.add(algebra.mul(e, {i: Fraction(1)}))
        return (size.rank, _dense(e, algebra.dim))

    return sorted(idems, key=key)


def central_primitive_idempotents(algebra: QAlgebra) -> list[tuple[Fraction, ...]]:
    """Orthogonal central idempotents summing to 1 with each eA simple over Q."""
    if not is_semisimple(algebra):
        raise NotSemisimple(f"{algebra!r} has a nonzero radical")
    return [_dense(e, algebra.dim) for e in _central_idempotents(algebra, seed=0, basis_first=True)]


def _central_idempotents(algebra: QAlgebra, seed: int, basis_first: bool) -> list[Vector]:
    _, emb = center(algebra)
    space = emb.columns()

    def candidates(e: Vector, cdim: int) -> Iterator[Vector]:
        if basis_first:
            yield from space
        for attempt in range(SEED_RETRIES):
            rng = random.Random(seed + attempt)
            yield _random_element(rng, space)

    return _order_idempotents(algebra, _split_commutative(algebra, space, candidates))


# -- real classification ----------------------------------------------------


@dataclass(frozen=True)
class RealSimpleFactor:
    """M_size(D) with D = R, C or H, viewed as a Q-form of a real simple algebra."""

    kind: str
    size: int

    def __post_init__(self):
        if self.kind not in KIND_ORDER:
            raise ValueError(f"unknown factor kind {self.kind!r}")
        if self.size < 1:
            raise ValueError("factor size must be positive")

    @property
    def division_dim(self) -> int:
        return {"R": 1, "C": 2, "H": 4}[self.kind]

    @property
    def dim_q(self) -> int:
        return self.division_dim * self.size * self.size

    def sort_key(self) -> tuple[int, int]:
        return KIND_ORDER[self.kind], self.size

    def __str__(self) -> str:
        return f"{self.kind}({self.size})"


@dataclass(frozen=True)
class WedderburnReport:
    factors: tuple[RealSimpleFactor, ...]
    idempotents: tuple[tuple[Fraction, ...], ...]
    method: str
    notes: tuple[str, ...] = field(default=())

    @property
    def kinds(self) -> tuple[str, ...]:
        return tuple(f.kind for f in self.factors)

    def multiset(self) -> tuple[tuple[str, int], ...]:
        return tuple((f.kind, f.size) for f in self.factors)


def _factor_subalgebra(algebra: QAlgebra, e: Vector) -> QAlgebra:
    span = [algebra.mul(e, {i: Fraction(1)}) for i in range(algebra.dim)]
    sub, _ = subalgebra_from_span(algebra, span, unit=e)
    return sub


def _primitive_element(field_alg: QAlgebra, seed: int) -> RatPoly:
    """Minimal polynomial of an element generating the commutative field algebra."""
    d = field_alg.dim
    basis = [{i: Fraction(1)} for i in range(d)]
    tries: list[Vector] = list(basis)
    for attempt in range(SEED_RETRIES):
        tries.append(_random_element(random.Random(seed + attempt), basis))
    for x in tries:
        mu = field_alg.element_minpoly(x)
        if mu.degree == d:
            return mu
    raise SodkitError("no primitive element found for the center")


def _classify_center(z: QAlgebra, seed: int) -> tuple[int, int]:
    """(degree over Q, number of real places) of a field given as an algebra."""
    if z.dim == 1:
        return 1, 1
    mu = _primitive_element(z, seed)
    facs = factor_over_q(mu)
    if len(facs) != 1 or facs[0][1] != 1:
        raise SodkitError("center of a simple factor is not a field")
    return z.dim, count_real_roots(mu)


def _complex_factors(fdim: int, zdeg: int, nreal: int) -> list[RealSimpleFactor]:
    if nreal:
        raise UnsupportedCenter(f"center of degree {zdeg} with {nreal} real place(s)")
    if zdeg % 2:
        raise SodkitError("totally imaginary field of odd degree")
    k2 = fdim // zdeg
    k = isqrt(k2)
    if k * k != k2 or k2 * zdeg != fdim:
        raise SodkitError("simple factor dimension is not a square over its center")
    return [RealSimpleFactor("C", k)] * (zdeg // 2)


def classify_real(algebra: QAlgebra) -> WedderburnReport:
    """Wedderburn factors after base change to R, decided by trace-form signatures.

    Central simple factors (center Q) are R- or H-type; the regular trace form
    x -> Tr(L_{x^2}) of M_k(R) has signature difference p - q = k, that of
    M_k(H) has q - p = 2k.  Factors with an imaginary center are C-type.
    """
    if not is_semisimple(algebra):
        raise NotSemisimple(f"{algebra!r} has a nonzero radical")
    idems = _central_idempotents(algebra, seed=0, basis_first=True)
    factors: list[RealSimpleFactor] = []
    for e in idems:
        f = _factor_subalgebra(algebra, e)
        z, _ = center(f)
        zdeg, nreal = _classify_center(z, seed=0)
        if zdeg > 1:
            factors.extend(_complex_factors(f.dim, zdeg, nreal))
            continue
        p, q, zero = signature(f.trace_form())
        if zero:
            raise NotSemisimple("degenerate trace form on a simple factor")
        if p > q and (p - q) ** 2 == f.dim:
            factors.append(RealSimpleFactor("R", p - q))
        elif q > p and (q - p) % 2 == 0 and (q - p) ** 2 == f.dim:
            factors.append(RealSimpleFactor("H", (q - p) // 2))
        else:
            raise SodkitError(f"trace form signature ({p},{q}) fits no real simple algebra of dim {f.dim}")
    return _report(algebra, factors, idems, "trace-signature")


def _report(algebra, factors, idems, method, notes=()) -> WedderburnReport:
    factors = sorted(factors, key=RealSimpleFactor.sort_key)
    if sum(f.dim_q for f in factors) != algebra.dim:
        raise SodkitError("Wedderburn dimensions do not add up")
    return WedderburnReport(
        factors=tuple(factors),
        idempotents=tuple(_dense(e, algebra.dim) for e in idems),
        method=method,
        notes=tuple(notes),
    )


def classify_real_oracle(algebra: QAlgebra, seed: int = 0) -> WedderburnReport:
    """Independent classification by real eigenvalues of regular elements.

    For a central simple factor F of degree n, a random element whose minimal
    polynomial has full degree n is regular.  In M_k(H) the reduced
    characteristic polynomial has every real root with even multiplicity, so a
    regular element never has a real eigenvalue; one regular element with a
    real eigenvalue therefore certifies F (x) R = M_n(R).  If REGULAR_SAMPLES
    seeded regular elements all lack one, the factor is declared quaternionic.
    Imaginary quadratic centers are recognised by the sign of the
    discriminant.  The center itself is split by random elements only.
    """
    if not is_semisimple(algebra):
        raise NotSemisimple(f"{algebra!r} has a nonzero radical")
    idems = _central_idempotents(algebra, seed=seed, basis_first=False)
    factors: list[RealSimpleFactor] = []
    notes = []
    for e in idems:
        f = _factor_subalgebra(algebra, e)
        z, _ = center(f)
        if z.dim > 1:
            mu = _primitive_element(z, seed)
            if mu.degree == 2:
                c0, c1, _ = mu.coeffs
                nreal = 0 if c1 * c1 - 4 * c0 < 0 else 2
            else:
                nreal = count_real_roots(mu)
            factors.extend(_complex_factors(f.dim, z.dim, nreal))
            continue
        n = isqrt(f.dim)
        if n * n != f.dim:
            raise SodkitError("central simple factor of non-square dimension")
        basis = [{i: Fraction(1)} for i in range(f.dim)]
        regular_seen = 0
        real_root = False
        for attempt in range(SEED_RETRIES):
            x = _random_element(random.Random(seed * 7919 + attempt), basis)
            mu = f.element_minpoly(x)
            if mu.degree != n or not mu.is_squarefree():
                continue
            regular_seen += 1
            if count_real_roots(mu) > 0:
                real_root = True
                break
            if regular_seen == REGULAR_SAMPLES:
                break
        if real_root:
            factors.append(RealSimpleFactor("R", n))
        elif regular_seen and n % 2 == 0:
            factors.append(RealSimpleFactor("H", n // 2))
            notes.append(f"no real eigenvalue among {regular_seen} regular elements of a degree-{n} factor")
        else:
            raise SodkitError("eigenvalue sampling failed to classify a factor")
    return _report(algebra, factors, idems, "regular-element-eigenvalues", notes)
