"""Full weak exceptional collections on D^b_{S_n}(X^n) for Brauer-Severi X over R.

For every non-decreasing multi-index alpha and irreducible V of its
stabilizer H, the equivariant bundle Inf(V(alpha) (x) V) has endomorphism
algebra (End V_{alpha_1} (x) ... (x) End V_{alpha_n} (x) End V)^H.  Its
Wedderburn factors M_k(D) give the indecomposable blocks T_j (End = D) with
multiplicity k.  Blocks are listed cell by cell in the order of the cells.
"""

from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .algebra import (
    AlgebraAutomorphism,
    QAlgebra,
    RealSimpleFactor,
    classify_real,
    classify_real_oracle,
    fixed_subalgebra,
    matrix_algebra,
    quaternions,
    rationals,
    tensor,
    verify_automorphism,
)
from .brauer import BrauerClass, CsaDescriptor, Motive
from .errors import InvalidDescriptor, NotAutomorphism, SodkitError
from .linalg import Echelon, RatMatrix
from .symrep import (
    IrrepDescriptor,
    MultiIndex,
    YoungSubgroup,
    complex_irrep_count,
    irrep_matrices,
    nondecreasing_indices,
    real_irreps,
    stabilizer,
)

log = logging.getLogger(__name__)

MAX_N = 4
MAX_DEGREE = 6

END_TAGS = ("Q", "H_Q")


@dataclass(frozen=True)
class BaseObject:
    index: int
    end_algebra: str
    label: str

    def __post_init__(self):
        if self.end_algebra not in END_TAGS:
            raise InvalidDescriptor(f"unknown endomorphism tag {self.end_algebra!r}")


def base_collection(degree: int, cls: BrauerClass) -> list[BaseObject]:
    """Weak exceptional collection on X = BS(A) with deg(A) = degree.

    Split: O, O(1), ..., O(degree-1).  Quaternionic, degree 2r:
    O, V1, O(2), V1(2), ..., O(2(r-1)), V1(2(r-1)) where End(V1) = H.
    """
    CsaDescriptor(degree, cls)
    if cls.is_trivial():
        return [BaseObject(i, "Q", "O" if i == 0 else f"O({i})") for i in range(degree)]
    out = []
    for t in range(degree // 2):
        twist = 2 * t
        if twist == 0:
            out.append(BaseObject(2 * t, "Q", "O"))
            out.append(BaseObject(2 * t + 1, "H_Q", "V1"))
        else:
            out.append(BaseObject(2 * t, "Q", f"O({twist})"))
            out.append(BaseObject(2 * t + 1, "H_Q", f"V1(x)O({twist})"))
    return out


@dataclass(frozen=True)
class Cell:
    alpha: MultiIndex
    stab: YoungSubgroup
    irrep: IrrepDescriptor

    def __post_init__(self):
        if list(self.alpha) != sorted(self.alpha):
            raise InvalidDescriptor("cells are indexed by non-decreasing multi-indices")
        if not self.irrep.fits(self.stab):
            raise InvalidDescriptor("irrep does not belong to the stabilizer")

    def label(self) -> str:
        return f"{self.alpha} {self.irrep.label()}"


def enumerate_cells(n: int, size: int) -> list[Cell]:
    if n < 1 or size < 1:
        raise InvalidDescriptor("need n >= 1 and a nonempty base collection")
    cells = []
    for alpha in nondecreasing_indices(n, size):
        h = stabilizer(alpha)
        cells.extend(Cell(alpha, h, rho) for rho in real_irreps(h))
    return cells


def complex_rank(n: int, size: int) -> int:
    """Number of exceptional objects of the equivariant category over C."""
    return sum(complex_irrep_count(stabilizer(a)) for a in nondecreasing_indices(n, size))


# -- invariant algebras ------------------------------------------------------


def _end_algebra(tag: str) -> QAlgebra:
    return rationals() if tag == "Q" else quaternions()


def _slot_swap_conj(dims: Sequence[int], p: int, rho: RatMatrix | None) -> RatMatrix:
    """Automorphism of (x)_j A_j (x) M_r: swap slots p, p+1 and conjugate the last slot by rho."""
    n = len(dims)
    r = rho.nrows if rho is not None else 1
    last = r * r
    radices = list(dims) + [last]
    total = 1
    for d in radices:
        total *= d
    if rho is not None:
        rinv = rho.inverse()
        rcols = rho.columns()
        rinv_rows = rinv.sparse_rows()
        # E_ab -> rho E_ab rho^{-1} = sum_{c,d} rho[c,a] rinv[b,d] E_cd
        conj = []
        for ab in range(last):
            a, b = divmod(ab, r)
            img = {}
            for c, x in rcols[a].items():
                for d, y in rinv_rows[b].items():
                    img[c * r + d] = img.get(c * r + d, 0) + x * y
            conj.append({k: v for k, v in img.items() if v})
    else:
        conj = [{0: Fraction(1)}]
    cols = []
    for idx in range(total):
        digits = []
        rest = idx
        for d in reversed(radices):
            rest, dig = divmod(rest, d)
            digits.append(dig)
        digits.reverse()
        digits[p], digits[p + 1] = digits[p + 1], digits[p]
        head = 0
        for d, dig in zip(radices[:n], digits[:n]):
            head = head * d + dig
        cols.append({head * last + k: v for k, v in conj[digits[n]].items()})
    return RatMatrix.from_columns(total, cols)


@lru_cache(maxsize=None)
def _invariant_algebra_cached(tags: tuple[str, ...], multiplicities: tuple[int, ...], partitions) -> tuple:
    group = YoungSubgroup(tuple((i, m) for i, m in enumerate(multiplicities)))
    rho = IrrepDescriptor(partitions)
    factors = [_end_algebra(t) for t in tags]
    r = rho.dimension
    big = tensor(factors + [matrix_algebra(r)])
    mats = irrep_matrices(group, rho)
    dims = [f.dim for f in factors]
    gens = []
    for (p, q), mat in sorted(mats.items()):
        if tags[p] != tags[q]:
            raise SodkitError("stabilizer swaps slots with different endomorphism algebras")
        phi = _slot_swap_conj(dims, p, mat if r > 1 else None)
        if not verify_automorphism(big, phi):
            raise NotAutomorphism(f"generator {(p, q)} does not act by automorphisms")
        gens.append(AlgebraAutomorphism(phi))
    fixed, emb = fixed_subalgebra(big, gens, verify=False)
    return big, fixed, emb


def invariant_algebra(base: Sequence[BaseObject], cell: Cell) -> QAlgebra:
    """(End V_{alpha_1} (x) ... (x) End V_{alpha_n} (x) End rho)^{H_alpha}."""
    return invariant_algebra_with_embedding(base, cell)[0]


def _algebra_key(base: Sequence[BaseObject], cell: Cell) -> tuple:
    """The invariant algebra depends only on the End tags along alpha, H_alpha and rho."""
    if any(a >= len(base) for a in cell.alpha):
        raise InvalidDescriptor(f"{cell.alpha} indexes past the base collection")
    tags = tuple(base[a].end_algebra for a in cell.alpha)
    return tags, cell.stab.multiplicities, cell.irrep.partitions


def invariant_algebra_with_embedding(base: Sequence[BaseObject], cell: Cell) -> tuple[QAlgebra, RatMatrix]:
    _, fixed, emb = _invariant_algebra_cached(*_algebra_key(base, cell))
    return fixed, emb


# -- blocks -------------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    source: Cell
    factor_index: int
    end_type: str
    multiplicity: int

    @property
    def division_dim(self) -> int:
        return {"R": 1, "C": 2, "H": 4}[self.end_type]


@dataclass(frozen=True)
class CellResult:
    cell: Cell
    algebra_dim: int
    factors: tuple[RealSimpleFactor, ...]

    def blocks(self) -> list[Block]:
        return [Block(self.cell, j, f.kind, f.size) for j, f in enumerate(self.factors, start=1)]


@lru_cache(maxsize=None)
def _classify_key(key: tuple, seed: int, cross_check: bool) -> tuple[int, tuple[RealSimpleFactor, ...]]:
    _, alg, _ = _invariant_algebra_cached(*key)
    report = classify_real(alg)
    if cross_check:
        oracle = classify_real_oracle(alg, seed)
        if oracle.multiset() != report.multiset():
            raise SodkitError(f"classifiers disagree on {key}: {report.multiset()} vs {oracle.multiset()}")
    return alg.dim, report.factors


def _decompose(base: Sequence[BaseObject], cell: Cell, seed: int, cross_check: bool) -> CellResult:
    dim, factors = _classify_key(_algebra_key(base, cell), seed, cross_check)
    return CellResult(cell, dim, factors)


def decompose_cell(base: Sequence[BaseObject], cell: Cell, *, seed: int = 0, cross_check: bool = True) -> list[Block]:
    return _decompose(base, cell, seed, cross_check).blocks()


def rdim_of_factors(kinds) -> int:
    kinds = list(kinds)
    if not kinds:
        raise ValueError("rdim of an empty collection is undefined")
    bad = set(kinds) - {"R", "C", "H"}
    if bad:
        raise ValueError(f"unknown factor kinds {sorted(bad)}")
    return 1 if "H" in kinds else 0


# -- rank accounting ------------------------------------------------------


def _same_subspace(a: RatMatrix, b: RatMatrix) -> bool:
    if a.shape != b.shape:
        return False
    ea, eb = Echelon(a.nrows), Echelon(b.nrows)
    for c in a.columns():
        ea.add(c)
    for c in b.columns():
        eb.add(c)
    return ea.pivot_rows() == eb.pivot_rows()


@dataclass(frozen=True)
class Identification:
    """Outcome of matching blocks across cells against the rank over C."""

    rank_consistent: int | None
    r_consistent: int | None
    d_consistent: int | None
    ambiguous: bool
    end_multiset: dict[str, int] | None
    groups: tuple[tuple[str, int, str], ...]
    notes: tuple[str, ...]


def identify_blocks(
    base: Sequence[BaseObject], results: Sequence[CellResult], rank_c: int
) -> Identification:
    """Smallest identification of blocks compatible with r' + 2d' = rank over C.

    Blocks are identification candidates when they come from cells with the
    same alpha whose invariant algebras coincide as subalgebras; candidates
    are matched factor by factor.  A group of t candidates may be merged into
    anywhere from t down to 1 blocks.  Among identifications reaching the
    rank constraint the one keeping the most C-type blocks is chosen; the
    result is flagged ambiguous if those optimal identifications disagree on
    the surviving multiset of endomorphism types, or if none exists.
    """
    by_alpha: dict[MultiIndex, list[CellResult]] = {}
    for res in results:
        by_alpha.setdefault(res.cell.alpha, []).append(res)

    groups: list[tuple[str, int, str]] = []  # (kind, size of group, description)
    for alpha, rs in by_alpha.items():
        classes: list[list[CellResult]] = []
        embs = {}
        for res in rs:
            _, emb = invariant_algebra_with_embedding(base, res.cell)
            embs[res.cell] = emb
            for cls_ in classes:
                ref = cls_[0]
                if ref.factors == res.factors and _same_subspace(embs[ref.cell], emb):
                    cls_.append(res)
                    break
            else:
                classes.append([res])
        for cls_ in classes:
            if len(cls_) < 2:
                continue
            labels = ", ".join(c.cell.irrep.label() for c in cls_)
            for j, f in enumerate(cls_[0].factors, start=1):
                groups.append((f.kind, len(cls_), f"alpha={alpha} factor {j} {f} across irreps {labels}"))

    kinds = Counter(f.kind for res in results for f in res.factors)
    r = kinds["R"] + kinds["H"]
    d = kinds["C"]
    need = r + 2 * d - rank_c
    notes = []
    if need < 0:
        notes.append(f"naive weighted count {r + 2 * d} is below the rank over C {rank_c}")
        return Identification(None, None, None, True, None, tuple(groups), tuple(notes))

    # reduction -> {(C merges, removed kinds)}
    states: dict[int, set[tuple[int, tuple[tuple[str, int], ...]]]] = {0: {(0, ())}}
    for kind, size, _ in groups:
        weight = 2 if kind == "C" else 1
        nxt: dict[int, set] = {}
        for red, opts in states.items():
            for c_merges, removed in opts:
                for x in range(size):
                    nr = red + weight * x
                    if nr > need:
                        break
                    rem = Counter(dict(removed))
                    if x:
                        rem[kind] += x
                    nxt.setdefault(nr, set()).add(
                        (c_merges + (x if kind == "C" else 0), tuple(sorted(rem.items())))
                    )
        states = nxt
    final = states.get(need)
    if not final:
        notes.append(f"no identification brings {r + 2 * d} down to the rank over C {rank_c}")
        return Identification(None, None, None, True, None, tuple(groups), tuple(notes))
    best = min(c for c, _ in final)
    outcomes = {removed for c, removed in final if c == best}
    d_cons = d - best
    rank_cons = rank_c - d_cons
    surviving = None
    if len(outcomes) == 1:
        removed = dict(next(iter(outcomes)))
        surviving = {k: kinds[k] - removed.get(k, 0) for k in ("R", "C", "H") if kinds[k] - removed.get(k, 0)}
    merged = r + d - rank_cons
    if merged:
        notes.append(
            f"{r + d} naive blocks against rank {rank_c} over C: {merged} block(s) identified across cells"
        )
    if len(outcomes) > 1:
        notes.append(f"{len(outcomes)} optimal identifications leave different endomorphism multisets")
    return Identification(
        rank_cons, rank_cons - d_cons, d_cons, len(outcomes) > 1, surviving, tuple(groups), tuple(notes)
    )


# -- report -----------------------------------------------------------------


@dataclass(frozen=True)
class CollectionReport:
    degree: int
    cls: int
    n: int
    cells: tuple[CellResult, ...]
    r: int
    d: int
    rank_real_naive: int
    rank_complex: int
    rank_consistent: int | None
    d_consistent: int | None
    dedup_ambiguous: bool
    consistent_end_multiset: dict[str, int] | None
    rdim: int
    motive: Motive
    notes: tuple[str, ...] = field(default=())

    @property
    def blocks(self) -> list[Block]:
        return [b for res in self.cells for b in res.blocks()]

    @property
    def end_kinds(self) -> list[str]:
        return [b.end_type for b in self.blocks]


def _check_limits(degree: int, n: int, max_n: int, max_degree: int) -> None:
    if n < 1:
        raise InvalidDescriptor("n must be at least 1")
    if n > max_n:
        raise InvalidDescriptor(f"n = {n} exceeds the configured cap {max_n}")
    if degree > max_degree:
        raise InvalidDescriptor(f"degree {degree} exceeds the configured cap {max_degree}")


def _decompose_job(args):
    base, cell, seed, cross_check = args
    return _decompose(base, cell, seed, cross_check)


def build_report(
    degree: int,
    cls: BrauerClass | int,
    n: int,
    *,
    seed: int = 0,
    jobs: int = 1,
    cross_check: bool = True,
    max_n: int = MAX_N,
    max_degree: int = MAX_DEGREE,
) -> CollectionReport:
    if isinstance(cls, int):
        cls = BrauerClass(cls)
    _check_limits(degree, n, max_n, max_degree)
    base = base_collection(degree, cls)
    cells = enumerate_cells(n, len(base))
    work = [(base, c, seed, cross_check) for c in cells]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_decompose_job, work))
    else:
        results = [_decompose_job(w) for w in work]
    # assembly is independent of completion order
    results.sort(key=lambda res: cells.index(res.cell))

    kinds = [f.kind for res in results for f in res.factors]
    r = sum(1 for k in kinds if k in ("R", "H"))
    d = sum(1 for k in kinds if k == "C")
    rank_c = complex_rank(n, len(base))
    ident = identify_blocks(base, results, rank_c)
    for note in ident.notes:
        log.info("degree=%d class=%d n=%d: %s", degree, cls.value, n, note)
    motive = Motive([1 if k == "H" else 0 for k in kinds if k in ("R", "H")])
    return CollectionReport(
        degree=degree,
        cls=cls.value,
        n=n,
        cells=tuple(results),
        r=r,
        d=d,
        rank_real_naive=len(kinds),
        rank_complex=rank_c,
        rank_consistent=ident.rank_consistent,
        d_consistent=ident.d_consistent,
        dedup_ambiguous=ident.ambiguous,
        consistent_end_multiset=ident.end_multiset,
        rdim=rdim_of_factors(kinds),
        motive=motive,
        notes=ident.notes,
    )
