"""Multi-indices under S_n and rational irreducibles of Young subgroups."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from itertools import permutations, product
from math import factorial, prod
from typing import Sequence

from .errors import DimensionError, InvalidDescriptor
from .linalg import Echelon, RatMatrix

MultiIndex = tuple[int, ...]
Partition = tuple[int, ...]


def nd(alpha: Sequence[int]) -> MultiIndex:
    """Non-decreasing representative of the S_n-orbit of ``alpha``."""
    return tuple(sorted(alpha))


def act(sigma: Sequence[int], alpha: Sequence[int]) -> MultiIndex:
    """Permute positions: (sigma . alpha)_{sigma(i)} = alpha_i."""
    out = [0] * len(alpha)
    for i, a in enumerate(alpha):
        out[sigma[i]] = a
    return tuple(out)


def compare(alpha: Sequence[int], beta: Sequence[int]) -> int:
    """Total order used to arrange the collection: -1 if alpha comes first.

    First by the non-decreasing representatives, then lexicographically.
    """
    if len(alpha) != len(beta):
        raise DimensionError("multi-indices of different length")
    ka = (nd(alpha), tuple(alpha))
    kb = (nd(beta), tuple(beta))
    return (ka > kb) - (ka < kb)


def order_key(alpha: Sequence[int]) -> tuple[MultiIndex, MultiIndex]:
    return nd(alpha), tuple(alpha)


def nondecreasing_indices(n: int, size: int) -> list[MultiIndex]:
    """All non-decreasing alpha in {0..size-1}^n, in lexicographic order."""
    out: list[MultiIndex] = []

    def rec(prefix: list[int], lo: int):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for v in range(lo, size):
            prefix.append(v)
            rec(prefix, v)
            prefix.pop()

    rec([], 0)
    return out


@dataclass(frozen=True)
class YoungSubgroup:
    """prod_v S_{m_v}, acting on the consecutive runs of equal values of nd(alpha)."""

    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.blocks or any(m < 1 for _, m in self.blocks):
            raise InvalidDescriptor("blocks need positive multiplicities")

    @property
    def n(self) -> int:
        return sum(m for _, m in self.blocks)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.blocks)

    @property
    def order(self) -> int:
        return prod(factorial(m) for m in self.multiplicities)

    def runs(self) -> list[tuple[int, int]]:
        """(start position, length) of each block."""
        out = []
        pos = 0
        for _, m in self.blocks:
            out.append((pos, m))
            pos += m
        return out

    def generators(self) -> list[tuple[int, int]]:
        """Adjacent transpositions (p, p+1) inside each block, absolute positions."""
        gens = []
        for start, m in self.runs():
            gens.extend((start + i, start + i + 1) for i in range(m - 1))
        return gens

    def is_trivial(self) -> bool:
        return self.order == 1

    def __str__(self) -> str:
        if self.is_trivial():
            return "1"
        return " x ".join(f"S_{m}" for m in self.multiplicities)


def stabilizer(alpha: Sequence[int]) -> YoungSubgroup:
    alpha = tuple(alpha)
    if not alpha:
        raise DimensionError("empty multi-index")
    if list(alpha) != sorted(alpha):
        raise InvalidDescriptor(f"{alpha} is not non-decreasing")
    blocks: list[list[int]] = []
    for v in alpha:
        if blocks and blocks[-1][0] == v:
            blocks[-1][1] += 1
        else:
            blocks.append([v, 1])
    return YoungSubgroup(tuple((v, m) for v, m in blocks))


def orbit_size(alpha: Sequence[int]) -> int:
    return len(set(permutations(alpha)))


# -- partitions ---------------------------------------------------------------


@cache
def partitions(m: int) -> tuple[Partition, ...]:
    """Partitions of m, largest first in lexicographic order."""
    if m == 0:
        return ((),)

    def rec(rest: int, cap: int):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first):
                yield (first,) + tail

    return tuple(rec(m, m))


def is_partition(lam: Sequence[int]) -> bool:
    return all(p > 0 for p in lam) and all(a >= b for a, b in zip(lam, lam[1:]))


def hook_dimension(lam: Partition) -> int:
    """Dimension of the Specht module S^lam by the hook-length formula."""
    m = sum(lam)
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    return factorial(m) // hooks


@dataclass(frozen=True)
class IrrepDescriptor:
    """One partition per block of a Young subgroup; the outer tensor product."""

    partitions: tuple[Partition, ...]

    def __post_init__(self):
        if not all(is_partition(p) and p for p in self.partitions):
            raise InvalidDescriptor(f"invalid partition tuple {self.partitions}")

    @property
    def dimension(self) -> int:
        return prod(hook_dimension(p) for p in self.partitions)

    def fits(self, group: YoungSubgroup) -> bool:
        return tuple(sum(p) for p in self.partitions) == group.multiplicities

    def label(self) -> str:
        return " x ".join("(" + ",".join(map(str, p)) + ")" for p in self.partitions)


def real_irreps(group: YoungSubgroup) -> list[IrrepDescriptor]:
    """Rational irreducibles of the Young subgroup, canonical order."""
    return [IrrepDescriptor(tup) for tup in product(*(partitions(m) for m in group.multiplicities))]


def _partition_count(m: int) -> int:
    # Euler's pentagonal recurrence; kept separate from the enumeration above
    p = [1] + [0] * m
    for k in range(1, m + 1):
        total = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > k:
                break
            sign = 1 if j % 2 else -1
            total += sign * p[k - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= k:
                total += sign * p[k - g2]
            j += 1
        p[k] = total
    return p[m]


def complex_irrep_count(group: YoungSubgroup) -> int:
    """Number of complex irreducibles: number of conjugacy classes, i.e. partition tuples."""
    return prod(_partition_count(m) for m in group.multiplicities)


# -- Young's natural representation -----------------------------------------


def standard_tableaux(lam: Partition) -> list[tuple[tuple[int, ...], ...]]:
    """Standard Young tableaux of shape lam filled with 0..m-1, in a fixed order."""
    m = sum(lam)
    out = []

    def rec(rows: list[list[int]], k: int):
        if k == m:
            out.append(tuple(tuple(r) for r in rows))
            return
        for i, target in enumerate(lam):
            row = rows[i]
            if len(row) < target and (i == 0 or len(rows[i - 1]) > len(row)):
                row.append(k)
                rec(rows, k + 1)
                row.pop()

    rec([[] for _ in lam], 0)
    return out


def _tabloid(tableau) -> tuple[frozenset, ...]:
    return tuple(frozenset(r) for r in tableau)


def _polytabloid(tableau) -> dict[tuple[frozenset, ...], int]:
    cols: list[list[int]] = []
    for r in tableau:
        for j, x in enumerate(r):
            if j == len(cols):
                cols.append([])
            cols[j].append(x)
    vec: dict = {}
    for perms in product(*(list(permutations(c)) for c in cols)):
        mapping = {}
        sign = 1
        for c, pc in zip(cols, perms):
            mapping.update(zip(c, pc))
            sign *= _perm_sign([c.index(x) for x in pc])
        t = _tabloid(tuple(tuple(mapping[x] for x in r) for r in tableau))
        vec[t] = vec.get(t, 0) + sign
    return {k: v for k, v in vec.items() if v}


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if not seen[i]:
            j = i
            length = 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


@cache
def specht_matrices(lam: Partition) -> tuple[RatMatrix, ...]:
    """Matrices of s_i = (i, i+1), i = 0..m-2, in Young's natural representation.

    Basis: standard polytabloids e_T; column j holds the coordinates of
    s_i . e_{T_j} = e_{s_i T_j} after straightening.
    """
    m = sum(lam)
    tabs = standard_tableaux(lam)
    polys = [_polytabloid(t) for t in tabs]
    index: dict = {}
    for v in polys:
        for key in v:
            index.setdefault(key, len(index))
    dim = len(tabs)
    # rows [coords | marker] so that reduction recovers the combination
    ech = Echelon(len(index) + dim)
    for j, v in enumerate(polys):
        row = {index[k]: Fraction(c) for k, c in v.items()}
        row[len(index) + j] = Fraction(1)
        ech.add(row)

    def solve(vec: dict) -> dict[int, Fraction]:
        row = {}
        for k, c in vec.items():
            if k not in index:
                raise InvalidDescriptor("tabloid outside the span of standard polytabloids")
            row[index[k]] = Fraction(c)
        red = ech.reduce(row)
        if any(j < len(index) for j in red):
            raise InvalidDescriptor("polytabloid not in the Specht module span")
        return {j - len(index): -v for j, v in red.items()}

    mats = []
    for i in range(m - 1):
        swap = {x: x for x in range(m)}
        swap[i], swap[i + 1] = i + 1, i
        cols = []
        for t in tabs:
            moved = tuple(tuple(swap[x] for x in r) for r in t)
            cols.append(solve(_polytabloid(moved)))
        mats.append(RatMatrix.from_columns(dim, cols))
    return tuple(mats)


def irrep_matrices(group: YoungSubgroup, rho: IrrepDescriptor) -> dict[tuple[int, int], RatMatrix]:
    """Generator -> matrix for the outer tensor product of Specht modules.

    Generators are the adjacent transpositions of :meth:`YoungSubgroup.generators`.
    The Coxeter relations are checked before returning.
    """
    if not rho.fits(group):
        raise InvalidDescriptor(f"{rho.label()} is not an irrep of {group}")
    dims = [hook_dimension(p) for p in rho.partitions]
    out: dict[tuple[int, int], RatMatrix] = {}
    for b, ((start, m), lam) in enumerate(zip(group.runs(), rho.partitions)):
        local = specht_matrices(lam)
        for i, s in enumerate(local):
            mat = RatMatrix.identity(1)
            for c, d in enumerate(dims):
                mat = mat.kron(s if c == b else RatMatrix.identity(d))
            out[(start + i, start + i + 1)] = mat
    _check_coxeter(out, rho.dimension)
    return out


def _check_coxeter(mats: dict[tuple[int, int], RatMatrix], dim: int) -> None:
    eye = RatMatrix.identity(dim)
    keys = sorted(mats)
    for k in keys:
        if mats[k] @ mats[k] != eye:
            raise InvalidDescriptor(f"generator {k} is not an involution")
    for a in keys:
        for b in keys:
            if a >= b:
                continue
            sa, sb = mats[a], mats[b]
            if a[1] == b[0]:
                if sa @ sb @ sa != sb @ sa @ sb:
                    raise InvalidDescriptor(f"braid relation fails for {a}, {b}")
            elif sa @ sb != sb @ sa:
                raise InvalidDescriptor(f"generators {a}, {b} do not commute")
