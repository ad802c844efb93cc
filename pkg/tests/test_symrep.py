import itertools
import random
from math import factorial

import pytest

from sodkit.errors import DimensionError, InvalidDescriptor
from sodkit.linalg import RatMatrix
from sodkit.symrep import (
    IrrepDescriptor,
    YoungSubgroup,
    _partition_count,
    act,
    compare,
    complex_irrep_count,
    hook_dimension,
    irrep_matrices,
    nd,
    nondecreasing_indices,
    orbit_size,
    partitions,
    real_irreps,
    specht_matrices,
    stabilizer,
)


def test_nd_examples():
    assert nd((2, 0, 1)) == (0, 1, 2)
    assert nd((1, 1)) == (1, 1)
    assert nd((3, 3, 0, 3)) == (0, 3, 3, 3)


def test_nd_invariance():
    rng = random.Random(100)
    for _ in range(100):
        n = rng.randint(1, 6)
        alpha = tuple(rng.randrange(4) for _ in range(n))
        sigma = list(range(n))
        rng.shuffle(sigma)
        assert nd(nd(alpha)) == nd(alpha) == nd(act(sigma, alpha))


def test_compare_examples():
    assert compare((0, 1), (1, 0)) == -1
    assert compare((1, 1), (0, 2)) == 1
    assert compare((2, 1), (2, 1)) == 0
    with pytest.raises(DimensionError):
        compare((0,), (0, 1))


def test_compare_is_strict_total_order():
    cube = list(itertools.product(range(3), repeat=3))
    for a in cube:
        for b in cube:
            assert compare(a, b) == -compare(b, a)
            assert (compare(a, b) == 0) == (a == b)
            for c in cube:
                if compare(a, b) < 0 and compare(b, c) < 0:
                    assert compare(a, c) < 0


def test_stabilizer_examples():
    assert str(stabilizer((0, 0, 1))) == "S_2 x S_1"
    assert stabilizer((0, 1, 2)).is_trivial()
    assert str(stabilizer((1, 1, 1))) == "S_3"
    with pytest.raises(InvalidDescriptor):
        stabilizer((1, 0))


def test_orbit_stabilizer():
    for n in range(1, 5):
        for size in range(1, 5):
            for alpha in nondecreasing_indices(n, size):
                assert orbit_size(alpha) * stabilizer(alpha).order == factorial(n)


def test_real_irreps():
    s2 = YoungSubgroup(((0, 2),))
    assert [r.partitions for r in real_irreps(s2)] == [((2,),), ((1, 1),)]
    s3 = YoungSubgroup(((0, 3),))
    assert [r.dimension for r in real_irreps(s3)] == [1, 2, 1]
    assert len(real_irreps(YoungSubgroup(((0, 1), (1, 1))))) == 1


@pytest.mark.parametrize("mults", [(1,), (2,), (3,), (4,), (2, 1), (2, 2), (1, 3), (1, 1, 1), (2, 1, 1)])
def test_absolute_irreducibility_count(mults):
    h = YoungSubgroup(tuple(enumerate(mults)))
    assert sum(r.dimension**2 for r in real_irreps(h)) == h.order
    assert complex_irrep_count(h) == len(real_irreps(h))


def test_partition_counts():
    assert [_partition_count(m) for m in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert all(_partition_count(m) == len(partitions(m)) for m in range(12))


def test_complex_irrep_count_examples():
    assert complex_irrep_count(YoungSubgroup(((0, 3),))) == 3
    assert complex_irrep_count(YoungSubgroup(((0, 2), (1, 2)))) == 4
    assert complex_irrep_count(stabilizer((0, 1, 2))) == 1


def test_matrices_examples():
    s2 = YoungSubgroup(((0, 2),))
    sign = irrep_matrices(s2, IrrepDescriptor(((1, 1),)))
    assert sign == {(0, 1): RatMatrix([[-1]])}
    mats = irrep_matrices(YoungSubgroup(((0, 3),)), IrrepDescriptor(((2, 1),)))
    s1, s2_ = mats[(0, 1)], mats[(1, 2)]
    eye = RatMatrix.identity(2)
    assert s1 @ s1 == eye and s2_ @ s2_ == eye
    assert s1 @ s2_ @ s1 == s2_ @ s1 @ s2_
    triv = irrep_matrices(stabilizer((0, 0, 1)), IrrepDescriptor(((2,), (1,))))
    assert triv == {(0, 1): RatMatrix([[1]])}


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_hook_matches_matrix_dimension(m):
    for lam in partitions(m):
        mats = specht_matrices(lam)
        assert all(M.nrows == hook_dimension(lam) for M in mats)


def test_cross_block_commutation():
    h = YoungSubgroup(((0, 2), (1, 3)))
    for rho in real_irreps(h):
        mats = irrep_matrices(h, rho)
        assert mats[(0, 1)] @ mats[(2, 3)] == mats[(2, 3)] @ mats[(0, 1)]
        assert all(M.nrows == rho.dimension for M in mats.values())


def test_invalid_descriptor():
    with pytest.raises(InvalidDescriptor):
        IrrepDescriptor(((1, 2),))
    with pytest.raises(InvalidDescriptor):
        irrep_matrices(YoungSubgroup(((0, 3),)), IrrepDescriptor(((2,),)))
