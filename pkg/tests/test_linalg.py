import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sodkit.errors import DimensionError
from sodkit.linalg import Echelon, RatMatrix, format_q, kernel, minimal_polynomial, signature, to_q
from sodkit.poly import RatPoly, factor_over_q

small = st.integers(min_value=-4, max_value=4)


def matrices(rows=st.integers(1, 5), cols=st.integers(1, 5)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0])
    )


def companion(p: RatPoly) -> RatMatrix:
    n = p.degree
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = Fraction(1)
    for i in range(n):
        rows[i][n - 1] = -p.coeffs[i]
    return RatMatrix(rows)


class TestKernel:
    def test_identity_has_empty_kernel(self):
        assert kernel(RatMatrix.identity(3)) == []

    def test_zero_map(self):
        assert len(kernel(RatMatrix.zeros(2, 3))) == 3

    def test_rank_one(self):
        (v,) = kernel(RatMatrix([[1, 1], [2, 2]]))
        assert v[0] == -v[1] != 0

    @settings(max_examples=150, deadline=None)
    @given(matrices())
    def test_rank_nullity_and_annihilation(self, rows):
        m = RatMatrix(rows)
        ker = kernel(m)
        assert len(ker) == m.ncols - m.rank()
        for v in ker:
            assert all(x == 0 for x in m.apply(v))
        ech = Echelon(m.ncols)
        assert all(ech.add({i: x for i, x in enumerate(v) if x}) for v in ker)


class TestMatrix:
    def test_rationals_stay_in_lowest_terms(self):
        m = RatMatrix([["2/4", 3]])
        assert m[0, 0] == Fraction(1, 2)
        assert format_q(m[0, 0]) == "1/2"

    def test_to_q_rejects_floats(self):
        with pytest.raises(TypeError):
            to_q(0.5)

    @settings(max_examples=60, deadline=None)
    @given(matrices(st.just(3), st.just(3)))
    def test_inverse(self, rows):
        m = RatMatrix(rows)
        if m.is_invertible():
            assert m @ m.inverse() == RatMatrix.identity(3)

    def test_kron_shape(self):
        a = RatMatrix([[1, 2], [3, 4]])
        assert a.kron(RatMatrix.identity(3)).shape == (6, 6)


class TestMinimalPolynomial:
    def test_identity(self):
        assert minimal_polynomial(RatMatrix.identity(4)) == RatPoly([-1, 1])

    def test_companion(self):
        p = RatPoly([1, 0, 1])
        assert minimal_polynomial(companion(p)) == p

    def test_distinct_eigenvalues(self):
        assert minimal_polynomial(RatMatrix.diag([1, 1, 2])) == RatPoly([-1, 1]) * RatPoly([-2, 1])

    def test_non_square(self):
        with pytest.raises(DimensionError):
            minimal_polynomial(RatMatrix.zeros(2, 3))

    @settings(max_examples=80, deadline=None)
    @given(st.integers(1, 4).flatmap(lambda n: matrices(st.just(n), st.just(n))))
    def test_annihilates_and_minimal(self, rows):
        m = RatMatrix(rows)
        mu = minimal_polynomial(m)
        assert mu.lc == 1

        def evaluate(p):
            acc = RatMatrix.zeros(m.nrows, m.ncols)
            for c in reversed(p.coeffs):
                acc = acc @ m + RatMatrix.identity(m.nrows).scale(c)
            return acc

        assert evaluate(mu) == RatMatrix.zeros(m.nrows, m.ncols)
        # no proper divisor annihilates
        for f, _ in factor_over_q(mu):
            assert evaluate(mu // f) != RatMatrix.zeros(m.nrows, m.ncols)


class TestSignature:
    def test_identity(self):
        assert signature(RatMatrix.identity(4)) == (4, 0, 0)

    def test_mixed(self):
        assert signature(RatMatrix.diag([1, -1, 0])) == (1, 1, 1)

    def test_zero_diagonal(self):
        assert signature(RatMatrix([[0, 1], [1, 0]])) == (1, 1, 0)

    def test_asymmetric(self):
        with pytest.raises(DimensionError):
            signature(RatMatrix([[0, 1], [0, 0]]))

    def test_congruence_invariance(self):
        rng = random.Random(0)
        for _ in range(60):
            n = rng.randint(1, 5)
            a = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
            m = RatMatrix(a) + RatMatrix(a).T
            p = RatMatrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
            if not p.is_invertible():
                continue
            assert signature(p.T @ m @ p) == signature(m)
