import json
from collections import Counter

import pytest

from sodkit.brauer import HAMILTON, SPLIT, BrauerClass
from sodkit.collection import (
    Cell,
    base_collection,
    build_report,
    complex_rank,
    decompose_cell,
    enumerate_cells,
    invariant_algebra,
    rdim_of_factors,
)
from sodkit.errors import InvalidDescriptor
from sodkit.serialize import dumps, render_table, report_from_dict, report_to_dict
from sodkit.symrep import IrrepDescriptor, nondecreasing_indices, partitions, stabilizer


def cell(alpha, parts):
    return Cell(alpha, stabilizer(alpha), IrrepDescriptor(parts))


class TestBase:
    def test_conic(self):
        assert [(b.label, b.end_algebra) for b in base_collection(2, HAMILTON)] == [("O", "Q"), ("V1", "H_Q")]

    def test_split(self):
        assert [b.label for b in base_collection(3, SPLIT)] == ["O", "O(1)", "O(2)"]
        assert all(b.end_algebra == "Q" for b in base_collection(3, SPLIT))

    def test_degree_four(self):
        assert [b.end_algebra for b in base_collection(4, HAMILTON)] == ["Q", "H_Q", "Q", "H_Q"]
        assert base_collection(4, HAMILTON)[3].label == "V1(x)O(2)"

    def test_odd_nonsplit(self):
        with pytest.raises(InvalidDescriptor):
            base_collection(3, HAMILTON)


class TestCells:
    def test_counts(self):
        assert len(enumerate_cells(1, 2)) == 2
        cells = enumerate_cells(2, 2)
        assert [(c.alpha, c.irrep.partitions) for c in cells] == [
            ((0, 0), ((2,),)),
            ((0, 0), ((1, 1),)),
            ((0, 1), ((1,), (1,))),
            ((1, 1), ((2,),)),
            ((1, 1), ((1, 1),)),
        ]
        assert len(enumerate_cells(3, 2)) == 10

    @pytest.mark.parametrize("n", [1, 2, 3])
    @pytest.mark.parametrize("size", [1, 2, 3, 4, 5, 6])
    def test_count_identity(self, n, size):
        expected = 0
        for alpha in nondecreasing_indices(n, size):
            prod = 1
            for m in stabilizer(alpha).multiplicities:
                prod *= len(partitions(m))
            expected += prod
        assert len(enumerate_cells(n, size)) == expected == complex_rank(n, size)

    def test_complex_rank(self):
        assert complex_rank(2, 2) == 5
        assert complex_rank(3, 2) == 10
        assert complex_rank(1, 7) == 7


class TestInvariantAlgebra:
    def test_conic_square_diagonal(self):
        alg = invariant_algebra(base_collection(2, HAMILTON), cell((1, 1), ((2,),)))
        assert alg.dim == 10

    def test_trivial_stabilizer(self):
        alg = invariant_algebra(base_collection(2, HAMILTON), cell((0, 1), ((1,), (1,))))
        assert alg.dim == 4

    def test_split_standard_rep(self):
        alg = invariant_algebra(base_collection(3, SPLIT), cell((0, 0, 0), ((2, 1),)))
        assert alg.dim == 1

    def test_out_of_range(self):
        with pytest.raises(InvalidDescriptor):
            invariant_algebra(base_collection(2, SPLIT), cell((0, 2), ((1,), (1,))))


class TestDecompose:
    def test_examples(self):
        base = base_collection(2, HAMILTON)
        blocks = decompose_cell(base, cell((1, 1), ((2,),)))
        assert [(b.end_type, b.multiplicity) for b in blocks] == [("R", 1), ("R", 3)]
        blocks = decompose_cell(base, cell((0, 1), ((1,), (1,))))
        assert [(b.end_type, b.multiplicity) for b in blocks] == [("H", 1)]

    @pytest.mark.parametrize("degree,cls", [(2, HAMILTON), (3, SPLIT), (4, HAMILTON)])
    def test_dimension_conservation(self, degree, cls):
        rep = build_report(degree, cls, 2)
        for res in rep.cells:
            assert sum(b.multiplicity**2 * b.division_dim for b in res.blocks()) == res.algebra_dim


class TestReports:
    def test_conic_n1(self):
        rep = build_report(2, HAMILTON, 1)
        assert rep.end_kinds == ["R", "H"] and rep.rdim == 1 and rep.rank_complex == 2

    def test_split_n1(self):
        rep = build_report(3, SPLIT, 1)
        assert rep.end_kinds == ["R", "R", "R"] and rep.rdim == 0

    def test_conic_n2(self):
        rep = build_report(2, HAMILTON, 2)
        assert Counter(rep.end_kinds) == {"R": 6, "H": 1}
        assert rep.rank_real_naive == 7 and rep.rank_complex == 5
        assert rep.rank_consistent == 5 and rep.d == 0 and rep.d_consistent == 0
        assert rep.consistent_end_multiset == {"R": 4, "H": 1}
        assert not rep.dedup_ambiguous and rep.rdim == 1
        assert any("identified" in note for note in rep.notes)

    @pytest.mark.parametrize("degree", [2, 3, 4, 5])
    def test_split_purity(self, degree):
        for n in (1, 2, 3):
            rep = build_report(degree, SPLIT, n)
            assert "H" not in rep.end_kinds and rep.rdim == 0

    @pytest.mark.parametrize("degree", [2, 4])
    def test_trivial_stabilizer_witness(self, degree):
        base = base_collection(degree, HAMILTON)
        for alpha in ((0, 1), (0, 1, 2)):
            parts = tuple((1,) for _ in alpha)
            if max(alpha) >= len(base):
                continue
            blocks = decompose_cell(base, cell(alpha, parts))
            # tags Q, H (, Q): the tensor is H, so exactly one quaternionic block
            assert [b.end_type for b in blocks] == ["H"]

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_nonsplit_always_has_h(self, n):
        for degree in (2, 4):
            assert "H" in build_report(degree, HAMILTON, n).end_kinds

    def test_rank_constraint(self):
        for degree, cls in [(2, HAMILTON), (4, HAMILTON), (3, SPLIT)]:
            for n in (1, 2, 3):
                rep = build_report(degree, cls, n)
                assert rep.rank_real_naive >= (rep.rank_consistent or 0)
                if not rep.dedup_ambiguous:
                    r_cons = rep.rank_consistent - rep.d_consistent
                    assert r_cons + 2 * rep.d_consistent == rep.rank_complex

    def test_ambiguity_flagged(self):
        rep = build_report(4, HAMILTON, 3)
        assert rep.dedup_ambiguous and rep.consistent_end_multiset is None
        assert rep.rdim == 1

    def test_caps(self):
        with pytest.raises(InvalidDescriptor):
            build_report(2, SPLIT, 5)
        with pytest.raises(InvalidDescriptor):
            build_report(8, SPLIT, 1)

    def test_int_class(self):
        assert build_report(2, 1, 1) == build_report(2, HAMILTON, 1)


class TestSerialization:
    @pytest.mark.parametrize("args", [(2, HAMILTON, 1), (2, HAMILTON, 2), (3, SPLIT, 2), (4, HAMILTON, 3)])
    def test_round_trip(self, args):
        rep = build_report(*args)
        text = dumps(report_to_dict(rep))
        assert report_from_dict(json.loads(text)) == rep
        assert dumps(report_to_dict(report_from_dict(json.loads(text)))) == text

    def test_table_one_row_per_block(self):
        rep = build_report(2, HAMILTON, 2)
        lines = render_table(rep).splitlines()
        assert len([ln for ln in lines[2:] if ln and ln[0].isdigit()]) == rep.rank_real_naive

    def test_parallel_is_deterministic(self):
        serial = report_to_dict(build_report(2, HAMILTON, 3, seed=1))
        parallel = report_to_dict(build_report(2, HAMILTON, 3, seed=1, jobs=2))
        assert dumps(serial) == dumps(parallel)


def test_rdim_of_factors():
    assert rdim_of_factors(["R", "R", "C"]) == 0
    assert rdim_of_factors(["R", "H"]) == 1
    assert rdim_of_factors(["C"]) == 0
    with pytest.raises(ValueError):
        rdim_of_factors([])


def test_brauer_class_value_is_reported():
    assert report_to_dict(build_report(2, BrauerClass(1), 1))["input"]["class"] == 1
