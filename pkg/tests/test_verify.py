import json

import pytest

from sodkit.brauer import HAMILTON, SPLIT, CsaDescriptor
from sodkit.errors import InvalidDescriptor
from sodkit.verify import (
    DEFAULT_REGISTRY,
    REMARK,
    THEOREM,
    ReportCache,
    check_motive_monotone,
    check_nonsplit_conic,
    check_point_forces_rdim0,
    check_rdim_point_equivalence,
    check_split_cubic_remark,
    check_sym2_counterexample,
    check_sym3_criterion,
    run_sweep,
)


@pytest.fixture(scope="module")
def cache():
    return ReportCache()


class TestPointForcesRdim0:
    def test_inconsistent_input(self):
        v = check_point_forces_rdim0([CsaDescriptor(2, HAMILTON)], True)
        assert not v.holds and v.conclusion == "inconsistent input" and v.notes

    def test_split(self):
        v = check_point_forces_rdim0([CsaDescriptor(3), CsaDescriptor(3)], True)
        assert v.holds and v.conclusion == "rdim 0"

    def test_no_point(self):
        v = check_point_forces_rdim0([CsaDescriptor(2, HAMILTON)], False)
        assert v.holds and v.conclusion == "no conclusion"

    def test_empty(self):
        with pytest.raises(InvalidDescriptor):
            check_point_forces_rdim0([], True)


@pytest.mark.parametrize("degree,cls", [(2, HAMILTON), (3, SPLIT), (4, HAMILTON)])
def test_rdim_point_equivalence(degree, cls, cache):
    v = check_rdim_point_equivalence(degree, cls, cache=cache)
    assert v.holds and v.level == THEOREM
    expected = 0 if cls == SPLIT else 1
    assert [row["rdim"] for row in v.witness["reports"]] == [expected] * 3


@pytest.mark.parametrize("degree,cls,point", [(4, HAMILTON, False), (5, SPLIT, True), (6, HAMILTON, False)])
def test_sym3(degree, cls, point, cache):
    v = check_sym3_criterion(degree, cls, cache=cache)
    assert v.holds and v.witness["sym3_point"] is point
    assert v.witness["rdim"] == (0 if point else 1)


def test_sym3_needs_degree_above_three():
    with pytest.raises(InvalidDescriptor):
        check_sym3_criterion(3, SPLIT)


def test_nonsplit_conic(cache):
    v = check_nonsplit_conic(cache=cache)
    assert v.holds
    assert all(row["rdim"] == 1 and row["h_block"] for row in v.witness["reports"])
    assert v.witness["reports"][1]["h_block"]["alpha"] == [0, 1]
    assert v.witness["split_control_rdim"] == 0


@pytest.mark.parametrize("degree", [2, 3])
def test_split_cubic_remark_records_finding(degree, cache):
    v = check_split_cubic_remark(degree, cache=cache)
    assert v.level == REMARK and v.holds
    assert "C" not in v.witness["end_multiset"]
    assert any("disagrees" in note for note in v.notes)


def test_split_control(cache):
    v = check_split_cubic_remark(2, 2, cache=cache)
    assert v.witness["end_multiset"] == {"R": 5}


def test_sym2(cache):
    assert check_sym2_counterexample(2, HAMILTON, cache=cache).holds
    control = check_sym2_counterexample(2, SPLIT, cache=cache)
    assert control.holds and control.witness["rdim"] == 0
    assert check_sym2_counterexample(4, HAMILTON).conclusion == "not applicable"


def test_motive_monotone(cache):
    assert check_motive_monotone(3, SPLIT, 2, cache=cache).witness["iso_to_trivial"]
    assert not check_motive_monotone(2, HAMILTON, 2, cache=cache).witness["iso_to_trivial"]


def test_rejected_axiom_fails_dependents():
    reg = DEFAULT_REGISTRY.rejecting("rdim-quaternion")
    assert not check_nonsplit_conic(1, registry=reg).holds
    assert check_point_forces_rdim0([CsaDescriptor(3)], True, registry=reg).holds


def test_registry_is_immutable():
    with pytest.raises(TypeError):
        DEFAULT_REGISTRY.axioms["extra"] = None
    with pytest.raises(InvalidDescriptor):
        DEFAULT_REGISTRY.rejecting("no-such-axiom")


def test_small_sweep_is_reproducible():
    a = run_sweep(max_n=2)
    b = run_sweep(max_n=2)
    assert a.theorem_level_ok
    dump = lambda r: json.dumps([v.to_dict() for v in r.verdicts], sort_keys=False)
    assert dump(a) == dump(b)
    assert any(s.startswith("sym3") for s in a.skipped)
