"""Claim-level checks of the rdim and rational-point criteria against engine output.

Geometric inputs that the engine cannot compute (Lang-Nishimura, a few
birationality statements, Ext vanishing) live in an :class:`AxiomRegistry`.
Every verdict lists the axioms it rests on; a registry that rejects one of
them makes the dependent verdicts fail, which is how the harness is
self-tested.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .brauer import BrauerClass, BsDescriptor, CsaDescriptor, Motive, index, motive_iso, sym_power_has_point
from .collection import CollectionReport, build_report
from .errors import InvalidDescriptor

THEOREM = "theorem"
REMARK = "remark"


@dataclass(frozen=True)
class Axiom:
    name: str
    statement: str
    source: str


_AXIOMS = (
    Axiom(
        "lang-nishimura",
        "a rational map Y --> Z of varieties over R with Z proper and Y smooth carries real points of Y to real points of Z",
        "Lang-Nishimura lemma",
    ),
    Axiom(
        "bs-point-iff-split",
        "BS(A) has a real point iff A is split",
        "Chatelet; classical theory of Brauer-Severi varieties",
    ),
    Axiom(
        "gbs-point-iff-index-divides",
        "the variety X_l of rank-l right ideals of A has a real point iff ind(A) divides l",
        "Knus-Merkurjev-Rost-Tignol, The Book of Involutions",
    ),
    Axiom(
        "sym-power-birational",
        "S^l(BS(A)) is birational to X_l x P^{l(l-1)}",
        "Krashen-Saltman, Severi-Brauer varieties and symmetric powers",
    ),
    Axiom(
        "conic-square-rational",
        "for a conic C, S^2(C) is birational to P^2, hence has a real point",
        "classical; the symmetric square of a conic",
    ),
    Axiom(
        "ext-vanishing",
        "the inflated equivariant bundles satisfy the Ext vanishing of a weak exceptional collection",
        "equivariant descent of exceptional collections",
    ),
    Axiom(
        "rdim-real-complex",
        "rdim D^b(R) = rdim D^b(C) = 0",
        "representability of derived categories of points",
    ),
    Axiom(
        "rdim-quaternion",
        "a block with endomorphisms H forces rdim 1",
        "representability of D^b(H) via the conic it splits",
    ),
)


class AxiomRegistry:
    """Immutable set of named facts, each accepted or rejected."""

    __slots__ = ("_axioms", "_accepted")

    def __init__(self, axioms: Iterable[Axiom], rejected: Iterable[str] = ()):
        table = {a.name: a for a in axioms}
        rejected = set(rejected)
        unknown = rejected - table.keys()
        if unknown:
            raise InvalidDescriptor(f"unknown axioms {sorted(unknown)}")
        self._axioms = MappingProxyType(table)
        self._accepted = frozenset(table.keys() - rejected)

    @classmethod
    def default(cls) -> "AxiomRegistry":
        return cls(_AXIOMS)

    def rejecting(self, *names: str) -> "AxiomRegistry":
        """Copy with ``names`` rejected; used to check that verdicts depend on them."""
        return AxiomRegistry(self._axioms.values(), set(self._axioms) - self._accepted | set(names))

    @property
    def axioms(self) -> Mapping[str, Axiom]:
        return self._axioms

    def accepts(self, name: str) -> bool:
        if name not in self._axioms:
            raise KeyError(name)
        return name in self._accepted

    def missing(self, names: Iterable[str]) -> list[str]:
        return [n for n in names if not self.accepts(n)]


DEFAULT_REGISTRY = AxiomRegistry.default()


@dataclass(frozen=True)
class Verdict:
    claim: str
    level: str
    inputs: dict
    holds: bool
    conclusion: str
    witness: dict = field(default_factory=dict)
    axioms: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "level": self.level,
            "inputs": self.inputs,
            "holds": self.holds,
            "conclusion": self.conclusion,
            "witness": self.witness,
            "axioms": list(self.axioms),
            "notes": list(self.notes),
        }


def _verdict(claim, level, inputs, holds, conclusion, witness, axioms, registry, notes=()) -> Verdict:
    notes = list(notes)
    rejected = registry.missing(axioms)
    if rejected:
        holds = False
        notes.append(f"rests on rejected axiom(s): {', '.join(rejected)}")
    return Verdict(claim, level, inputs, holds, conclusion, witness, tuple(axioms), tuple(notes))


def _class_name(cls: BrauerClass) -> str:
    return cls.name


def _h_witness(rep: CollectionReport) -> dict | None:
    for b in rep.blocks:
        if b.end_type == "H":
            return {"alpha": list(b.source.alpha), "irrep": b.source.irrep.label(), "factor": b.factor_index}
    return None


class ReportCache:
    """Memo of collection reports shared between checks of one sweep."""

    def __init__(self, seed: int = 0, jobs: int = 1):
        self.seed = seed
        self.jobs = jobs
        self._reports: dict[tuple[int, int, int], CollectionReport] = {}

    def get(self, degree: int, cls: BrauerClass, n: int) -> CollectionReport:
        key = (degree, cls.value, n)
        if key not in self._reports:
            self._reports[key] = build_report(degree, cls, n, seed=self.seed, jobs=self.jobs)
        return self._reports[key]


# -- individual claims ----------------------------------------------------------


def check_point_forces_rdim0(
    ends: Sequence[CsaDescriptor], has_point: bool, registry: AxiomRegistry = DEFAULT_REGISTRY
) -> Verdict:
    """A real point forces every End algebra of a pure collection to split, hence rdim 0."""
    if not ends:
        raise InvalidDescriptor("need at least one endomorphism algebra")
    inputs = {"ends": [[a.degree, a.cls.value] for a in ends], "has_point": has_point}
    witness = {"nonsplit_ends": [i for i, a in enumerate(ends) if not a.split]}
    if not has_point:
        return _verdict("point-forces-rdim0", THEOREM, inputs, True, "no conclusion", witness, (), registry)
    axioms = ("lang-nishimura", "bs-point-iff-split", "rdim-real-complex")
    if witness["nonsplit_ends"]:
        return _verdict(
            "point-forces-rdim0", THEOREM, inputs, False, "inconsistent input", witness, axioms, registry,
            notes=("a real point would give points on BS(End V), forcing every End algebra to split",),
        )
    return _verdict("point-forces-rdim0", THEOREM, inputs, True, "rdim 0", witness, axioms, registry)


def check_rdim_point_equivalence(
    degree: int, cls: BrauerClass, max_n: int = 3, *, registry: AxiomRegistry = DEFAULT_REGISTRY, cache: ReportCache | None = None
) -> Verdict:
    """rdim of the equivariant category is 0 iff A is split iff X has a real point, for n <= max_n."""
    cache = cache or ReportCache()
    a = CsaDescriptor(degree, cls)
    point = BsDescriptor(a).has_point
    per_n = []
    ok = True
    for n in range(1, max_n + 1):
        rep = cache.get(degree, cls, n)
        row = {"n": n, "rdim": rep.rdim, "h_block": _h_witness(rep)}
        per_n.append(row)
        ok &= (rep.rdim == 0) == a.split == point
    inputs = {"degree": degree, "class": _class_name(cls), "max_n": max_n}
    witness = {"split": a.split, "has_point": point, "reports": per_n}
    axioms = ("bs-point-iff-split", "ext-vanishing", "rdim-real-complex", "rdim-quaternion")
    conclusion = "rdim 0, split, point" if a.split else "rdim 1, non-split, no point"
    return _verdict("rdim0-iff-split-iff-point", THEOREM, inputs, ok, conclusion, witness, axioms, registry)


def check_motive_monotone(
    degree: int, cls: BrauerClass, n: int, *, registry: AxiomRegistry = DEFAULT_REGISTRY, cache: ReportCache | None = None
) -> Verdict:
    """rdim 0 must come with a motive free of H classes, isomorphic to a sum of trivial ones."""
    cache = cache or ReportCache()
    rep = cache.get(degree, cls, n)
    trivial = Motive([0] * len(rep.motive), rep.motive.modulus)
    has_h = any(rep.motive.classes)
    iso = motive_iso(rep.motive, trivial)
    ok = (not has_h and iso) if rep.rdim == 0 else True
    inputs = {"degree": degree, "class": _class_name(cls), "n": n}
    witness = {"rdim": rep.rdim, "motive_classes": list(rep.motive.classes), "complex": rep.d, "iso_to_trivial": iso}
    return _verdict(
        "rdim0-motive-split", THEOREM, inputs, ok, "trivial motive" if iso else "non-trivial motive", witness,
        ("ext-vanishing",), registry,
    )


def check_sym3_criterion(
    degree: int, cls: BrauerClass, *, registry: AxiomRegistry = DEFAULT_REGISTRY, cache: ReportCache | None = None
) -> Verdict:
    """For deg A > 3: S^3(X) has a real point iff rdim of the S_3-equivariant category is 0."""
    if degree <= 3:
        raise InvalidDescriptor("the symmetric-cube criterion needs degree > 3")
    cache = cache or ReportCache()
    a = CsaDescriptor(degree, cls)
    point = sym_power_has_point(a, 3)
    rep = cache.get(degree, cls, 3)
    inputs = {"degree": degree, "class": _class_name(cls)}
    witness = {"index": index(a), "index_divides_3": 3 % index(a) == 0, "sym3_point": point, "rdim": rep.rdim}
    axioms = ("lang-nishimura", "sym-power-birational", "gbs-point-iff-index-divides", "rdim-real-complex", "rdim-quaternion")
    return _verdict(
        "sym3-point-iff-rdim0", THEOREM, inputs, point == (rep.rdim == 0),
        f"point {'exists' if point else 'absent'}, rdim {rep.rdim}", witness, axioms, registry,
    )


def check_nonsplit_conic(
    max_n: int = 3, *, registry: AxiomRegistry = DEFAULT_REGISTRY, cache: ReportCache | None = None
) -> Verdict:
    """The non-split conic has rdim 1 on X^n/S_n for n <= 3, witnessed by an H block."""
    cache = cache or ReportCache()
    rows = []
    ok = True
    for n in range(1, min(3, max_n) + 1):
        rep = cache.get(2, BrauerClass(1), n)
        w = _h_witness(rep)
        rows.append({"n": n, "rdim": rep.rdim, "h_block": w})
        ok &= rep.rdim == 1 and w is not None
    control = cache.get(2, BrauerClass(0), min(2, max_n))
    witness = {"reports": rows, "split_control_rdim": control.rdim}
    return _verdict(
        "nonsplit-conic-rdim1", THEOREM, {"max_n": max_n}, ok and control.rdim == 0, "rdim 1", witness,
        ("ext-vanishing", "rdim-quaternion"), registry,
    )


def check_split_cubic_remark(
    degree: int, n: int = 3, *, registry: AxiomRegistry = DEFAULT_REGISTRY, cache: ReportCache | None = None
) -> Verdict:
    """Record whether a C-type block shows up for split X and S_n; never a hard failure."""
    if degree < 2:
        raise InvalidDescriptor("degree must be at least 2")
    cache = cache or ReportCache()
    rep = cache.get(degree, BrauerClass(0), n)
    kinds = {k: rep.end_kinds.count(k) for k in ("R", "C", "H") if k in rep.end_kinds}
    has_c = "C" in kinds
    notes = []
    if n == 3:
        expectation = "the remark expects a block with End C, so no full exceptional collection"
        notes.append(f"{expectation}: {'agrees' if has_c else 'disagrees, every block has End R'}")
        notes.append(
            "stabilizers are Young subgroups (S_3, S_2 x S_1, 1); the alternating group A_3 never occurs "
            "and every rational irrep of a Young subgroup has End Q"
        )
    else:
        notes.append(f"control run at n={n}: {'C-type block present' if has_c else 'all blocks R-type'}")
    witness = {"end_multiset": kinds, "blocks": rep.rank_real_naive, "rank_complex": rep.rank_complex}
    return _verdict(
        "split-cubic-complex-block", REMARK, {"degree": degree, "class": "split", "n": n}, True,
        "C-type block present" if has_c else "no C-type block", witness, ("ext-vanishing",), registry, notes,
    )


def check_sym2_counterexample(
    degree: int = 2, cls: BrauerClass = BrauerClass(1), *, registry: AxiomRegistry = DEFAULT_REGISTRY,
    cache: ReportCache | None = None,
) -> Verdict:
    """S^2 of the non-split conic has a real point while rdim stays 1."""
    inputs = {"degree": degree, "class": _class_name(cls)}
    if degree != 2:
        return Verdict("sym2-point-without-rdim0", REMARK, inputs, True, "not applicable",
                       notes=("the statement only concerns conics",))
    cache = cache or ReportCache()
    rep = cache.get(degree, cls, 2)
    if cls.is_trivial():
        witness = {"rdim": rep.rdim}
        return _verdict("sym2-point-without-rdim0", REMARK, inputs, rep.rdim == 0, f"split control, rdim {rep.rdim}",
                        witness, ("rdim-real-complex",), registry)
    point = registry.accepts("conic-square-rational")
    witness = {"sym2_point": point, "rdim": rep.rdim, "h_block": _h_witness(rep)}
    return _verdict(
        "sym2-point-without-rdim0", REMARK, inputs, point and rep.rdim == 1,
        "point exists but rdim 1", witness, ("conic-square-rational", "rdim-quaternion"), registry,
    )


# -- sweep ------------------------------------------------------------------


def valid_inputs(degrees: Iterable[int]) -> list[tuple[int, BrauerClass]]:
    out = []
    for deg in degrees:
        out.append((deg, BrauerClass(0)))
        if deg % 2 == 0:
            out.append((deg, BrauerClass(1)))
    return out


@dataclass(frozen=True)
class SweepResult:
    verdicts: tuple[Verdict, ...]
    skipped: tuple[str, ...]

    @property
    def theorem_level_ok(self) -> bool:
        return all(v.holds for v in self.verdicts if v.level == THEOREM)

    def summary(self) -> str:
        lines = []
        for v in self.verdicts:
            status = "ok  " if v.holds else "FAIL"
            lines.append(f"{status} [{v.level}] {v.claim} {v.inputs}: {v.conclusion}")
            lines.extend(f"       note: {n}" for n in v.notes)
        lines.extend(f"skip {s}" for s in self.skipped)
        failed = sum(1 for v in self.verdicts if v.level == THEOREM and not v.holds)
        lines.append(f"{len(self.verdicts)} verdicts, {failed} theorem-level failure(s)")
        return "\n".join(lines) + "\n"


def run_sweep(
    max_n: int = 3,
    degrees: Sequence[int] = (2, 3, 4, 5, 6),
    *,
    registry: AxiomRegistry = DEFAULT_REGISTRY,
    seed: int = 0,
    jobs: int = 1,
) -> SweepResult:
    if max_n < 1:
        raise InvalidDescriptor("max_n must be at least 1")
    cache = ReportCache(seed, jobs)
    verdicts: list[Verdict] = []
    skipped: list[str] = []
    inputs = valid_inputs(degrees)
    for deg, cls in inputs:
        ends = [CsaDescriptor(1)] * deg if cls.is_trivial() else [CsaDescriptor(1), CsaDescriptor(2, cls)] * (deg // 2)
        verdicts.append(check_point_forces_rdim0(ends, BsDescriptor(CsaDescriptor(deg, cls)).has_point, registry))
    for deg, cls in inputs:
        verdicts.append(check_rdim_point_equivalence(deg, cls, max_n, registry=registry, cache=cache))
    for deg, cls in inputs:
        for n in range(1, max_n + 1):
            verdicts.append(check_motive_monotone(deg, cls, n, registry=registry, cache=cache))
    if max_n >= 3:
        for deg, cls in inputs:
            if deg > 3:
                verdicts.append(check_sym3_criterion(deg, cls, registry=registry, cache=cache))
    else:
        skipped.append("sym3-point-iff-rdim0: needs n = 3")
    if 2 in degrees:
        verdicts.append(check_nonsplit_conic(max_n, registry=registry, cache=cache))
    if max_n >= 3:
        for deg in (d for d in (2, 3) if d in degrees):
            verdicts.append(check_split_cubic_remark(deg, 3, registry=registry, cache=cache))
    else:
        skipped.append("split-cubic-complex-block: needs n = 3")
    if max_n >= 2:
        if 2 in degrees:
            verdicts.append(check_split_cubic_remark(2, 2, registry=registry, cache=cache))
            verdicts.append(check_sym2_counterexample(2, BrauerClass(1), registry=registry, cache=cache))
            verdicts.append(check_sym2_counterexample(2, BrauerClass(0), registry=registry, cache=cache))
        if 4 in degrees:
            verdicts.append(check_sym2_counterexample(4, BrauerClass(1), registry=registry, cache=cache))
    else:
        skipped.append("sym2-point-without-rdim0: needs n = 2")
    skipped.append(f"rdim0-implies-split for n > {max_n}: unverified beyond the sweep")
    return SweepResult(tuple(verdicts), tuple(skipped))
