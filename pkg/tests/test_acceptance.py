"""Acceptance criteria, one check per criterion.

Each check prints a single ``PASS``/``FAIL`` line with its measured time and
time limit.  Tolerances are exact: every quantity compared here is an
integer or a multiset, so equality is the only tolerance.  Run directly with
``python tests/test_acceptance.py`` or through pytest.
"""

from __future__ import annotations

import contextlib
import io
import itertools
import json
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import pytest

from sodkit.algebra import (
    AlgebraAutomorphism,
    classify_real,
    classify_real_oracle,
    direct_product,
    fixed_subalgebra,
    matrix_algebra,
    number_field,
    quaternions,
    rationals,
    tensor,
)
from sodkit.brauer import HAMILTON, SPLIT, BrauerClass, Motive, motive_cancel, motive_iso
from sodkit.cli import main as cli_main
from sodkit.collection import _algebra_key, _invariant_algebra_cached, base_collection, build_report, enumerate_cells
from sodkit.linalg import RatMatrix
from sodkit.verify import ReportCache, check_rdim_point_equivalence, check_sym3_criterion

# time limits in seconds; None means no limit was set
LIMITS = {1: 1.0, 2: 30.0, 3: 1.0, 4: 60.0}


@dataclass
class Outcome:
    ok: bool
    detail: str


def ac1_base_collections() -> Outcome:
    got = [b.end_algebra for b in base_collection(2, HAMILTON)]
    ok = got == ["Q", "H_Q"]
    for r in (1, 2, 3):
        ok &= [b.end_algebra for b in base_collection(2 * r, HAMILTON)] == ["Q", "H_Q"] * r
    for deg in range(1, 7):
        ok &= [b.end_algebra for b in base_collection(deg, SPLIT)] == ["Q"] * deg
    return Outcome(ok, "conic [R, H]; alternating for r <= 3; split D x R for D <= 6")


def _swap(d: int) -> RatMatrix:
    return RatMatrix.from_columns(d * d, [{(i % d) * d + i // d: Fraction(1)} for i in range(d * d)])


def ac2_oracle_equivalence() -> Outcome:
    corpus = [matrix_algebra(k) for k in range(1, 5)]
    corpus += [
        quaternions(),
        tensor([matrix_algebra(2), quaternions()]),
        number_field([1, 0, 1]),
        number_field([1, 1, 1]),
        quaternions(-1, 3),
        direct_product([rationals(), quaternions()]),
    ]
    keys = set()
    for deg in (2, 3, 4):
        for c in (0, 1):
            if c and deg % 2:
                continue
            base = base_collection(deg, BrauerClass(c))
            for n in (1, 2, 3):
                keys.update(_algebra_key(base, cell) for cell in enumerate_cells(n, len(base)))
    corpus += [_invariant_algebra_cached(*k)[1] for k in sorted(keys)]
    mismatches = 0
    for i, alg in enumerate(corpus):
        if classify_real(alg).multiset() != classify_real_oracle(alg, seed=i).multiset():
            mismatches += 1
    return Outcome(mismatches == 0 and len(corpus) >= 20, f"{len(corpus)} algebras, {mismatches} mismatches")


def ac3_quaternion_square() -> Outcome:
    hh = tensor([quaternions(), quaternions()])
    sub, _ = fixed_subalgebra(hh, [AlgebraAutomorphism(_swap(4))])
    factors = [str(f) for f in classify_real(sub).factors]
    return Outcome(sub.dim == 10 and factors == ["R(1)", "R(3)"], f"dim {sub.dim}, {factors}")


def ac4_split_purity() -> Outcome:
    bad = []
    for deg in range(2, 6):
        for n in (1, 2, 3):
            rep = build_report(deg, SPLIT, n)
            if "H" in rep.end_kinds or rep.rdim != 0:
                bad.append((deg, n))
    return Outcome(not bad, f"violations {bad}" if bad else "degrees 2-5, n <= 3: no H block, rdim 0")


def ac5_nonsplit_conic() -> Outcome:
    rows = []
    ok = True
    for n in (1, 2, 3):
        rep = build_report(2, HAMILTON, n)
        witness = next((b for b in rep.blocks if b.end_type == "H"), None)
        ok &= rep.rdim == 1 and witness is not None
        rows.append(f"n={n}: rdim {rep.rdim} via {witness.source.alpha if witness else None}")
    return Outcome(ok, "; ".join(rows))


def ac6_rank_bookkeeping() -> Outcome:
    rep = build_report(2, HAMILTON, 2)
    ok = (
        rep.rank_complex == 5
        and rep.rank_consistent == 5
        and rep.d == 0
        and rep.rank_real_naive == 7
        and any("identified" in note for note in rep.notes)
    )
    checked = ambiguous = 0
    for deg in range(2, 7):
        for c in (0, 1):
            if c and deg % 2:
                continue
            for n in (1, 2, 3):
                r = build_report(deg, BrauerClass(c), n)
                if r.dedup_ambiguous:
                    ambiguous += 1
                    continue
                checked += 1
                r_cons = r.rank_consistent - r.d_consistent
                ok &= r_cons + 2 * r.d_consistent == r.rank_complex
    return Outcome(ok, f"(2,H,2): naive 7, rank_C 5, consistent 5; r'+2d' = rank_C on {checked} reports, {ambiguous} flagged ambiguous")


def _brute_iso(x: Motive, y: Motive) -> bool:
    if len(x) != len(y):
        return False
    for p in range(1, x.modulus + 1):
        xs = [(p * c) % x.modulus for c in x.classes]
        ys = [(p * c) % y.modulus for c in y.classes]
        if not any(all(a == ys[s] for a, s in zip(xs, perm)) for perm in itertools.permutations(range(len(ys)))):
            return False
    return True


def ac7_motives() -> Outcome:
    failures = 0
    cases = 0
    for nx, ny in itertools.product(range(5), repeat=2):
        for xs in itertools.product((0, 1), repeat=nx):
            for ys in itertools.product((0, 1), repeat=ny):
                cases += 1
                failures += motive_iso(Motive(xs), Motive(ys)) != _brute_iso(Motive(xs), Motive(ys))
    rng = random.Random(6)
    for _ in range(1000):
        x, y, c = (Motive([rng.randrange(6) for _ in range(rng.randint(0, 4))], 6) for _ in range(3))
        failures += motive_cancel(x, y, c) != motive_iso(x, y)
    return Outcome(failures == 0, f"{cases} exhaustive Z/2 pairs + 1000 Z/6 cancellations, {failures} failures")


def ac8_rdim_point_sweep() -> Outcome:
    cache = ReportCache()
    failed = []
    count = 0
    for deg in range(2, 7):
        for c in (0, 1):
            if c and deg % 2:
                continue
            count += 1
            if not check_rdim_point_equivalence(deg, BrauerClass(c), 3, cache=cache).holds:
                failed.append((deg, c))
    return Outcome(not failed, f"{count} (degree, class) inputs, n <= 3, failures {failed}")


def ac9_sym3() -> Outcome:
    cache = ReportCache()
    rows = []
    ok = True
    for deg in (4, 5, 6):
        for cls in (SPLIT, HAMILTON):
            if cls == HAMILTON and deg % 2:
                continue
            v = check_sym3_criterion(deg, cls, cache=cache)
            expect_point = cls == SPLIT
            ok &= v.holds and v.witness["sym3_point"] is expect_point and v.witness["rdim"] == (0 if expect_point else 1)
            rows.append(f"{deg}/{cls.name}: point={v.witness['sym3_point']} rdim={v.witness['rdim']}")
    return Outcome(ok, "; ".join(rows))


def ac10_remark_probe() -> Outcome:
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli_main(["verify", "--max-n", "3", "--degrees", "2", "3"])
    verdicts = [v for v in json.loads(out.getvalue()) if v["claim"] == "split-cubic-complex-block" and v["inputs"]["n"] == 3]
    degrees = sorted(v["inputs"]["degree"] for v in verdicts)
    logged = all(any("remark expects" in n for n in v["notes"]) for v in verdicts) and "remark expects" in err.getvalue()
    finding = ", ".join(f"deg {v['inputs']['degree']}: {v['conclusion']} {v['witness']['end_multiset']}" for v in verdicts)
    return Outcome(code in (0, 1) and degrees == [2, 3] and logged, finding)


CRITERIA: list[tuple[int, str, Callable[[], Outcome]]] = [
    (1, "base collections", ac1_base_collections),
    (2, "classifier oracle equivalence", ac2_oracle_equivalence),
    (3, "(HxH)^S2 dimension and factors", ac3_quaternion_square),
    (4, "split purity", ac4_split_purity),
    (5, "non-split conic rdim 1", ac5_nonsplit_conic),
    (6, "rank bookkeeping", ac6_rank_bookkeeping),
    (7, "motive criterion and cancellation", ac7_motives),
    (8, "rdim/split/point sweep", ac8_rdim_point_sweep),
    (9, "symmetric cube criterion", ac9_sym3),
    (10, "split n=3 remark probe", ac10_remark_probe),
]


def evaluate(number: int, title: str, fn: Callable[[], Outcome]) -> tuple[bool, str]:
    start = time.perf_counter()
    outcome = fn()
    elapsed = time.perf_counter() - start
    limit = LIMITS.get(number)
    in_time = limit is None or elapsed < limit
    ok = outcome.ok and in_time
    budget = f"{elapsed:.2f}s" + (f" < {limit:.0f}s" if limit is not None and in_time else f" exceeds {limit:.0f}s" if limit else "")
    line = f"{'PASS' if ok else 'FAIL'} AC{number:<2} {title}: {outcome.detail} [{budget}]"
    return ok, line


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"AC{n}" for n, _, _ in CRITERIA])
def test_acceptance(number, title, fn, capsys):
    ok, line = evaluate(number, title, fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
