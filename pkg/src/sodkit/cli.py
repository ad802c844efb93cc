"""Command-line entry point.

Exit codes: 0 success (or isomorphic / point exists), 1 negative answer or a
failed theorem-level verdict, 2 invalid input, 3 engine error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import serialize
from .algebra import classify_real, classify_real_oracle, is_semisimple
from .brauer import BrauerClass, CsaDescriptor, gbs_has_point, index, motive_difference, sym_power_has_point
from .collection import MAX_DEGREE, MAX_N, build_report, rdim_of_factors
from .errors import InvalidAlgebra, InvalidDescriptor, NotSemisimple, SodkitError, UnsupportedCenter
from .verify import DEFAULT_REGISTRY, run_sweep

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_ENGINE = 0, 1, 2, 3

TEST_MODE_ENV = "SODKIT_TEST_MODE"
SEED_ENV = "SODKIT_SEED"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _add_target(p: argparse.ArgumentParser) -> None:
    p.add_argument("--degree", type=_positive, required=True)
    p.add_argument("--class", dest="cls", choices=("split", "quaternion"), required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sodkit", description="Exceptional collections on symmetric powers of real Brauer-Severi varieties.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log engine findings to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("collection", help="build the collection report for D^b_{S_n}(X^n)")
    _add_target(p)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--output", type=Path)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--max-n", type=_positive, default=MAX_N, help="cap on n (default %(default)s)")
    p.add_argument("--max-degree", type=_positive, default=MAX_DEGREE, help="cap on degree (default %(default)s)")

    p = sub.add_parser("classify-algebra", help="Wedderburn factors over R of an algebra given as JSON")
    p.add_argument("path", type=Path)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle", action="store_true", help="also run the independent classifier and compare")

    p = sub.add_parser("motive", help="noncommutative motive comparison")
    msub = p.add_subparsers(dest="motive_command", required=True, parser_class=_Parser)
    mc = msub.add_parser("compare", help="exit 0 if isomorphic, 1 if not")
    mc.add_argument("left", type=Path)
    mc.add_argument("right", type=Path)

    p = sub.add_parser("verify", help="run the verification sweep")
    p.add_argument("--max-n", type=_positive, default=3)
    p.add_argument("--degrees", type=_positive, nargs="+", default=[2, 3, 4, 5, 6])
    p.add_argument("--output", type=Path, help="write the verdict array here instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--reject-axiom", action="append", default=[], help=argparse.SUPPRESS)

    p = sub.add_parser("rational-point", help="real points on symmetric powers S^l(X)")
    _add_target(p)
    p.add_argument("--sym-power", type=int, required=True, dest="sym_power")

    p = sub.add_parser("rdim", help="rdim of D^b_{S_n}(X^n)")
    _add_target(p)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _seed(args) -> int:
    env = os.environ.get(SEED_ENV)
    if env is None:
        return args.seed
    try:
        return int(env)
    except ValueError:
        raise InvalidDescriptor(f"{SEED_ENV} must be an integer, got {env!r}") from None


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text)


def _read_json(path: Path):
    try:
        return json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidDescriptor(f"cannot read {path}: {exc}") from None


def cmd_collection(args) -> int:
    rep = build_report(
        args.degree, BrauerClass.named(args.cls), args.n, seed=_seed(args), jobs=args.jobs,
        max_n=args.max_n, max_degree=args.max_degree,
    )
    if args.format == "json":
        text = serialize.dumps(serialize.report_to_dict(rep))
    else:
        text = serialize.render_table(rep)
    _emit(text, args.output)
    return EXIT_OK


def cmd_classify_algebra(args) -> int:
    alg = serialize.algebra_from_dict(_read_json(args.path))
    if not is_semisimple(alg):
        raise NotSemisimple("input algebra has a nonzero radical")
    rep = classify_real(alg)
    out = {
        "dim": alg.dim,
        "method": rep.method,
        "factors": [{"kind": f.kind, "size": f.size} for f in rep.factors],
    }
    if args.oracle:
        oracle = classify_real_oracle(alg, _seed(args))
        out["oracle_factors"] = [{"kind": f.kind, "size": f.size} for f in oracle.factors]
        out["agree"] = oracle.multiset() == rep.multiset()
    sys.stdout.write(serialize.dumps(out))
    return EXIT_OK if out.get("agree", True) else EXIT_ENGINE


def cmd_motive(args) -> int:
    left = serialize.motive_from_dict(_read_json(args.left))
    right = serialize.motive_from_dict(_read_json(args.right))
    if left.modulus != right.modulus:
        raise InvalidDescriptor("motives over different groups")
    reason = motive_difference(left, right)
    if reason is None:
        print("isomorphic", file=sys.stderr)
        return EXIT_OK
    print(reason, file=sys.stderr)
    return EXIT_NO


def cmd_verify(args) -> int:
    registry = DEFAULT_REGISTRY
    if args.reject_axiom:
        if os.environ.get(TEST_MODE_ENV) != "1":
            raise InvalidDescriptor(f"axiom overrides need {TEST_MODE_ENV}=1")
        registry = registry.rejecting(*args.reject_axiom)
    result = run_sweep(args.max_n, tuple(args.degrees), registry=registry, seed=_seed(args), jobs=args.jobs)
    payload = serialize.dumps([v.to_dict() for v in result.verdicts])
    _emit(payload, args.output)
    sys.stderr.write(result.summary())
    return EXIT_OK if result.theorem_level_ok else EXIT_NO


def cmd_rational_point(args) -> int:
    a = CsaDescriptor(args.degree, BrauerClass.named(args.cls))
    l = args.sym_power
    point = sym_power_has_point(a, l)
    ind = index(a)
    lines = [
        f"A = {a}, index {ind}",
        f"X_{l} has a real point: {ind} {'divides' if gbs_has_point(a, l) else 'does not divide'} {l}",
        f"S^{l}(X) birational to X_{l} x P^{l * (l - 1)}; Lang-Nishimura transfers points",
        f"S^{l}(X)(R) {'nonempty' if point else 'empty'}",
    ]
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK if point else EXIT_NO


def cmd_rdim(args) -> int:
    rep = build_report(args.degree, BrauerClass.named(args.cls), args.n, seed=_seed(args))
    kinds = rep.end_kinds
    counts = {k: kinds.count(k) for k in ("R", "C", "H") if k in kinds}
    print(json.dumps({"degree": args.degree, "class": args.cls, "n": args.n, "ends": counts, "rdim": rdim_of_factors(kinds)}))
    return EXIT_OK


COMMANDS = {
    "collection": cmd_collection,
    "classify-algebra": cmd_classify_algebra,
    "motive": cmd_motive,
    "verify": cmd_verify,
    "rational-point": cmd_rational_point,
    "rdim": cmd_rdim,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr, format="%(message)s")
    try:
        return COMMANDS[args.command](args)
    except (NotSemisimple, UnsupportedCenter) as exc:
        print(f"engine error: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    except (InvalidDescriptor, InvalidAlgebra, ValueError, TypeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SodkitError as exc:
        print(f"engine error: {exc}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
