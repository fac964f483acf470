"""Command-line frontend.

Exit codes: 0 success, 2 usage or input errors (with parse positions where
available), 3 enumeration budget exceeded, 4 audit inconsistency (a result
that would falsify a guaranteed bound).

Output is deterministic: identical inputs produce byte-identical output in
every format. --threads is accepted for interface stability; aggregation is
sequential either way, so the flag never changes output bytes. --seed is
reserved for randomized generators and currently unused.
"""

from __future__ import annotations

import argparse
import json
import sys

from .lab import (
    DistinctnessError,
    ExceptionalPolynomialError,
    audit_injectivity,
    audit_vanishing_subsums,
    cauchy_schwarz_check,
    expansion_sweep,
    parse_family,
)
from .polynomials import PolyParseError, format_monomial, parse_poly
from .polynomials import classify_monomial_composition, non_parallel_witnesses
from .rational import RationalParseError, format_rational
from .sets import (
    DEFAULT_MAX_PAIRS,
    CapExceeded,
    doubling_ratio,
    image_set,
    productset,
    read_set_file,
)
from .structure import amoroso_viada_bound, multiplicative_rank, parse_ggp_spec

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_INCONSISTENT = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyexpand",
        description="Exact experiments on image growth of bivariate polynomials "
        "over rational sets",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "csv"), default="text")
    common.add_argument("--max-pairs", type=int, default=DEFAULT_MAX_PAIRS)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=None)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="decide the g(x^a y^b) shape")
    p.add_argument("--poly", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("image", parents=[common], help="distinct values f(a, b)")
    p.add_argument("--poly", required=True)
    p.add_argument("--set", required=True, dest="set_path")
    p.add_argument("--set2", dest="set2_path", default=None)
    p.set_defaults(func=cmd_image)

    p = sub.add_parser("energy", parents=[common], help="pair-coincidence energy")
    p.add_argument("--poly", required=True)
    p.add_argument("--set", required=True, dest="set_path")
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("structure", parents=[common], help="doubling and lattice rank")
    p.add_argument("--set", required=True, dest="set_path")
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("audit", parents=[common], help="bound audits by brute force")
    p.add_argument("--poly", required=True)
    p.add_argument("--set", dest="set_path", default=None)
    p.add_argument("--threshold", type=int, default=None)
    p.add_argument("--ggp", default=None)
    p.add_argument("--t", type=int, default=None)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("sweep", parents=[common], help="image growth over a family")
    p.add_argument("--poly", required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--N", required=True, help="comma-separated sample sizes")
    p.add_argument("--allow-exceptional", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bound", parents=[common], help="unit-equation bound value")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_bound)

    return parser


def _validate_common(args: argparse.Namespace) -> None:
    if args.max_pairs < 1:
        raise ValueError("--max-pairs must be positive")
    if args.threads < 1:
        raise ValueError("--threads must be positive")


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True))


def _emit(payload: dict, lines: list[str], args: argparse.Namespace) -> None:
    if args.format == "json":
        _emit_json(payload)
    elif args.format == "csv":
        raise ValueError("csv output is only available for sweep")
    else:
        for line in lines:
            print(line)


def cmd_classify(args: argparse.Namespace) -> int:
    f = parse_poly(args.poly)
    decomposition = classify_monomial_composition(f)
    if decomposition is not None:
        payload = {
            "command": "classify",
            "polynomial": str(f),
            "classification": "exceptional",
            "g": str(decomposition.g),
            "monomial": format_monomial(decomposition.monomial),
            "monomial_exponents": list(decomposition.monomial),
            "trivial": decomposition.trivial,
        }
        lines = [
            "EXCEPTIONAL",
            f"  g(t) = {decomposition.g}",
            f"  M(x,y) = {format_monomial(decomposition.monomial)}",
            f"  trivial = {str(decomposition.trivial).lower()}",
        ]
    else:
        witnesses = non_parallel_witnesses(f)
        assert witnesses is not None
        payload = {
            "command": "classify",
            "polynomial": str(f),
            "classification": "non-exceptional",
            "witnesses": [list(witnesses[0]), list(witnesses[1])],
        }
        lines = [
            "NON-EXCEPTIONAL",
            f"  witnesses: {format_monomial(witnesses[0])} and "
            f"{format_monomial(witnesses[1])} have non-parallel exponents "
            f"{witnesses[0]} and {witnesses[1]}",
        ]
    _emit(payload, lines, args)
    return EXIT_OK


def cmd_image(args: argparse.Namespace) -> int:
    f = parse_poly(args.poly)
    a = read_set_file(args.set_path)
    b = read_set_file(args.set2_path) if args.set2_path else None
    image = image_set(f, a, b, max_pairs=args.max_pairs)
    values = [format_rational(v) for v in image]
    payload = {
        "command": "image",
        "polynomial": str(f),
        "size": len(image),
        "values": values,
    }
    lines = [f"size = {len(image)}", f"values = {{{', '.join(values)}}}"]
    _emit(payload, lines, args)
    return EXIT_OK


def cmd_energy(args: argparse.Namespace) -> int:
    f = parse_poly(args.poly)
    a = read_set_file(args.set_path)
    check = cauchy_schwarz_check(f, a, max_pairs=args.max_pairs)
    payload = {
        "command": "energy",
        "polynomial": str(f),
        "set_size": len(a),
        "energy": check.energy,
        "image_size": check.image_size,
        "lower_bound": format_rational(check.lower_bound),
        "holds": check.holds,
    }
    lines = [
        f"E = {check.energy}",
        f"image = {check.image_size}",
        f"lower bound |A|^4/|f(A,A)| = {format_rational(check.lower_bound)}",
        f"holds = {str(check.holds).lower()}",
    ]
    _emit(payload, lines, args)
    return EXIT_OK if check.holds else EXIT_INCONSISTENT


def cmd_structure(args: argparse.Namespace) -> int:
    a = read_set_file(args.set_path)
    products = productset(a, a)
    rank = multiplicative_rank(a)
    doubling = doubling_ratio(a)
    payload = {
        "command": "structure",
        "set_size": len(a),
        "productset_size": len(products),
        "doubling": format_rational(doubling),
        "doubling_float": float(doubling),
        "rank": rank,
    }
    lines = [
        f"size = {len(a)}",
        f"productset = {len(products)}",
        f"doubling = {format_rational(doubling)}",
        f"rank = {rank}",
    ]
    _emit(payload, lines, args)
    return EXIT_OK


def cmd_audit(args: argparse.Namespace) -> int:
    f = parse_poly(args.poly)
    if args.set_path is None and args.ggp is None:
        raise ValueError("audit needs --set (subsum audit) or --ggp (injectivity audit)")
    payload: dict = {"command": "audit", "polynomial": str(f)}
    lines: list[str] = []
    exit_code = EXIT_OK

    if args.set_path is not None:
        a = read_set_file(args.set_path)
        report = audit_vanishing_subsums(
            f, a, threshold=args.threshold, max_pairs=args.max_pairs
        )
        payload["subsum_audit"] = {
            "degree": report.degree,
            "support_size": report.support_size,
            "pairs": report.total_pairs(),
            "dirty_bound": report.dirty_bound,
            "bad_values": [format_rational(v) for v in report.bad_values],
            "max_bad_values": report.max_bad_values,
            "consistent": report.consistent,
            "threshold": report.threshold,
            "high_multiplicity": [format_rational(v) for v in report.high_multiplicity],
            "theoretical_threshold_log10": report.theoretical_threshold_log10,
            "zero_value_full_sum_solutions": report.zero_value_full_sum_solutions,
            "table": [
                {
                    "value": format_rational(s.value),
                    "clean": s.clean,
                    "dirty": s.dirty,
                }
                for s in report.splits
            ],
        }
        lines += [
            f"subsum audit: degree = {report.degree}, support = {report.support_size}, "
            f"pairs = {report.total_pairs()}",
            f"  dirty bound = {report.dirty_bound}, values above it = "
            f"{len(report.bad_values)} (allowed {report.max_bad_values})",
            f"  high multiplicity (> {report.threshold}): "
            f"{[format_rational(v) for v in report.high_multiplicity]}",
            f"  theoretical threshold log10 = "
            f"{report.theoretical_threshold_log10:.6g}",
            f"  consistent = {str(report.consistent).lower()}",
        ]
        if not report.consistent:
            exit_code = EXIT_INCONSISTENT
            lines.append("  full table (value clean dirty):")
            for s in report.splits:
                lines.append(
                    f"    {format_rational(s.value)} {s.clean} {s.dirty}"
                )

    if args.ggp is not None:
        if args.t is None:
            raise ValueError("--ggp needs --t for the dilation factor")
        box = parse_ggp_spec(args.ggp)
        injective = audit_injectivity(f, box, args.t, max_pairs=args.max_pairs)
        payload["injectivity_audit"] = {
            "ggp": box.describe(),
            "t": args.t,
            "injective": injective,
        }
        lines.append(
            f"injectivity audit on {box.describe()} (t = {args.t}): "
            f"{'injective' if injective else 'NOT injective'}"
        )
        if not injective:
            exit_code = EXIT_INCONSISTENT

    _emit(payload, lines, args)
    return exit_code


SWEEP_CSV_HEADER = "N,setsize,productset,K,image,ratio"


def cmd_sweep(args: argparse.Namespace) -> int:
    f = parse_poly(args.poly)
    family = parse_family(args.family)
    try:
        sizes = [int(chunk) for chunk in args.N.split(",") if chunk.strip()]
    except ValueError as exc:
        raise ValueError(f"--N must be a comma-separated integer list: {exc}") from exc
    report = expansion_sweep(
        f,
        family,
        sizes,
        allow_exceptional=args.allow_exceptional,
        max_pairs=args.max_pairs,
    )
    payload = {
        "command": "sweep",
        "polynomial": report.polynomial,
        "family": report.family,
        "growth_exponent": report.growth_exponent,
        "rows": [
            {
                "N": row.N,
                "setsize": row.set_size,
                "productset": row.productset_size,
                "K": format_rational(row.doubling),
                "K_float": float(row.doubling),
                "image": row.image_size,
                "ratio": format_rational(row.ratio),
                "ratio_float": float(row.ratio),
            }
            for row in report.rows
        ],
    }
    if args.format == "csv":
        print(SWEEP_CSV_HEADER)
        for row in report.rows:
            print(
                f"{row.N},{row.set_size},{row.productset_size},"
                f"{float(row.doubling)!r},{row.image_size},{float(row.ratio)!r}"
            )
        return EXIT_OK
    lines = [f"family = {report.family}", f"f = {report.polynomial}"]
    lines.append(f"{'N':>6} {'|A|':>8} {'|AA|':>8} {'K':>10} {'|f(A,A)|':>10} {'ratio':>10}")
    for row in report.rows:
        lines.append(
            f"{row.N:>6} {row.set_size:>8} {row.productset_size:>8} "
            f"{float(row.doubling):>10.4f} {row.image_size:>10} {float(row.ratio):>10.4f}"
        )
    if report.growth_exponent is not None:
        lines.append(f"fitted growth exponent = {report.growth_exponent:.4f}")
    _emit(payload, lines, args)
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    bound = amoroso_viada_bound(args.n, args.r)
    digits = int(bound.log10) + 10
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(max(sys.get_int_max_str_digits(), digits))
    payload = {
        "command": "bound",
        "n": bound.n,
        "r": bound.r,
        "value": str(bound.value),
        "log10": bound.log10,
    }
    lines = [
        f"n = {bound.n}",
        f"r = {bound.r}",
        f"value = {bound.value}",
        f"log10 = {bound.log10:.6g}",
    ]
    _emit(payload, lines, args)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate_common(args)
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (
        PolyParseError,
        RationalParseError,
        ExceptionalPolynomialError,
        DistinctnessError,
        FileNotFoundError,
        ValueError,
        TypeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
