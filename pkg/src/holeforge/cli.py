"""Command-line front end.

Exit codes: 0 = verified/true, 1 = falsified/not a member/rejected,
2 = usage or resource error. Identical invocations produce byte-identical
output. The environment variable HOLEFORGE_MAX_GENERATORS overrides the
degree-one generator guard.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .certificate import CertificateParseError, emit, verify
from .lifting import deep_hole_construction, lift_lambda
from .oracle import SemigroupOracle
from .simplex import (
    DEFAULT_GENERATOR_LIMIT,
    SKEW,
    ResourceLimitExceeded,
    make_simplex,
)
from .triples import certify, family, is_good_triple, search_good_triples, GoodTriple

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_USAGE = 2

ENV_MAX_GENERATORS = "HOLEFORGE_MAX_GENERATORS"


def _generator_limit() -> int:
    raw = os.environ.get(ENV_MAX_GENERATORS)
    if raw is None:
        return DEFAULT_GENERATOR_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{ENV_MAX_GENERATORS} must be an integer, got {raw!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holeforge",
        description="Exact computations with rectangular-simplex affine semigroups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simplex", help="vertices, facet forms, L, generator count")
    s.add_argument("lambdas", type=int, nargs=3, metavar="LAMBDA")
    s.add_argument("--format", choices=("text", "json"), default="text")

    m = sub.add_parser("member", help="semigroup membership with witness")
    m.add_argument("lambdas", type=int, nargs=3, metavar="LAMBDA")
    m.add_argument("point", type=int, nargs=4, metavar="Z")
    m.add_argument("--format", choices=("text", "json"), default="text")

    h = sub.add_parser(
        "holes",
        help="reduced holes up to a skew-height bound",
        description="Holes are reported by their reduced representative (all "
        "coordinate heights below the parameters); every hole of the semigroup "
        "reduces to one of these by subtracting coordinate vertices. The "
        "enumeration is complete only up to the bound.",
    )
    h.add_argument("lambdas", type=int, nargs=3, metavar="LAMBDA")
    h.add_argument("--max-skew-height", type=int, default=None)
    h.add_argument("--format", choices=("text", "json", "csv"), default="text")
    h.add_argument("-o", "--output", default=None)

    g = sub.add_parser("good-triple", help="check, search, or instantiate good triples")
    mode = g.add_mutually_exclusive_group(required=True)
    mode.add_argument("--check", type=int, nargs=3, metavar="LAMBDA")
    mode.add_argument("--from-lambda1", type=int, default=None)
    mode.add_argument("--search", type=int, default=None, metavar="MAX_LAMBDA3")
    g.add_argument("--format", choices=("text", "json"), default="text")

    c = sub.add_parser("certify", help="emit a non-normality certificate")
    c.add_argument("lambdas", type=int, nargs=3, metavar="LAMBDA")
    c.add_argument("-o", "--output", default=None)

    l = sub.add_parser("lift", help="apply facet lifts to the parameters")
    l.add_argument("lambdas", type=int, nargs=3, metavar="LAMBDA")
    l.add_argument("--facet", type=int, required=True)
    l.add_argument("--times", type=int, default=1)
    l.add_argument("--format", choices=("text", "json"), default="text")

    b = sub.add_parser(
        "construct", help="simplex with all holes at height >= k, plus certificate"
    )
    b.add_argument("--k", type=int, required=True)
    b.add_argument("-o", "--output", default=None)

    v = sub.add_parser("verify", help="verify a certificate file")
    v.add_argument("path")

    return parser


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as handle:
            handle.write(text)


def _write_bytes(data: bytes, path: str | None) -> None:
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(path, "wb") as handle:
            handle.write(data)


def _point_str(point) -> str:
    return " ".join(str(c) for c in point)


def _cmd_simplex(args) -> int:
    simplex = make_simplex(args.lambdas, generator_limit=_generator_limit())
    count = len(simplex.generators)
    if args.format == "json":
        doc = {
            "lambdas": [str(l) for l in simplex.lambdas],
            "L": str(simplex.L),
            "vertices": [[str(c) for c in v] for v in simplex.vertices],
            "facet_forms": {
                **{str(i + 1): [str(c) for c in f.coeffs]
                   for i, f in enumerate(simplex.facet_forms[:-1])},
                SKEW: [str(c) for c in simplex.skew_form.coeffs],
            },
            "generator_count": str(count),
        }
        _write(json.dumps(doc, sort_keys=True, indent=2) + "\n", None)
        return EXIT_TRUE
    lines = [
        f"lambda: {_point_str(simplex.lambdas)}",
        f"L: {simplex.L}",
    ]
    for i, v in enumerate(simplex.vertices):
        lines.append(f"vertex v{i}: {_point_str(v)}")
    for i, f in enumerate(simplex.facet_forms[:-1], start=1):
        lines.append(f"facet {i} form: {_point_str(f.coeffs)}")
    lines.append(f"skew form: {_point_str(simplex.skew_form.coeffs)}")
    lines.append(f"degree-one generators: {count}")
    _write("\n".join(lines) + "\n", None)
    return EXIT_TRUE


def _cmd_member(args) -> int:
    simplex = make_simplex(args.lambdas, generator_limit=_generator_limit())
    oracle = SemigroupOracle(simplex)
    from .lattice import LatticePoint

    point = LatticePoint(args.point)
    witness = oracle.member(point)
    saturated = oracle.in_saturation(point)
    is_hole = saturated and witness is None
    if args.format == "json":
        doc = {
            "point": [str(c) for c in point],
            "member": witness is not None,
            "in_saturation": saturated,
            "hole": is_hole,
            "witness": None
            if witness is None
            else [[str(c) for c in p] for p in witness],
        }
        _write(json.dumps(doc, sort_keys=True, indent=2) + "\n", None)
    else:
        lines = [
            f"point: {_point_str(point)}",
            f"in saturation: {'yes' if saturated else 'no'}",
            f"in semigroup: {'yes' if witness is not None else 'no'}",
        ]
        if witness is not None:
            for p in witness:
                lines.append(f"witness: {_point_str(p)}")
        else:
            lines.append(f"hole: {'yes' if is_hole else 'no'}")
        _write("\n".join(lines) + "\n", None)
    return EXIT_TRUE if witness is not None else EXIT_FALSE


def _cmd_holes(args) -> int:
    simplex = make_simplex(args.lambdas, generator_limit=_generator_limit())
    oracle = SemigroupOracle(simplex)
    bound = args.max_skew_height if args.max_skew_height is not None else simplex.L
    records = oracle.enumerate_holes(bound)
    if args.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        n = simplex.n
        writer.writerow(
            [f"z{i + 1}" for i in range(n)]
            + ["degree", "skew_height"]
            + [f"height_{i + 1}" for i in range(n)]
        )
        for rec in records:
            writer.writerow(
                list(rec.point.coords[:n])
                + [rec.point.degree, rec.skew_height]
                + list(rec.coordinate_heights)
            )
        _write(buffer.getvalue(), args.output)
        return EXIT_TRUE
    if args.format == "json":
        doc = {
            "lambdas": [str(l) for l in simplex.lambdas],
            "max_skew_height": str(bound),
            "complete_up_to_bound": True,
            "holes": [
                {
                    "point": [str(c) for c in rec.point],
                    "skew_height": str(rec.skew_height),
                    "coordinate_heights": [str(h) for h in rec.coordinate_heights],
                }
                for rec in records
            ],
        }
        _write(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.output)
        return EXIT_TRUE
    lines = [
        f"lambda: {_point_str(simplex.lambdas)}",
        f"skew heights searched: 1..{bound} (holes above the bound are not ruled out)",
    ]
    for rec in records:
        lines.append(
            f"hole: {_point_str(rec.point)}  skew {rec.skew_height}  "
            f"coords {_point_str(rec.coordinate_heights)}"
        )
    lines.append(f"holes found: {len(records)}")
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_TRUE


def _cmd_good_triple(args) -> int:
    if args.check is not None:
        ok, reason = is_good_triple(args.check)
        if args.format == "json":
            doc = {
                "lambdas": [str(l) for l in args.check],
                "good": ok,
                "reason": reason,
            }
            _write(json.dumps(doc, sort_keys=True, indent=2) + "\n", None)
        else:
            if ok:
                _write(f"good triple: {_point_str(args.check)}\n", None)
            else:
                _write(f"not a good triple: {reason}\n", None)
        return EXIT_TRUE if ok else EXIT_FALSE
    if args.from_lambda1 is not None:
        triple = family(args.from_lambda1)
        if args.format == "json":
            _write(
                json.dumps({"lambdas": [str(l) for l in triple.lambdas]}, sort_keys=True)
                + "\n",
                None,
            )
        else:
            _write(f"{_point_str(triple.lambdas)}\n", None)
        return EXIT_TRUE
    triples = search_good_triples(args.search)
    if args.format == "json":
        doc = {"triples": [[str(l) for l in t.lambdas] for t in triples]}
        _write(json.dumps(doc, sort_keys=True, indent=2) + "\n", None)
    else:
        _write("".join(f"{_point_str(t.lambdas)}\n" for t in triples), None)
    return EXIT_TRUE


def _cmd_certify(args) -> int:
    ok, reason = is_good_triple(args.lambdas)
    if not ok:
        sys.stderr.write(f"not a good triple: {reason}\n")
        return EXIT_FALSE
    cert = certify(GoodTriple(tuple(args.lambdas)))
    data = emit(cert)
    _write_bytes(data, args.output)
    if args.output is not None:
        _write(f"wrote certificate for lambda {_point_str(cert.final_lambdas)}\n", None)
    return EXIT_TRUE


def _cmd_lift(args) -> int:
    if args.times < 0:
        raise ValueError(f"--times must be nonnegative, got {args.times}")
    current = tuple(args.lambdas)
    steps = []
    for _ in range(args.times):
        step = lift_lambda(current, args.facet)
        steps.append(step)
        current = step.lambda_after
    if args.format == "json":
        doc = {
            "steps": [
                {
                    "facet": str(s.facet_index),
                    "ell": str(s.ell),
                    "lambda_before": [str(l) for l in s.lambda_before],
                    "lambda_after": [str(l) for l in s.lambda_after],
                }
                for s in steps
            ],
            "final_lambdas": [str(l) for l in current],
        }
        _write(json.dumps(doc, sort_keys=True, indent=2) + "\n", None)
    else:
        lines = [
            f"step {i}: facet {s.facet_index} ell {s.ell}: "
            f"{_point_str(s.lambda_before)} -> {_point_str(s.lambda_after)}"
            for i, s in enumerate(steps, start=1)
        ]
        lines.append(f"final lambda: {_point_str(current)}")
        _write("\n".join(lines) + "\n", None)
    return EXIT_TRUE


def _cmd_construct(args) -> int:
    trace, simplex, cert = deep_hole_construction(args.k)
    data = emit(cert)
    _write_bytes(data, args.output)
    if args.output is not None:
        _write(
            f"wrote certificate: lambda {_point_str(cert.final_lambdas)} "
            f"(base {_point_str(cert.base_lambdas)}, {len(trace.steps)} lift steps)\n",
            None,
        )
    return EXIT_TRUE


def _cmd_verify(args) -> int:
    if args.path == "-":
        data = sys.stdin.buffer.read()
    else:
        with open(args.path, "rb") as handle:
            data = handle.read()
    verdict = verify(data)
    if verdict.accepted:
        _write("accepted\n", None)
        return EXIT_TRUE
    _write(f"rejected: {verdict.clause}: {verdict.detail}\n", None)
    return EXIT_FALSE


_HANDLERS = {
    "simplex": _cmd_simplex,
    "member": _cmd_member,
    "holes": _cmd_holes,
    "good-triple": _cmd_good_triple,
    "certify": _cmd_certify,
    "lift": _cmd_lift,
    "construct": _cmd_construct,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except ResourceLimitExceeded as exc:
        sys.stderr.write(f"resource limit: {exc}\n")
        return EXIT_USAGE
    except CertificateParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"io error: {exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
