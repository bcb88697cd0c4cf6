"""Command-line surface.

Exit codes partition outcomes: 0 success / certified, 1 definite negative,
2 input error, 3 unknown verdict. Structured output is a single JSON tree
with a schema_version field, byte-stable across runs for fixed flags and
seed.
"""
from __future__ import annotations

import argparse
import json
import sys

from .certify import certify_report, density_experiment
from .congruence import (
    GenWord,
    IN_GAMMA,
    NOT_IN_GAMMA,
    RootSpec,
    UNKNOWN,
    eval_gen_word,
    format_gen_word,
    gamma_index,
    membership,
    parse_gen_word,
    quotient_closure,
    root_matrix,
    synthesize_root,
    verify_identities,
)
from .matrices import IntMatrix, SpMatrix
from .polynomials import charpoly
from .surgery import monodromy_from_plan, plan_as_json_dict, plan_from_T_word
from .words import (
    FamilyRejection,
    TDecomposition,
    WordSyntaxError,
    eval_word,
    format_word,
    parse_word,
    validate_family_T,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_UNKNOWN = 3


def _emit(payload: dict, fmt: str, human_lines: list[str]) -> None:
    if fmt == "json":
        payload = {"schema_version": SCHEMA_VERSION, **payload}
        sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        sys.stdout.write("\n".join(human_lines) + "\n")


def _matrix_rows(m: SpMatrix) -> list[list[int]]:
    return [list(row) for row in m.m.rows]


def _matrix_lines(m: SpMatrix) -> list[str]:
    width = max(len(str(x)) for row in m.m.rows for x in row)
    return [" ".join(str(x).rjust(width) for x in row) for row in m.m.rows]


def _decomposition_dict(dec: TDecomposition) -> dict:
    return {
        "blocks": [
            {"p": list(b.p), "q": list(b.q), "r": list(b.r)} for b in dec.blocks
        ]
    }


class CliInputError(ValueError):
    pass


def _read_matrix_file(path: str, genus: int) -> SpMatrix:
    try:
        with open(path) as fh:
            rows = [
                tuple(int(tok) for tok in line.split())
                for line in fh if line.strip()
            ]
        return SpMatrix(IntMatrix(tuple(rows)), genus)
    except (OSError, ValueError) as exc:
        raise CliInputError(f"cannot read matrix from {path}: {exc}")


def _fail_input(message: str) -> int:
    sys.stderr.write(f"error: {message}\n")
    return EXIT_INPUT


def cmd_eval(args: argparse.Namespace) -> int:
    try:
        word = parse_word(args.word, args.genus)
    except WordSyntaxError as exc:
        return _fail_input(str(exc))
    matrix = eval_word(word)
    chi = charpoly(matrix.m)
    _emit(
        {
            "command": "eval",
            "genus": args.genus,
            "word": format_word(word),
            "matrix": _matrix_rows(matrix),
            "charpoly": list(chi.coeffs),
        },
        args.format,
        [
            f"word: {format_word(word) or '(empty)'}",
            "matrix:",
            *_matrix_lines(matrix),
            f"charpoly: {chi}",
        ],
    )
    return EXIT_OK


def cmd_certify(args: argparse.Namespace) -> int:
    try:
        word = parse_word(args.word, args.genus)
    except WordSyntaxError as exc:
        return _fail_input(str(exc))
    report = certify_report(word, strict_power_mode=args.strict)
    anosov_ok = report.anosov_certified
    payload = {
        "command": "certify",
        "genus": args.genus,
        "word": format_word(word),
        "matrix": _matrix_rows(report.matrix),
        "charpoly": list(report.charpoly.coeffs),
        "anosov": anosov_ok,
        "pa_status": report.pa.status,
        "pa_reasons": report.pa.sorted_reasons(),
        "hyperbolic": report.hyperbolic,
    }
    lines = [
        f"word: {format_word(word) or '(empty)'}",
        f"charpoly: {report.charpoly}",
        f"anosov flow certified: {'yes' if anosov_ok else 'no'}",
    ]
    if anosov_ok:
        payload["decomposition"] = _decomposition_dict(report.anosov)
        lines.append(f"family blocks: {len(report.anosov.blocks)}")
    else:
        payload["rejection"] = {
            "position": report.anosov.position,
            "reason": report.anosov.reason,
        }
        lines.append(f"not a family product: {report.anosov}")
    lines.append(f"pseudo-Anosov: {report.pa.status}"
                 + (f" ({', '.join(report.pa.sorted_reasons())})"
                    if report.pa.reasons else ""))
    lines.append(f"hyperbolic mapping torus: {report.hyperbolic}")
    _emit(payload, args.format, lines)
    return EXIT_OK if anosov_ok else EXIT_NEGATIVE


def cmd_plan(args: argparse.Namespace) -> int:
    try:
        word = parse_word(args.word, args.genus)
    except WordSyntaxError as exc:
        return _fail_input(str(exc))
    dec = validate_family_T(word)
    if isinstance(dec, FamilyRejection):
        _emit(
            {"command": "plan", "genus": args.genus, "word": format_word(word),
             "accepted": False,
             "rejection": {"position": dec.position, "reason": dec.reason}},
            args.format,
            [f"not a family product: {dec}"],
        )
        return EXIT_NEGATIVE
    plan = plan_from_T_word(dec)
    reassembled = monodromy_from_plan(plan)
    round_trip = eval_word(reassembled) == eval_word(word) and \
        validate_family_T(reassembled) == dec
    payload = {
        "command": "plan",
        "genus": args.genus,
        "word": format_word(word),
        "accepted": True,
        "plan": plan_as_json_dict(plan),
        "monodromy": format_word(reassembled),
        "round_trip_ok": round_trip,
    }
    lines = [f"blocks: {plan.block_count}", f"surgeries: {plan.op_count()}"]
    for s, group in enumerate(plan.ops, start=1):
        for op in group:
            lines.append(
                f"  block {s}: orbit {op.orbit.curve} phase {op.orbit.phase} "
                f"twist {op.orbit.twist} index k={op.index_k} order l={op.order_l}")
    lines.append(f"monodromy after surgeries: {format_word(reassembled) or '(empty)'}")
    lines.append(f"round trip: {'ok' if round_trip else 'FAILED'}")
    _emit(payload, args.format, lines)
    return EXIT_OK


def cmd_verify_claims(args: argparse.Namespace) -> int:
    report = verify_identities(args.genus)
    payload = {
        "command": "verify-claims",
        "genus": args.genus,
        "all_passed": report.all_passed,
        "checks": [
            {"name": c.name, "passed": c.passed, "detail": c.detail}
            for c in report.checks
        ],
    }
    lines = []
    for c in report.checks:
        status = "pass" if c.passed else "FAIL"
        lines.append(f"{status}  {c.name}" + (f"  [{c.detail}]" if c.detail else ""))
    lines.append(f"{'all identities pass' if report.all_passed else 'FAILURES present'} "
                 f"({len(report.checks)} checks)")
    _emit(payload, args.format, lines)
    return EXIT_OK if report.all_passed else EXIT_NEGATIVE


def _parse_root_spec(text: str, genus: int) -> RootSpec:
    body, caret, exp_text = text.partition("^")
    if not body or body[0] not in "VWXYZ" or (caret and not exp_text):
        raise ValueError(f"malformed root spec {text!r}")
    kind = body[0]
    index_text = body[1:]
    t = int(exp_text) if exp_text else 2 ** (genus - 1)
    if kind in ("V", "W"):
        if not index_text.isdigit():
            raise ValueError(f"malformed root spec {text!r}")
        spec = RootSpec(kind, int(index_text), t=t)
    else:
        parts = index_text.split(",")
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ValueError(f"malformed root spec {text!r}")
        spec = RootSpec(kind, int(parts[0]), int(parts[1]), t=t)
    spec.validate(genus)
    return spec


def cmd_synthesize(args: argparse.Namespace) -> int:
    try:
        spec = _parse_root_spec(args.spec, args.genus)
        word = synthesize_root(spec, args.genus)
    except ValueError as exc:
        return _fail_input(str(exc))
    target = root_matrix(spec, args.genus)
    verified = eval_gen_word(word) == target
    _emit(
        {
            "command": "synthesize",
            "genus": args.genus,
            "spec": str(spec),
            "word": format_gen_word(word),
            "length": len(word),
            "verified": verified,
        },
        args.format,
        [
            f"spec: {spec}",
            f"word ({len(word)} letters): {format_gen_word(word)}",
            f"verified by evaluation: {'yes' if verified else 'NO'}",
        ],
    )
    return EXIT_OK if verified else EXIT_NEGATIVE


def cmd_membership(args: argparse.Namespace) -> int:
    try:
        matrix = _read_matrix_file(args.matrix_file, args.genus)
    except CliInputError as exc:
        return _fail_input(str(exc))
    witness = None
    if args.witness:
        try:
            witness = parse_gen_word(args.witness, args.genus)
        except ValueError as exc:
            return _fail_input(str(exc))
    table = quotient_closure(2, args.cache) if args.genus == 2 else None
    try:
        result = membership(matrix, args.genus, witness=witness, table=table)
    except ValueError as exc:
        return _fail_input(str(exc))
    payload = {
        "command": "membership",
        "genus": args.genus,
        "verdict": result.verdict,
        "detail": result.detail,
    }
    lines = [f"verdict: {result.verdict} ({result.detail})"]
    if result.witness is not None:
        payload["witness"] = format_gen_word(result.witness)
        lines.append(f"witness: {format_gen_word(result.witness) or '(empty word)'}")
    _emit(payload, args.format, lines)
    if result.verdict == IN_GAMMA:
        return EXIT_OK
    if result.verdict == NOT_IN_GAMMA:
        return EXIT_NEGATIVE
    return EXIT_UNKNOWN


def cmd_index(args: argparse.Namespace) -> int:
    if args.genus != 2:
        return _fail_input("the exact index computation runs at genus 2")
    table = quotient_closure(2, args.cache)
    index = gamma_index(2, table)
    _emit(
        {
            "command": "index",
            "genus": 2,
            "modulus": table.modulus,
            "image_size": table.size,
            "index": index,
        },
        args.format,
        [
            f"quotient image size mod {table.modulus}: {table.size}",
            f"[Sp(4,Z) : Gamma] = {index}",
        ],
    )
    return EXIT_OK


def cmd_density(args: argparse.Namespace) -> int:
    if args.samples < 1 or args.blocks < 1 or args.bound < 0:
        return _fail_input("need samples >= 1, blocks >= 1, bound >= 0")
    result = density_experiment(args.genus, args.blocks, args.samples,
                                args.bound, args.seed)
    _emit(
        {
            "command": "density",
            "genus": result.genus,
            "blocks": result.block_count,
            "samples": result.samples,
            "bound": result.exponent_bound,
            "seed": result.seed,
            "certified": result.certified,
            "fraction": result.fraction,
            "reason_counts": result.reason_counts,
        },
        args.format,
        [
            f"certified {result.certified}/{result.samples} "
            f"(fraction {result.fraction:.4f})",
            "failure reasons: " + (", ".join(
                f"{k}={v}" for k, v in result.reason_counts.items()) or "none"),
        ],
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistcert",
        description="Exact certification of Dehn-twist words: Anosov-flow "
                    "family membership, pseudo-Anosov homological criterion, "
                    "surgery plans, and symplectic subgroup membership.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: argparse.ArgumentParser, genus_default: int | None = None) -> None:
        if genus_default is None:
            p.add_argument("--genus", type=int, required=True)
        else:
            p.add_argument("--genus", type=int, default=genus_default)
        p.add_argument("--format", choices=("human", "json"), default="human")

    p = sub.add_parser("eval", help="evaluate a twist word on homology")
    p.add_argument("word")
    common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("certify", help="full certification report for a word")
    p.add_argument("word")
    p.add_argument("--strict", action="store_true",
                   help="also reject characteristic polynomials in x^k, k >= 3")
    common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("plan", help="surgery plan and monodromy round trip")
    p.add_argument("word")
    common(p)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("verify-claims", help="machine-check the generation identities")
    common(p)
    p.set_defaults(func=cmd_verify_claims)

    p = sub.add_parser("synthesize", help="generator word for a root element")
    p.add_argument("spec", help="e.g. V1, W2, X1,3, Z1,2^4 (default exponent 2^(g-1))")
    common(p)
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("membership", help="membership verdict for a matrix file")
    p.add_argument("matrix_file", help="one row per line, whitespace-separated integers")
    p.add_argument("--witness", help="generator word certifying membership")
    p.add_argument("--cache", help="closure cache file (overrides TWISTCERT_CACHE)")
    common(p)
    p.set_defaults(func=cmd_membership)

    p = sub.add_parser("index", help="index of the subgroup in Sp(4,Z)")
    p.add_argument("--cache", help="closure cache file (overrides TWISTCERT_CACHE)")
    common(p, genus_default=2)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("density", help="certified fraction over random family words")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--blocks", type=int, default=2)
    p.add_argument("--bound", type=int, default=2)
    common(p)
    p.set_defaults(func=cmd_density)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.genus < 2:
        return _fail_input("genus must be >= 2")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
