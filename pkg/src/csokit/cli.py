"""Command-line front end.

Subcommands: certify, destructor, tto, synthesize, verify-paper,
question1-search, question2-compare.  Matrix, Blaschke, and symbol arguments
accept either inline JSON or a path to a JSON file.  All output is canonical
JSON (sorted keys, compact separators), so identical inputs and seeds give
byte-identical bytes.

Exit codes: certify maps its verdict to 0 (symmetric), 2 (obstructed), or
3 (inconclusive); malformed input is 64 everywhere; other toolkit errors
(precondition, capacity, accuracy) are 65; verify-paper exits 1 when any
entry fails.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import serialize
from .certify import find_conjugation, polynomial_obstruction_search, word_obstruction_search
from .errors import InputError, ToolkitError
from .indestructible import destructor_witness
from .linalg import direct_sum
from .modelspace import tto_matrix
from .synthesis import OptConfig, synthesize_tto_for_nilpotent2
from .verify import RunConfig, run_suite_with_determinism

EXIT_MALFORMED = 64
EXIT_TOOLKIT = 65
VERDICT_EXIT = {"c_symmetric": 0, "obstructed": 2, "inconclusive": 3}


def _load_json(arg: str):
    text = arg.strip()
    if not text.startswith("{"):
        try:
            with open(arg) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {arg}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None


def _emit(obj, out: str | None) -> None:
    text = serialize.dumps(obj) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=2026)
    parser.add_argument("--tol", type=float, default=1e-9)
    parser.add_argument("--quad", type=int, default=1024)
    parser.add_argument("--budget", type=int, default=500)
    parser.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csokit",
        description="complex-symmetry certificates, destructor witnesses, and "
        "truncated Toeplitz synthesis for nilpotent operators of order two",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="decide complex symmetry of a matrix")
    p.add_argument("--matrix", required=True)
    _common(p)

    p = sub.add_parser("destructor", help="pair a matrix against the 3x3 witness")
    p.add_argument("--matrix", required=True)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=2.0)
    _common(p)

    p = sub.add_parser("tto", help="matrix of a truncated Toeplitz operator")
    p.add_argument("--u", required=True, help="Blaschke product JSON")
    p.add_argument("--phi", required=True, help="symbol JSON")
    _common(p)

    p = sub.add_parser("synthesize", help="analytic TTO unitarily equivalent to N")
    p.add_argument("--matrix", required=True)
    _common(p)

    p = sub.add_parser("verify-paper", help="replay the whole certified suite")
    _common(p)

    p = sub.add_parser(
        "question1-search",
        help="search for polynomial norm-identity violations (no claims either way)",
    )
    p.add_argument("--matrix", required=True)
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--max-len", type=int, default=5)
    _common(p)

    p = sub.add_parser(
        "question2-compare",
        help="synthesize for N and N (+) 0 and compare residuals (experimental)",
    )
    p.add_argument("--matrix", required=True)
    _common(p)

    return parser


def cmd_certify(args) -> int:
    T = serialize.matrix_from_json(_load_json(args.matrix))
    cert = find_conjugation(T, budget=args.budget, seed=args.seed, tol=args.tol)
    _emit(serialize.cso_certificate_to_json(cert), args.out)
    return VERDICT_EXIT[cert.verdict]


def cmd_destructor(args) -> int:
    A = serialize.matrix_from_json(_load_json(args.matrix))
    cert = destructor_witness(A, args.alpha, args.beta)
    _emit(serialize.destructor_to_json(cert), args.out)
    return 0


def cmd_tto(args) -> int:
    u = serialize.blaschke_from_json(_load_json(args.u))
    phi = serialize.symbol_from_json(_load_json(args.phi))
    _emit(serialize.matrix_to_json(tto_matrix(u, phi, args.quad)), args.out)
    return 0


def cmd_synthesize(args) -> int:
    N = serialize.matrix_from_json(_load_json(args.matrix))
    cfg = OptConfig(quad=args.quad)
    res = synthesize_tto_for_nilpotent2(N, cfg, seed=args.seed)
    _emit(serialize.synthesis_to_json(res), args.out)
    return 0


def cmd_verify_paper(args) -> int:
    cfg = RunConfig(seed=args.seed, tol=args.tol, quad=args.quad, budget=args.budget)
    report = run_suite_with_determinism(cfg)
    for entry in report["entries"]:
        tag = "PASS" if entry["status"] == "pass" else entry["status"].upper()
        sys.stderr.write(f"[{tag}] {entry['name']}: {entry['claim']}\n")
    _emit(report, args.out)
    return 0 if report["all_pass"] else 1


def cmd_question1(args) -> int:
    T = serialize.matrix_from_json(_load_json(args.matrix))
    word_hit = word_obstruction_search(T, max_len=args.max_len, tol=args.tol)
    poly_report = polynomial_obstruction_search(
        T, samples=args.samples, max_len=args.max_len, seed=args.seed, tol=args.tol
    )
    best = poly_report["best_polynomial"]
    out = {
        "word_search": None
        if word_hit is None
        else {"word": word_hit[0], "gap": word_hit[1]},
        "polynomial_search": {
            "samples": poly_report["samples"],
            "violations": poly_report["violations"],
            "best_gap": poly_report["best_gap"],
            "best_polynomial": None
            if best is None
            else {w: [c.real, c.imag] for w, c in sorted(best.items())},
            "conclusion": poly_report["conclusion"],
        },
        "note": "search harness only; finding nothing resolves nothing",
    }
    _emit(out, args.out)
    return 0


def cmd_question2(args) -> int:
    N = serialize.matrix_from_json(_load_json(args.matrix))
    cfg = OptConfig(quad=args.quad)
    base = synthesize_tto_for_nilpotent2(N, cfg, seed=args.seed)
    padded = synthesize_tto_for_nilpotent2(
        direct_sum(N, np.zeros((1, 1))), cfg, seed=args.seed
    )
    out = {
        "base": serialize.synthesis_to_json(base),
        "padded": serialize.synthesis_to_json(padded),
        "note": "experimental residual comparison only; no claims",
    }
    _emit(out, args.out)
    return 0


COMMANDS = {
    "certify": cmd_certify,
    "destructor": cmd_destructor,
    "tto": cmd_tto,
    "synthesize": cmd_synthesize,
    "verify-paper": cmd_verify_paper,
    "question1-search": cmd_question1,
    "question2-compare": cmd_question2,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_MALFORMED
    except ToolkitError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_TOOLKIT


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
