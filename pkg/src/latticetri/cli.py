"""Command-line front end.

Exit codes: 0 affirmative, 1 negative verdict, 2 parse/IO failure,
3 input outside an operation's domain, 70 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .diagonal import (
    SCHEP_MAX_DIM,
    atomic_diagonal,
    diagonal_band_projection_check,
    schep_oracle,
    voigt_contraction_check,
)
from .errors import InternalConsistencyError, LatticeTriError, ParseError
from .exact import Matrix, parse_rational, spectral_radius_estimate
from .fixtures import FIXTURES, export_fixtures, run_fixtures
from .generate import GenSpec, gen_matrix, gen_semigroup_framed
from .idempotent import decompose_idempotent, triangularizable_idempotent_check, verify_idempotent
from .lattice import reducibility_witnesses
from .semigroup import semigroup_pipeline
from .triangular import criteria_equivalence

EXIT_OK, EXIT_NEGATIVE, EXIT_PARSE, EXIT_DOMAIN, EXIT_INTERNAL = 0, 1, 2, 3, 70
SEED_ENV = "LATTICETRI_SEED"


def _load_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def _load_matrix(path: str) -> tuple[Matrix, dict]:
    obj = _load_json(path)
    m = Matrix.from_json(obj)
    if not m.is_square:
        raise ParseError(f"{path}: matrix must be square")
    return m, obj


def _load_generators(paths: list[str]) -> list[Matrix]:
    gens = []
    for path in paths:
        obj = _load_json(path)
        if isinstance(obj, dict) and "generators" in obj:
            gens.extend(Matrix.from_json(g) for g in obj["generators"])
        else:
            gens.append(Matrix.from_json(obj))
    return gens


def _emit(payload, out: str | None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _tool() -> dict:
    return {"name": "latticetri", "version": __version__}


def _decomposition_report(m: Matrix) -> dict:
    if not verify_idempotent(m):
        return {"idempotent": False}
    tri = triangularizable_idempotent_check(m)
    return {
        "idempotent": True,
        "decomposition": decompose_idempotent(m).to_json(),
        "q_is_identity_when_triangularizable": "not-applicable" if tri is None else tri,
    }


def cmd_analyze(args) -> int:
    m, obj = _load_matrix(args.input)
    m.require_nonnegative()
    report = criteria_equivalence(m)
    voigt = voigt_contraction_check(m)
    witness = reducibility_witnesses([m])
    payload = {
        "tool": _tool(),
        "input": m.to_json(),
        "provenance": obj.get("provenance"),
        "criteria": report.to_json(),
        "diagonal": {
            "atomic_diagonal": atomic_diagonal(m).to_json(),
            "diagonal_norm": str(voigt.diagonal_norm),
            "norm": str(voigt.norm),
            "voigt_contraction": voigt.holds,
            "band_projection": diagonal_band_projection_check(m),
            "norm_kind": "max-row-sum",
        },
        "reducibility": {"irreducible": True} if witness is None else witness.to_json(),
        "spectral_radius_estimate": spectral_radius_estimate(m).to_json(),
    }
    if args.oracle:
        payload["schep"] = _schep_payload(m)
    if args.idempotent:
        payload["idempotent"] = _decomposition_report(m)
    _emit(payload, args.output)
    return EXIT_OK if report.triangularizable else EXIT_NEGATIVE


def _schep_payload(m: Matrix) -> dict:
    d = atomic_diagonal(m)
    s = schep_oracle(m, SCHEP_MAX_DIM)
    if s != d:
        raise InternalConsistencyError("partition infimum differs from the atomic diagonal")
    return {"diag": d.to_json(), "schep": s.to_json(), "equal": True}


def cmd_oracle(args) -> int:
    m, _ = _load_matrix(args.input)
    _emit(_schep_payload(m), args.output)
    return EXIT_OK


def cmd_idempotent(args) -> int:
    m, _ = _load_matrix(args.input)
    m.require_nonnegative()
    payload = {"tool": _tool(), "input": m.to_json(), **_decomposition_report(m)}
    _emit(payload, args.output)
    return EXIT_OK if payload["idempotent"] else EXIT_NEGATIVE


def cmd_semigroup(args) -> int:
    gens = _load_generators(args.gens)
    verdict = semigroup_pipeline(gens, args.depth)
    payload = {"tool": _tool(), "generators": [g.to_json() for g in gens], **verdict.to_json()}
    _emit(payload, args.output)
    return EXIT_OK if verdict.commonly_triangularizable else EXIT_NEGATIVE


def cmd_gen(args) -> int:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get(SEED_ENV, "0"))
    spec = GenSpec(
        n=args.n,
        mode=args.mode,
        seed=seed,
        density=parse_rational(args.density),
        value_range=(parse_rational(args.lo), parse_rational(args.hi)),
        max_denominator=args.max_denominator,
    )
    if args.mode == "semigroup-framed":
        mats = gen_semigroup_framed(spec, args.k)
        payload = {"generators": [m.to_json() for m in mats], "provenance": {**spec.to_json(), "k": args.k}}
    else:
        payload = {**gen_matrix(spec).to_json(), "provenance": spec.to_json()}
    _emit(payload, args.output)
    return EXIT_OK


def cmd_fixtures(args) -> int:
    if args.list:
        for name in FIXTURES:
            print(name)
        return EXIT_OK
    if args.action == "export":
        if not args.output:
            raise ParseError("fixtures export needs -o DIR")
        for path in export_fixtures(Path(args.output)):
            print(path)
        return EXIT_OK
    results = run_fixtures(Path(args.data) if args.data else None)
    if args.json:
        _emit([r.to_json() for r in results], None)
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'} {r.name} ({len(r.checks)} checks)")
            for line in r.diff():
                print(f"    {line}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="latticetri", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"latticetri {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="triangularizability criteria and diagonal data for one matrix")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--oracle", action="store_true", help=f"compare with the partition oracle (n <= {SCHEP_MAX_DIM})")
    p.add_argument("--idempotent", action="store_true", help="include the idempotent decomposition")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("idempotent", help="decompose a nonnegative idempotent")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_idempotent)

    p = sub.add_parser("semigroup", help="common triangularizability of a generated semigroup")
    p.add_argument("--gens", nargs="+", required=True)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_semigroup)

    p = sub.add_parser("oracle", help="brute-force oracles")
    osub = p.add_subparsers(dest="oracle", required=True)
    q = osub.add_parser("schep", help="infimum over set partitions vs. the atomic diagonal")
    q.add_argument("-i", "--input", required=True)
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate a reproducible instance")
    p.add_argument("--mode", default="raw", choices=["raw", "triangularizable", "idempotent", "semigroup-framed"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=None, help=f"defaults to ${SEED_ENV} or 0")
    p.add_argument("--density", default="1/2")
    p.add_argument("--lo", default="0")
    p.add_argument("--hi", default="4")
    p.add_argument("--max-denominator", type=int, default=3)
    p.add_argument("--k", type=int, default=3, help="generator count for semigroup-framed")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("fixtures", help="run the built-in counterexample fixtures")
    p.add_argument("action", nargs="?", choices=["run", "export"], default="run")
    p.add_argument("--list", action="store_true")
    p.add_argument("--data", help="directory of fixture matrices overriding the built-in ones")
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output", help="destination directory for export")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LatticeTriError as exc:
        print(f"latticetri: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"latticetri: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
