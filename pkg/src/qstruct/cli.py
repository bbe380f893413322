"""Command line front end.

Exit codes follow the error taxonomy: 0 all checks passed, 1 a check failed
or an operation hit a semantic precondition (DomainError and friends), 2 the
input could not be parsed into a well-formed structure. ``--json`` swaps the
human report for one machine-readable object on stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .boolean_rep import (
    BooleanSemiring,
    represent_distribution,
    stone_map,
    verify_semiring,
    verify_stone,
)
from .errors import DomainError, ParseError, QstructError, StructuralError
from .gns import gns_construct, schwartz_check, verify_algebra, verify_gns, verify_state
from .io_formats import (
    load_algebra,
    load_povm,
    load_structure,
    serialize_dilation,
)
from .matrix_core import Tolerance
from .naimark import dilate, verify_dilation, verify_povm
from .order import FinitePoset, verify_poset
from .ortho import OrthoLogic, verify_logic
from .properties import SUITES, run_suite
from .quasilogic import (
    Quasilogic,
    check_de_morgan,
    check_sum_lattice_identity,
    classify,
    verify_quasilogic,
)
from .report import VerificationReport
from .semilogic import DistributionTable, Semilogic, verify_semilogic

DEFAULT_EPS = 1e-9
TOL_ENV = "QSTRUCT_TOL"


def _tolerance(args: argparse.Namespace) -> Tolerance:
    eps = getattr(args, "tol", None)
    if eps is None:
        raw = os.environ.get(TOL_ENV)
        eps = float(raw) if raw else DEFAULT_EPS
    return Tolerance.with_eps(eps)


def _emit(args: argparse.Namespace, payload: dict, reports: list[VerificationReport]) -> int:
    ok = bool(payload["ok"])
    if args.json:
        print(json.dumps(payload, indent=2))
        return 0 if ok else 1
    for rep in reports:
        print(f"subject: {rep.subject}")
        for line in rep.lines():
            print(line)
        facts = rep.to_dict()["facts"]
        for key, value in facts.items():
            print(f"  {key}: {json.dumps(value)}")
    for key in ("classification", "output_path"):
        if key in payload:
            print(f"{key}: {payload[key]}")
    print("ok" if ok else "FAILED")
    return 0 if ok else 1


def _payload(command: str, reports: list[VerificationReport], **extra) -> dict:
    return {
        "command": command,
        "ok": all(r.ok for r in reports),
        "reports": [r.to_dict() for r in reports],
        **extra,
    }


def cmd_check(args: argparse.Namespace) -> int:
    obj = load_structure(args.file)
    extra: dict = {}
    if isinstance(obj, OrthoLogic):
        rep = verify_logic(obj)
        reports = [rep, check_de_morgan(obj.ql), check_sum_lattice_identity(obj.ql)]
        extra["classification"] = classify(obj.ql)
    elif isinstance(obj, BooleanSemiring):
        reports = [verify_semiring(obj)]
    elif isinstance(obj, Semilogic):
        reports = [verify_semilogic(obj)]
    elif isinstance(obj, Quasilogic):
        reports = [verify_quasilogic(obj), check_de_morgan(obj), check_sum_lattice_identity(obj)]
        extra["classification"] = classify(obj)
    else:
        assert isinstance(obj, FinitePoset)
        reports = [verify_poset(obj)]
    return _emit(args, _payload("check", reports, **extra), reports)


def _load_values(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(data, dict) or "values" not in data:
        raise ParseError("distribution file needs a 'values' object of label: number")
    return data["values"]


def cmd_stone(args: argparse.Namespace) -> int:
    obj = load_structure(args.file)
    if not isinstance(obj, BooleanSemiring):
        raise DomainError(
            "stone representation needs a boolean semiring", kind=type(obj).__name__
        )
    reports = [verify_semiring(obj)]
    sr = stone_map(obj)
    srep = verify_stone(sr)
    srep.facts["extents"] = {
        obj.labels[b]: sorted(sr.extent[b]) for b in range(obj.n)
    }
    reports.append(srep)
    extra: dict = {
        "points": [sorted(obj.labels[i] for i in f.members) for f in sr.points]
    }
    if args.distribution:
        dist = DistributionTable.from_dict(obj, _load_values(args.distribution))
        measure, mrep = represent_distribution(sr, dist)
        mrep.facts["measure"] = {
            "{" + ",".join(str(p) for p in sorted(s)) + "}": v
            for s, v in sorted(measure.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
        }
        reports.append(mrep)
    return _emit(args, _payload("stone", reports, **extra), reports)


def cmd_dilate(args: argparse.Namespace) -> int:
    tol = _tolerance(args)
    povm = load_povm(args.file)
    reports = [verify_povm(povm, tol)]
    dil = dilate(povm, tol)
    reports.append(verify_dilation(dil, tol))
    extra: dict = {}
    if args.out:
        Path(args.out).write_text(json.dumps(serialize_dilation(dil), indent=2))
        extra["output_path"] = args.out
    return _emit(args, _payload("dilate", reports, **extra), reports)


def cmd_gns(args: argparse.Namespace) -> int:
    tol = _tolerance(args)
    alg, state = load_algebra(args.file)
    if state is None:
        raise DomainError("algebra file declares no state to represent")
    reports = [verify_algebra(alg, tol), verify_state(alg, state, tol)]
    rep_obj = gns_construct(alg, state, tol)
    reports.append(verify_gns(rep_obj, tol))
    reports.append(schwartz_check(alg, state, samples=args.samples, seed=args.seed, tol=tol))
    return _emit(args, _payload("gns", reports), reports)


def cmd_property(args: argparse.Namespace) -> int:
    tol = _tolerance(args)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = [run_suite(name, seed=args.seed, tol=tol) for name in names]
    ok = all(r.passed for r in results)
    payload = {
        "command": "property",
        "ok": ok,
        "seed": args.seed,
        "suites": [r.to_dict() for r in results],
    }
    if not ok:
        witness = {
            "seed": args.seed,
            "failures": [r.to_dict() for r in results if not r.passed],
        }
        Path(args.witness).write_text(json.dumps(witness, indent=2, default=repr))
        payload["witness_path"] = args.witness
    if args.json:
        print(json.dumps(payload, indent=2, default=repr))
        return 0 if ok else 1
    for r in results:
        mark = "pass" if r.passed else "FAIL"
        line = f"  [{mark}] {r.name:<12} ({r.cases} cases)"
        if r.witness is not None:
            line += f"\n         witness: {r.witness.get('case', '?')}"
        print(line)
    if not ok:
        print(f"witness written to {args.witness}")
    print("ok" if ok else "FAILED")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qstruct",
        description="Verify finite event structures and build their representations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, tol: bool = True):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if tol:
            p.add_argument(
                "--tol",
                type=float,
                default=None,
                help=f"numeric tolerance (default {DEFAULT_EPS}, or ${TOL_ENV})",
            )

    p = sub.add_parser("check", help="verify the axioms of a structure file")
    p.add_argument("file", help="structure JSON file")
    common(p, tol=False)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("stone", help="represent a boolean semiring by sets of points")
    p.add_argument("file", help="boolean semiring JSON file")
    p.add_argument(
        "--distribution", help="JSON file with a 'values' map to carry along", default=None
    )
    common(p, tol=False)
    p.set_defaults(fn=cmd_stone)

    p = sub.add_parser("dilate", help="dilate a POVM to a projective measure")
    p.add_argument("file", help="POVM JSON file")
    p.add_argument("--out", help="write the dilation to this JSON file", default=None)
    common(p)
    p.set_defaults(fn=cmd_dilate)

    p = sub.add_parser("gns", help="build the cyclic representation of a state")
    p.add_argument("file", help="algebra JSON file with a state")
    p.add_argument("--samples", type=int, default=1000, help="schwartz sample pairs")
    p.add_argument("--seed", type=int, default=0, help="schwartz sampling seed")
    common(p)
    p.set_defaults(fn=cmd_gns)

    p = sub.add_parser("property", help="run randomized self-check suites")
    p.add_argument(
        "--suite",
        default="all",
        choices=["all", *SUITES],
        help="which suite to run (default all)",
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--witness",
        default="qstruct-witness.json",
        help="where to write the failure witness (only on failure)",
    )
    common(p)
    p.set_defaults(fn=cmd_property)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except QstructError as exc:
        code = 2 if isinstance(exc, (ParseError, StructuralError)) else 1
        if args.json:
            print(
                json.dumps(
                    {
                        "command": args.command,
                        "ok": False,
                        "error": {
                            "type": type(exc).__name__,
                            "message": str(exc),
                            "details": exc.details,
                        },
                    },
                    indent=2,
                    default=repr,
                )
            )
        else:
            print(f"error: {exc}", file=sys.stderr)
            for key, value in exc.details.items():
                print(f"  {key}: {value!r}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
