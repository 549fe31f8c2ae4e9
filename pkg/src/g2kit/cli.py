"""Command-line interface.

Exit codes are the only channel of truth: 0 when every check passed,
1 when any check failed, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .report import Report


def _emit(report: Report, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    else:
        print(report.to_text())


def _common_flags(p):
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--fd-step", type=float, default=1e-4)
    p.add_argument("--fd-tol", type=float, default=1e-5)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="g2kit",
        description=(
            "Exact checks for two-term graded Lie algebra actions on Lie "
            "algebroids and sampled checks for their integrated group actions."
        ),
    )
    sub = parser.add_subparsers(dest="command")

    p_check = sub.add_parser("check", help="validate a JSON bundle")
    p_check.add_argument("what", choices=("lie2", "algebroid", "action"))
    p_check.add_argument("file")
    _common_flags(p_check)

    p_conv = sub.add_parser("convert", help="convert between lie2 and crossed module")
    p_conv.add_argument("direction", choices=("lie2-to-crossed", "crossed-to-lie2"))
    p_conv.add_argument("file")
    _common_flags(p_conv)

    p_der = sub.add_parser("derive", help="derived brackets of an algebroid bundle")
    p_der.add_argument("what", choices=("brackets",))
    p_der.add_argument("file")
    _common_flags(p_der)

    p_int = sub.add_parser("integrate", help="verify an integrated catalog action")
    p_int.add_argument("--example", required=True)
    p_int.add_argument("--psi-only", action="store_true")
    _common_flags(p_int)

    p_ver = sub.add_parser("verify", help="verify a derived structure")
    p_ver.add_argument("what", choices=("2groupoid",))
    p_ver.add_argument("--example", required=True)
    _common_flags(p_ver)

    return parser


def run_command(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if args.command is None:
        parser.print_help()
        return 2
    try:
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "convert":
            return _cmd_convert(args)
        if args.command == "derive":
            return _cmd_derive(args)
        if args.command == "integrate":
            return _cmd_integrate(args)
        if args.command == "verify":
            return _cmd_verify(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


class _InputError(Exception):
    pass


def _load(path, expect_kind):
    from .io_json import ParseError, parse_bundle

    try:
        return parse_bundle(path, expect_kind=expect_kind)[1]
    except ParseError as exc:
        raise _InputError(str(exc)) from None


def _cmd_check(args) -> int:
    from .algebroid import build_Q, check_homological, jacobi_leibniz_oracle
    from .action import (
        action_preconditions,
        check_double_q,
        validate_action_classical,
        validate_action_dgla,
    )
    from .lie2 import check_qalgebra, validate_lie2

    if args.what == "lie2":
        L = _load(args.file, "lie2")
        rep = Report(f"lie2 bundle {args.file}")
        rep.extend(validate_lie2(L), prefix="axioms.")
        rep.extend(check_qalgebra(L), prefix="qalgebra.")
        rep.add(
            "verdict_equivalence",
            "axioms verdict == encoding-field verdict",
            validate_lie2(L).passed == check_qalgebra(L).passed,
        )
    elif args.what == "algebroid":
        A = _load(args.file, "algebroid")
        rep = Report(f"algebroid bundle {args.file}")
        rep.extend(check_homological(build_Q(A)), prefix="homological.")
        rep.extend(jacobi_leibniz_oracle(A), prefix="oracle.")
        rep.add(
            "verdict_equivalence",
            "homological verdict == structure-function verdict",
            check_homological(build_Q(A)).passed == jacobi_leibniz_oracle(A).passed,
        )
    else:
        S = _load(args.file, "action")
        rep = Report(f"action bundle {args.file}")
        rep.extend(action_preconditions(S), prefix="pre.")
        d = validate_action_dgla(S)
        c = validate_action_classical(S)
        q = check_double_q(S)
        rep.extend(d, prefix="dgla.")
        rep.extend(c, prefix="classical.")
        rep.extend(q, prefix="doubleq.")
        rep.add(
            "verdict_equivalence",
            "dgla == classical == double-commutation verdicts",
            d.passed == c.passed == q.passed,
        )
    _emit(rep, args.format)
    return 0 if rep.passed else 1


def _cmd_convert(args) -> int:
    from .lie2 import (
        from_crossed_module,
        to_crossed_module,
        validate_crossed_module,
        validate_lie2,
    )
    from .io_json import crossed_module_to_json, lie2_to_json

    if args.direction == "lie2-to-crossed":
        L = _load(args.file, "lie2")
        if not validate_lie2(L).passed:
            print("error: input does not satisfy the 2-algebra axioms", file=sys.stderr)
            return 1
        C = to_crossed_module(L)
        if not validate_crossed_module(C).passed:
            print("error: conversion produced an invalid crossed module", file=sys.stderr)
            return 1
        print(json.dumps(crossed_module_to_json(C), indent=2, sort_keys=True))
        return 0
    C = _load(args.file, "crossed_module")
    vc = validate_crossed_module(C)
    if not vc.passed:
        print("error: input does not satisfy the crossed module axioms", file=sys.stderr)
        for check in vc.checks:
            if not check.passed:
                print(f"  failing axiom: {check.name}: {check.law}", file=sys.stderr)
        return 1
    L = from_crossed_module(C)
    if not validate_lie2(L).passed:
        print("error: conversion produced an invalid 2-algebra", file=sys.stderr)
        return 1
    print(json.dumps(lie2_to_json(L), indent=2, sort_keys=True))
    return 0


def _cmd_derive(args) -> int:
    from .algebroid import (
        build_Q,
        check_homological,
        derived_anchor,
        derived_bracket,
        frame_section,
    )
    from .io_json import poly_to_json

    A = _load(args.file, "algebroid")
    Q = build_Q(A)
    if not check_homological(Q).passed:
        print("error: bundle is not a Lie algebroid ([Q, Q] != 0)", file=sys.stderr)
        return 1
    out = {"schema": "g2kit/1", "kind": "derived_brackets", "c": [], "rho": []}
    for i in range(A.rank):
        for j in range(i + 1, A.rank):
            sec = derived_bracket(A, Q, frame_section(A, i), frame_section(A, j))
            for k, coeff in enumerate(sec.coefficients):
                if coeff:
                    out["c"].append({"i": i, "j": j, "k": k, "poly": poly_to_json(coeff)})
    for i in range(A.rank):
        for a in range(A.base_dim):
            val = derived_anchor(A, Q, frame_section(A, i), A.x(a))
            if val:
                out["rho"].append({"i": i, "alpha": a, "poly": poly_to_json(val)})
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


def _cmd_integrate(args) -> int:
    from .catalog import INTEGRATION_NAMES, integration_setup
    from .integrate import integration_report

    try:
        setup = integration_setup(args.example)
    except KeyError:
        raise _InputError(
            f"unknown example {args.example!r}; known: {', '.join(INTEGRATION_NAMES)}"
        ) from None
    rep = integration_report(
        setup,
        samples=args.samples,
        seed=args.seed,
        tol=args.tol,
        fd_step=args.fd_step,
        fd_tol=args.fd_tol,
        psi_only=args.psi_only,
    )
    _emit(rep, args.format)
    return 0 if rep.passed else 1


def _cmd_verify(args) -> int:
    from .catalog import INTEGRATION_NAMES, integration_setup
    from .two_groupoid import verify_two_groupoid

    try:
        setup = integration_setup(args.example)
    except KeyError:
        raise _InputError(
            f"unknown example {args.example!r}; known: {', '.join(INTEGRATION_NAMES)}"
        ) from None
    rep = verify_two_groupoid(setup, samples=args.samples, seed=args.seed, tol=args.tol)
    _emit(rep, args.format)
    return 0 if rep.passed else 1


def entry() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    entry()
