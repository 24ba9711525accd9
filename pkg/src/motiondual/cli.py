"""Command-line front end: reports, graph exports, certificates, verify sweep.

Exit codes: 0 success, 1 usage error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import chains as chains_mod
from . import constants as constants_mod
from . import primal as primal_mod
from . import verification
from .dualspace import (
    Point,
    build_dual_model,
    distance,
    dual_model_to_dot,
    dual_model_to_json,
)
from .errors import (
    CertificationError,
    ContextMismatch,
    MotionDualError,
    PreconditionViolated,
    SignatureError,
    TheoremViolation,
    UnknownPoint,
)
from .signatures import GroupContext, Signature, parse_entries, walk, walk_violations

USAGE_ERRORS = (SignatureError, ContextMismatch, PreconditionViolated, UnknownPoint)


class _UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage problems, not argparse's 2
        raise _UsageError(message)


def resolve_bound(n: int, bound: int | None) -> int:
    return verification.default_bound(n) if bound is None else bound


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _signature(text: str, n: int) -> Signature:
    return Signature(parse_entries(text), GroupContext(n))


def cmd_report(args) -> int:
    if args.n == 2:
        report = constants_mod.predict(2)
    else:
        try:
            report = constants_mod.cross_check(args.n, resolve_bound(args.n, args.bound))
        except TheoremViolation as exc:
            report = getattr(exc, "report", None)
            if report is not None and args.format == "json":
                _emit(json.dumps(report.to_dict(), indent=2) + "\n", args.output)
            print(f"error: {exc}", file=sys.stderr)
            return 2
    if args.format == "json":
        _emit(json.dumps(report.to_dict(), indent=2) + "\n", args.output)
    else:
        _emit(constants_mod.render_table([report]), args.output)
    return 0


def cmd_graph(args) -> int:
    bound = resolve_bound(args.n, args.bound)
    if args.kind == "dual":
        model = build_dual_model(args.n, bound)
        text = (
            dual_model_to_dot(model)
            if args.format == "dot"
            else json.dumps(dual_model_to_json(model), indent=2) + "\n"
        )
    else:
        text = (
            primal_mod.star_graph_to_dot(args.n, bound)
            if args.format == "dot"
            else json.dumps(primal_mod.star_graph_to_json(args.n, bound), indent=2) + "\n"
        )
    _emit(text, args.output)
    return 0


def cmd_distance(args) -> int:
    bound = resolve_bound(args.n, args.bound)
    a = _signature(args.sig1, args.n)
    b = _signature(args.sig2, args.n)
    model = build_dual_model(args.n, max(bound, *(abs(e) for s in (a, b) for e in s.entries), 1))
    x, y = Point("class", a), Point("class", b)
    d = distance(model, x, y, restrict_to_class=True)
    lines = [f"distance: {d}"]
    payload = {"n": args.n, "from": str(a), "to": str(b), "distance": d}
    if args.certificates:
        w = walk(a, b)
        lines.append(f"walk upper bound: {w.length}")
        payload["walk_upper_bound"] = w.length
        payload["walk"] = w.to_dict()
        if d >= 2:
            chain = chains_mod.find_admissible_chain(model, [x], [y], int(d), restrict_to_class=True)
            lb = chains_mod.chain_lower_bound(model, chain, x, y, restrict_to_class=True)
        elif d == 1:
            trivial = chains_mod.Chain((frozenset(model.space.points),))
            lb = chains_mod.chain_lower_bound(model, trivial, x, y, restrict_to_class=True)
        else:
            lb = 0
        lines.append(f"chain lower bound: {lb}")
        payload["chain_lower_bound"] = lb
    if args.format == "json":
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
    else:
        _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_walk(args) -> int:
    a = _signature(args.sig1, args.n)
    b = _signature(args.sig2, args.n)
    w = walk(a, b)
    payload = w.to_dict()
    payload["valid"] = not walk_violations(w)
    _emit(json.dumps(payload, indent=2) + "\n", args.output)
    if not payload["valid"]:
        return 2
    return 0


def cmd_chain(args) -> int:
    if args.check:
        with open(args.check) as fh:
            payload = json.load(fh)
        model = build_dual_model(int(payload["n"]), int(payload["bound"]))
        chain, x, y, restrict = chains_mod.chain_from_json(model, payload)
        rep = chains_mod.validate_chain(model, chain)
        if not rep.valid:
            print("invalid chain: " + "; ".join(rep.violations), file=sys.stderr)
            return 2
        if x is not None and y is not None:
            lb = chains_mod.chain_lower_bound(model, chain, x, y, restrict_to_class=restrict)
            print(f"chain of length {chain.length} certifies distance >= {lb}")
        else:
            print(f"chain of length {chain.length} is valid")
        return 0
    if args.sig1 is None or args.sig2 is None:
        raise PreconditionViolated("chain needs two signatures (or --check FILE)")
    bound = resolve_bound(args.n, args.bound)
    model = build_dual_model(args.n, bound)
    a = _signature(args.sig1, args.n)
    b = _signature(args.sig2, args.n)
    x, y = Point("class", a), Point("class", b)
    k = args.k
    if k is None:
        k = int(distance(model, x, y, restrict_to_class=True))
    if k >= 2:
        chain = chains_mod.find_admissible_chain(model, [x], [y], k, restrict_to_class=True)
    elif k == 1 and a != b:
        chain = chains_mod.Chain((frozenset(model.space.points),))
    else:
        raise PreconditionViolated("no chain certificate for coinciding classes")
    lb = chains_mod.chain_lower_bound(model, chain, x, y, restrict_to_class=True)
    payload = chains_mod.chain_to_json(model, chain, x, y)
    _emit(json.dumps(payload, indent=2) + "\n", args.output)
    if args.output:
        print(f"chain certifying distance >= {lb} written to {args.output}")
    return 0


def cmd_certify(args) -> int:
    if args.check:
        with open(args.check) as fh:
            payload = json.load(fh)
        cert = primal_mod.certificate_from_dict(payload.get("certificate", payload))
        report = primal_mod.validate_certificate(cert)
        if not report.ok:
            print("certificate invalid: " + "; ".join(report.violations), file=sys.stderr)
            return 2
        print(f"certificate valid; implied bound {report.implied_bound}")
        return 0
    if args.sig1 is None or args.sig2 is None or args.sig3 is None:
        raise PreconditionViolated("certify needs three signatures (or --check FILE)")
    child = args.n - 1
    triple = tuple(_signature(t, child) for t in (args.sig1, args.sig2, args.sig3))
    cert = primal_mod.merge_certificate(args.n, *triple)
    report = primal_mod.validate_certificate(cert)
    payload = {"certificate": cert.to_dict(), "report": report.to_dict()}
    _emit(json.dumps(payload, indent=2) + "\n", args.output)
    if not report.ok:
        print("certificate invalid: " + "; ".join(report.violations), file=sys.stderr)
        return 2
    if args.output:
        print(
            f"certificate with {cert.claimed_n}-step walks and implied bound "
            f"{report.implied_bound} written to {args.output}"
        )
    return 0


def cmd_verify(args) -> int:
    summary = verification.run_sweep(
        args.n_min, args.n_max, bound=args.bound, seed=args.seed, jobs=args.jobs
    )
    if args.format == "json":
        _emit(json.dumps(summary.to_dict(), indent=2) + "\n", args.output)
    else:
        _emit(summary.render(), args.output)
    return 0 if summary.ok else 2


def build_parser() -> Parser:
    parser = Parser(prog="motiondual", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_bound=True):
        p.add_argument("--n", type=int, required=True, help="dimension of the motion group")
        if with_bound:
            p.add_argument("--bound", type=int, default=None, help="truncation bound (default 3, 1 for n >= 10)")
        p.add_argument("--output", default=None, help="write to this file instead of stdout")

    p = sub.add_parser("report", help="constants report for one n")
    add_common(p)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("graph", help="export the dual or sub-ideal graph")
    add_common(p)
    p.add_argument("--kind", choices=("dual", "sub"), default="dual")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("distance", help="class-restricted graph distance")
    add_common(p)
    p.add_argument("sig1")
    p.add_argument("sig2")
    p.add_argument("--certificates", action="store_true", help="also emit walk and chain bounds")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("walk", help="explicit bounded-length walk between two classes")
    add_common(p, with_bound=False)
    p.add_argument("sig1")
    p.add_argument("sig2")
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("chain", help="admissible chain certificate between two classes")
    add_common(p)
    p.add_argument("sig1", nargs="?")
    p.add_argument("sig2", nargs="?")
    p.add_argument("--k", type=int, default=None, help="chain length (default: the distance)")
    p.add_argument("--check", default=None, help="re-verify a chain certificate file")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("certify", help="merge certificate for three germ signatures")
    add_common(p)
    p.add_argument("sig1")
    p.add_argument("sig2")
    p.add_argument("sig3")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="full verification sweep")
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=None, help="workers (default: MOTIONDUAL_JOBS or 1)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except TheoremViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CertificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MotionDualError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
