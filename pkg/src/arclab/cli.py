"""Command line front end: ``arclab <verb> [options]``.

Exit codes: 0 success, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Any, Sequence

from . import arc as arcmod
from .arc import Arc, ArcError, OPolynomial, FAMILIES
from .gf import FieldError, field_create, field_of_order
from .io import arc_to_json, code_to_json, dumps, load_arc, vectors_to_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CONSTRUCTIONS = ("nrc", "conic") + FAMILIES + ("segre3space", "glynn", "kestenband", "twelve")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _field(args):
    if args.q is None:
        raise UsageError("--q is required")
    try:
        return field_of_order(args.q)
    except FieldError as exc:
        raise UsageError(str(exc)) from exc


def _emit(args, payload: dict, table: list[tuple[str, Any]] | None = None):
    if args.format == "json":
        text = dumps(payload)
    else:
        rows = table if table is not None else [(k, v) for k, v in payload.items() if not isinstance(v, (list, dict))]
        width = max((len(k) for k, _ in rows), default=0)
        text = "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# -- verbs -------------------------------------------------------------------

def cmd_construct(args) -> int:
    fam = args.family
    if fam == "glynn":
        A = arcmod.glynn_arc()
    elif fam == "twelve":
        A = arcmod.twelve_arc()
    else:
        F = _field(args)
        if fam in ("nrc", "conic"):
            A = arcmod.nrc(F, 3 if fam == "conic" else args.k)
        elif fam == "segre3space":
            A = arcmod.segre_3space(F, args.e or 1)
        elif fam == "kestenband":
            A = arcmod.kestenband_arc(F)
        else:
            A = arcmod.hyperoval(F, OPolynomial(fam, e=args.e))
    payload = arc_to_json(A)
    _emit(args, payload, [("family", fam), ("q", A.q), ("k", A.k), ("size", len(A)), ("t", A.t)]
          if args.format == "table" else None)
    return EXIT_OK


def cmd_verify(args) -> int:
    A = load_arc(args.arc)
    chk = arcmod.is_arc(A.field, A.M, A.k)
    payload = {"is_arc": chk.ok, "size": len(A), "k": A.k, "q": A.q,
               "witness": list(chk.witness) if chk.witness else None}
    if chk.ok:
        payload["t"] = A.t
        if args.complete:
            payload["complete"] = arcmod.is_complete(A)
        if args.tangent_count and A.k >= 3:
            payload["tangent_count_ok"] = arcmod.tangent_count_check(A)
    _emit(args, payload)
    ok = chk.ok and payload.get("tangent_count_ok", True)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_tangents(args) -> int:
    from .tangent import build_scaled_system, sweep_delta, sweep_lemma, sweep_scaled, sweep_sums

    A = load_arc(args.arc)
    sysm = build_scaled_system(A)
    checks = args.verify or ["lemma", "scaled", "sums"]
    sweeps = {"lemma": sweep_lemma, "scaled": sweep_scaled, "sums": sweep_sums, "delta": sweep_delta}
    reports = [sweeps[c](sysm) for c in checks]
    payload = {"t": A.t, "reports": [r.to_json() for r in reports]}
    _emit(args, payload, [(r.name, f"{r.passed}/{r.total}" + ("" if r.ok else f"  first failure {r.first_failure}"))
                          for r in reports])
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def cmd_envelope(args) -> int:
    from .envelope import complete_via_envelope, linear_factors, sbbt_envelope

    A = load_arc(args.arc)
    env = sbbt_envelope(A)
    payload = env.to_json()
    payload["linear_factors"] = [{"form": list(c), "multiplicity": m} for c, m in linear_factors(env.phi)]
    table = [("m", env.m), ("t", env.t), ("degree", env.degree), ("phi", repr(env.phi)),
             ("linear factors", len(payload["linear_factors"]))]
    if args.complete:
        B = complete_via_envelope(A, env)
        payload["completed"] = arc_to_json(B)
        table.append(("completed size", len(B)))
    _emit(args, payload, table)
    return EXIT_OK


def cmd_extend(args) -> int:
    from .extend import extendability_verdict

    A = load_arc(args.arc)
    v = extendability_verdict(A, args.target, max_witnesses=args.max_witnesses)
    _emit(args, v.to_json())
    return EXIT_OK


def cmd_classify(args) -> int:
    from .classify import census, is_conic_arc

    F = _field(args)
    rep = census(F, args.k, args.size, args.complete, checkpoint=args.checkpoint, jobs=args.jobs)
    payload = rep.to_json()
    if args.k == 3 and args.size >= 5:
        payload["on_conic"] = [is_conic_arc(A) for A in rep.representatives]
    payload["representatives"] = [vectors_to_json(F, A.M) for A in rep.representatives]
    table = [("q", F.q), ("k", args.k), ("size", args.size), ("complete only", args.complete),
             ("classes", rep.count), ("nodes", rep.stats["nodes"]), ("seconds", rep.stats["seconds"])]
    _emit(args, payload, table)
    return EXIT_OK


def cmd_dual(args) -> int:
    A = load_arc(args.arc)
    D = arcmod.dual_arc(A)
    _emit(args, arc_to_json(D), [("size", len(D)), ("k", D.k), ("is_arc", bool(arcmod.is_arc(D.field, D.M)))]
          if args.format == "table" else None)
    return EXIT_OK


def cmd_code(args) -> int:
    from .codes import code_from_arc, dual_code, min_distance

    A = load_arc(args.arc)
    C = code_from_arc(A)
    if args.dual:
        C = dual_code(C)
    d = min_distance(C)
    payload = {"n": C.n, "k": C.k, "d": d, "mds": d == C.n - C.k + 1, "code": code_to_json(C)}
    _emit(args, payload)
    return EXIT_OK if payload["mds"] else EXIT_FAIL


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for any sampled sweep")
    common.add_argument("--jobs", type=int, default=1, help="worker cap (searches run in one process)")
    common.add_argument("--out", help="write output to this file")

    p = _Parser(prog="arclab", description="Arcs in finite projective spaces.")
    sub = p.add_subparsers(dest="verb", parser_class=_Parser)

    c = sub.add_parser("construct", parents=[common], help="build a named arc")
    c.add_argument("--family", required=True, choices=CONSTRUCTIONS)
    c.add_argument("--q", type=int)
    c.add_argument("--k", type=int, default=3)
    c.add_argument("--e", type=int, help="exponent parameter (translation, segre3space)")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", parents=[common], help="check the arc property")
    v.add_argument("--arc", required=True)
    v.add_argument("--complete", action="store_true", help="also test completeness")
    v.add_argument("--tangent-count", action="store_true", help="also count tangents per (k-2)-subset")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("tangents", parents=[common], help="tangent identities and sum equations")
    t.add_argument("--arc", required=True)
    t.add_argument("--verify", action="append", choices=("lemma", "scaled", "sums", "delta"))
    t.set_defaults(func=cmd_tangents)

    e = sub.add_parser("envelope", parents=[common], help="dual envelope form")
    e.add_argument("--arc", required=True)
    e.add_argument("--complete", action="store_true")
    e.set_defaults(func=cmd_envelope)

    x = sub.add_parser("extend", parents=[common], help="linear extendability test")
    x.add_argument("--arc", required=True)
    x.add_argument("--target", type=int, required=True)
    x.add_argument("--max-witnesses", type=int, default=16)
    x.set_defaults(func=cmd_extend)

    k = sub.add_parser("classify", parents=[common], help="census of arcs up to equivalence")
    k.add_argument("--q", type=int, required=True)
    k.add_argument("--k", type=int, default=3)
    k.add_argument("--size", type=int, required=True)
    k.add_argument("--complete", action="store_true")
    k.add_argument("--checkpoint")
    k.set_defaults(func=cmd_classify)

    d = sub.add_parser("dual", parents=[common], help="dual arc")
    d.add_argument("--arc", required=True)
    d.set_defaults(func=cmd_dual)

    cd = sub.add_parser("code", parents=[common], help="code parameters of an arc")
    cd.add_argument("--arc", required=True)
    cd.add_argument("--dual", action="store_true")
    cd.set_defaults(func=cmd_code)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.verb:
            parser.print_usage(sys.stderr)
            raise UsageError("missing verb")
        random.seed(args.seed)
        return args.func(args)
    except UsageError as exc:
        print(f"arclab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArcError, FieldError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"arclab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
