"""Command-line front end.

Exit codes: 0 on success, 2 when a pipeline reports a certificate failure
(or a report does not verify), 1 on usage errors.  JSON goes to stdout or
to ``--out``; keys are sorted so equal inputs give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .complexes import FreeComplex, complex_from_json, document, map_from_json
from .errors import CertificateFailure, InvalidInput, UnsupportedGenerator
from .groebner import groebner_basis
from .level import (SCHEMA_VERSION, ghost_certificate, level_upper_bound, rdim_report,
                    replay_certificate, verify_depth_leq_gentime)
from .koszul import koszul_object
from .modules import ModulePresentation, depth
from .poly import Poly, RingSpec, format_ring, parse_ring


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p):
    p.add_argument("--ring", default="Fp[2],p=32003", help="Fp[n],p=<prime> or Q[n]")
    p.add_argument("--order", default="grevlex", choices=["grevlex", "lex"])
    p.add_argument("--out", help="write JSON here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ghostlevel", description="ghost-lemma certificates and level bounds")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ghost-cert", help="ghost certificate for a Koszul tower")
    _common(p)
    p.add_argument("--seq", required=True, help="comma separated elements, e.g. x0,x1")
    p.add_argument("--generator", help="JSON file with the generator complex (default A)")
    p.add_argument("--module", help="JSON file with the base complex M (default A)")
    p.add_argument("--exponents", help="override exponents, e.g. 0,1")

    p = sub.add_parser("depth", help="a-depth via Koszul homology")
    _common(p)
    p.add_argument("--ideal", required=True)
    p.add_argument("--module", help="JSON file: a presentation or a complex (default A)")

    p = sub.add_parser("level", help="level bounds for the generator A")
    _common(p)
    p.add_argument("--target", required=True, help="koszul:x0,x1 or a JSON file")

    p = sub.add_parser("verify-theorem", help="Rdim report for F_p[x_0..x_{n-1}]")
    p.add_argument("--nvars", type=int, required=True)
    p.add_argument("--prime", type=int, default=32003)
    p.add_argument("--order", default="grevlex", choices=["grevlex", "lex"])
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--generator", action="append", default=[], help="extra candidate generator (repeatable)")
    p.add_argument("--out")

    p = sub.add_parser("replay", help="re-check a certificate JSON file")
    p.add_argument("certificate")
    p.add_argument("--out")

    p = sub.add_parser("groebner", help="reduced Gröbner basis of an ideal")
    _common(p)
    p.add_argument("--gens", required=True)
    return ap


# ---------------------------------------------------------------------------
# argument decoding

def _split(text):
    return [t.strip() for t in text.split(",") if t.strip()]


def _flag(flag, fn, *args):
    try:
        return fn(*args)
    except (InvalidInput, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _ring(args) -> RingSpec:
    return _flag("--ring", parse_ring, args.ring, args.order)


def _polys(flag, ring, text):
    items = _split(text)
    if not items:
        raise UsageError(f"{flag}: empty list")
    return _flag(flag, lambda: [Poly.parse(ring, s) for s in items])


def _load(flag, path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"{flag}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{flag}: invalid JSON ({exc})") from None


def _check_ring(flag, ring, doc):
    if "ring" in doc and parse_ring(doc["ring"], ring.order) != ring:
        raise UsageError(f"{flag}: file ring {doc['ring']} differs from --ring {format_ring(ring)}")


def _complex(flag, ring, path) -> FreeComplex:
    doc = _load(flag, path)
    _flag(flag, _check_ring, flag, ring, doc)
    data = doc.get("complex", doc)
    return _flag(flag, complex_from_json, ring, data)


def _module(flag, ring, path):
    """A presentation ({ambient_rank, relations}) or a complex (depth of Hom*(M, M))."""
    doc = _load(flag, path)
    _check_ring(flag, ring, doc)
    if "relations" in doc:
        k = doc["ambient_rank"]
        rows = doc["relations"]
        cols = len(rows[0]) if rows else 0
        return _flag(flag, lambda: ModulePresentation(ring, k, map_from_json(ring, rows, k, cols)))
    return _flag(flag, complex_from_json, ring, doc.get("complex", doc))


# ---------------------------------------------------------------------------
# commands

def _cmd_ghost_cert(args):
    ring = _ring(args)
    xs = _polys("--seq", ring, args.seq)
    A = FreeComplex.free(ring)
    G = _complex("--generator", ring, args.generator) if args.generator else A
    M = _complex("--module", ring, args.module) if args.module else A
    ns = None
    if args.exponents:
        ns = _flag("--exponents", lambda: [int(t) for t in _split(args.exponents)])
        if len(ns) != len(xs) or any(n < 0 for n in ns):
            raise UsageError("--exponents: need one natural number per element of --seq")
    try:
        cert = ghost_certificate(G, M, xs, ns)
    except CertificateFailure as exc:
        return 2, document(ring, {"schema_version": SCHEMA_VERSION, **exc.to_json()})
    if G == A:
        _, plan = level_upper_bound(A, cert.tower.top)
        cert = cert.with_plans(plan)
    return 0, cert.to_json()


def _cmd_depth(args):
    ring = _ring(args)
    a = _polys("--ideal", ring, args.ideal)
    M = _module("--module", ring, args.module) if args.module else ModulePresentation.free(ring)
    payload = {"schema_version": SCHEMA_VERSION, "ideal": [str(x) for x in a]}
    if isinstance(M, FreeComplex):
        payload["module"] = "Hom*(M,M)"
        try:
            rep = verify_depth_leq_gentime(FreeComplex.free(ring), M, a)
            payload.update(depth=rep["depth"], certificate_length=rep["certificate_length"])
            return 0, document(ring, payload)
        except CertificateFailure as exc:
            if exc.kind != "PreconditionFailed":
                return 2, document(ring, {**payload, **exc.to_json()})
        from .complexes import graded_hom
        d = depth(a, graded_hom(M, M), ring)
    else:
        payload["module"] = "presentation"
        d = depth(a, M)
    payload["depth"] = "infinity" if d == math.inf else d
    return 0, document(ring, payload)


def _cmd_level(args):
    ring = _ring(args)
    A = FreeComplex.free(ring)
    payload = {"schema_version": SCHEMA_VERSION, "generator": "A"}
    if args.target.startswith("koszul:"):
        xs = _polys("--target", ring, args.target[len("koszul:"):])
        X = koszul_object(A, xs)
        payload["target"] = {"koszul": [str(x) for x in xs]}
        try:
            cert = ghost_certificate(A, A, xs)
            payload["level_lower_bound"] = cert.implied_level_lower_bound
        except CertificateFailure as exc:
            payload["level_lower_bound"] = 1 if not X.is_zero_object() else 0
            payload["lower_bound_failure"] = exc.kind
    else:
        X = _complex("--target", ring, args.target)
        payload["target"] = {"file": Path(args.target).name}
    try:
        u, plan = level_upper_bound(A, X)
    except UnsupportedGenerator as exc:
        raise UsageError(str(exc)) from None
    payload["level_upper_bound"] = u
    payload["build_plan"] = plan.to_json()
    if "level_lower_bound" in payload:
        payload["level_exact"] = payload["level_lower_bound"] == u
    return 0, document(ring, payload)


def _cmd_verify(args):
    if args.nvars < 0:
        raise UsageError("--nvars: must be non-negative")
    if args.samples < 0:
        raise UsageError("--samples: must be non-negative")
    ring = _flag("--prime", lambda: RingSpec(args.prime, args.nvars, args.order))
    gens = [_complex("--generator", ring, g) for g in args.generator]
    rep = _flag("--nvars", rdim_report, ring, args.samples, args.seed, gens)
    return (0 if rep["verified"] else 2), rep


def _cmd_replay(args):
    doc = _load("certificate", args.certificate)
    rep = _flag("certificate", replay_certificate, doc)
    return (0 if rep["valid"] else 2), rep


def _cmd_groebner(args):
    ring = _ring(args)
    gens = _polys("--gens", ring, args.gens)
    gb = groebner_basis(gens)
    return 0, document(ring, {"gens": [str(g) for g in gens], "basis": [str(g) for g in gb.polys]})


COMMANDS = {
    "ghost-cert": _cmd_ghost_cert,
    "depth": _cmd_depth,
    "level": _cmd_level,
    "verify-theorem": _cmd_verify,
    "replay": _cmd_replay,
    "groebner": _cmd_groebner,
}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        code, payload = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"ghostlevel: usage error: {exc}", file=sys.stderr)
        return 1
    text = dumps(payload)
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
