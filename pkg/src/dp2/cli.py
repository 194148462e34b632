"""Batch command-line interface.

Commands: classify, phi, curve, generate, oracle, verify.  Output is
JSON-lines by default (`--format pretty` switches to an indented document).
Exit codes: 0 success, 1 usage/parse error, 2 domain/hypothesis failure,
3 internal degeneracy.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import covers, fforacle
from .errors import (
    BadParameter,
    BadPrime,
    DP2Error,
    EliminationDegenerate,
    UnexpectedDimension,
)
from .geometry import (
    SEC_MONOMIALS,
    classify_point,
    c_p_point,
    osculating_section,
    phi,
    phi_domain,
)
from .surface import PointDP2, SurfaceDP2, on_surface

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_DEGENERATE = 3

_DEGENERATE = (EliminationDegenerate, UnexpectedDimension)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> _Parser:
    parser = _Parser(prog="dp2", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--surface", required=True, help="surface JSON file")
        p.add_argument("--format", choices=["jsonl", "pretty"], default="jsonl")
        p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("classify", help="classify a rational point")
    common(p)
    p.add_argument("--point", required=True, help="point as x:y:z:w")

    p = sub.add_parser("phi", help="evaluate the point procedure phi(P, Q)")
    common(p)
    p.add_argument("--point", action="append", required=True, help="give twice: P then Q")

    p = sub.add_parser("curve", help="osculating section and a point of C_P")
    common(p)
    p.add_argument("--point", required=True, help="very general base point P")
    p.add_argument("--param", default="1:2", help="pencil parameter u:v")

    p = sub.add_parser("generate", help="seeded point generation through a cover")
    common(p)
    p.add_argument("--point", default=None, help="base point P0 (searched if omitted or unsuitable)")
    p.add_argument("--cover", choices=["f1", "f2", "f3", "f6"], default="f2")
    p.add_argument("--budget", type=int, default=100)
    p.add_argument("--height-bound", type=int, default=10**1000)
    p.add_argument("--seed", type=int, default=1)

    p = sub.add_parser("oracle", help="finite-field oracles per prime")
    common(p)
    p.add_argument("--primes", default="5,7,11,13", help="comma-separated primes")
    p.add_argument("--seed", type=int, default=1)

    p = sub.add_parser("verify", help="run the seeded invariant suite")
    common(p)
    p.add_argument("--seed", type=int, default=1)
    return parser


def _emit(records, fmt):
    if fmt == "pretty":
        print(json.dumps(records if len(records) != 1 else records[0], indent=2))
    else:
        for rec in records:
            print(json.dumps(rec, separators=(",", ":")))


def _parse_point(text: str) -> PointDP2:
    try:
        return PointDP2.parse(text)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


class _UsageError(Exception):
    pass


def _load_surface(path: str) -> SurfaceDP2:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read surface file: {exc}") from exc
    try:
        json.loads(text)
    except json.JSONDecodeError as exc:
        raise _UsageError(f"surface file is not valid JSON: {exc}") from exc
    from .surface import parse_surface

    return parse_surface(text)


def _require_on_surface(S: SurfaceDP2, P: PointDP2) -> PointDP2:
    return on_surface(S, P.x, P.y, P.z, P.w)


# ---------------------------------------------------------------------------
# commands


def cmd_classify(args) -> int:
    S = _load_surface(args.surface)
    P = _require_on_surface(S, _parse_point(args.point))
    cls = classify_point(S, P)
    _emit([{"command": "classify", "point": str(P), "classification": cls.as_dict()}], args.format)
    return EXIT_OK


def cmd_phi(args) -> int:
    S = _load_surface(args.surface)
    if len(args.point) != 2:
        raise _UsageError("phi needs exactly two --point arguments")
    P = _require_on_surface(S, _parse_point(args.point[0]))
    Q = _require_on_surface(S, _parse_point(args.point[1]))
    verdict = phi_domain(S, P, Q)
    rec = {"command": "phi", "P": str(P), "Q": str(Q), "domain": verdict.as_dict()}
    try:
        R = phi(S, P, Q)
    except DP2Error as exc:
        rec["error"] = {"type": type(exc).__name__, "message": str(exc)}
        _emit([rec], args.format)
        return EXIT_DEGENERATE if isinstance(exc, _DEGENERATE) else EXIT_DOMAIN
    rec["result"] = str(R)
    _emit([rec], args.format)
    return EXIT_OK


def _parse_param(text: str) -> tuple[int, int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise _UsageError(f"parameter must be u:v, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def cmd_curve(args) -> int:
    S = _load_surface(args.surface)
    P = _require_on_surface(S, _parse_point(args.point))
    param = _parse_param(args.param)
    section = osculating_section(S, P)
    R = c_p_point(S, P, param)
    rec = {
        "command": "curve",
        "P": str(P),
        "param": f"{param[0]}:{param[1]}",
        "section": {
            "lambda": section.lam,
            "q2": [[i, j, k, str(section.q2.coeff(i, j, k))] for (i, j, k) in SEC_MONOMIALS],
        },
        "point": str(R),
        "section_vanishes_at_point": section.evaluate(R) == 0,
    }
    _emit([rec], args.format)
    return EXIT_OK


def cmd_generate(args) -> int:
    S = _load_surface(args.surface)
    P0 = _parse_point(args.point) if args.point else None
    if P0 is not None:
        P0 = _require_on_surface(S, P0)
    ctx = covers.context_for(S, P0)
    points, stats = covers.generate_points_with_stats(
        ctx, args.cover, args.budget, args.height_bound, args.seed, jobs=args.jobs
    )
    records = [
        {
            "point": str(gp.point),
            "height": gp.height,
            "cover": gp.cover,
            "params": str(gp.params),
        }
        for gp in points
    ]
    sample = [gp.point for gp in points[:30]]
    summary = {
        "summary": {
            "P0": str(ctx.P0),
            "cover": args.cover,
            "budget": args.budget,
            "seed": args.seed,
            "rng": stats.rng,
            "attempted": stats.attempted,
            "succeeded": stats.succeeded,
            "failed": stats.failed,
            "distinct": stats.distinct,
            "filtered": stats.filtered,
            "rank_minus2K_first30": covers.rank_minus2K(sample) if sample else 0,
            "rank_minusK_first30": covers.rank_minusK(sample) if sample else 0,
        }
    }
    _emit(records + [summary], args.format)
    return EXIT_OK


def _oracle_instance(S: SurfaceDP2):
    """A deterministic exact phi computation used for the base-locus check."""
    ctx = covers.context_for(S)
    last = None
    for param in [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3)]:
        try:
            Q = covers.f1(ctx, param)
            R = phi(S, ctx.P0, Q)
            return ctx.P0, Q, R
        except DP2Error as exc:
            last = exc
    raise BadParameter(f"no usable phi instance found: {last}")


def cmd_oracle(args) -> int:
    S = _load_surface(args.surface)
    try:
        primes = [int(t) for t in args.primes.split(",") if t.strip()]
    except ValueError as exc:
        raise _UsageError(f"bad prime list: {exc}") from exc
    try:
        P, Q, R = _oracle_instance(S)
        instance = {"P": str(P), "Q": str(Q), "R": str(R)}
    except DP2Error as exc:
        P = Q = R = None
        instance = {"error": str(exc)}
    records = []
    for p in primes:
        rec = {"p": p}
        try:
            Sp = fforacle.reduce_surface(S, p)
        except BadPrime as exc:
            rec.update({"good": False, "error": str(exc)})
            records.append(rec)
            continue
        N = len(Sp.points())
        rec.update({
            "good": True,
            "N_p": N,
            "weil_band_ok": abs(N - p * p - 1) <= 8 * p,
        })
        if P is not None:
            try:
                rec["base_locus_confirms_phi"] = fforacle.base_locus_oracle(S, p, P, Q, R)
            except (BadPrime, UnexpectedDimension) as exc:
                rec["base_locus_confirms_phi"] = None
                rec["base_locus_note"] = str(exc)
        if p <= 31:
            try:
                rep = fforacle.phi_surjectivity(S, p)
                rec["surjectivity"] = rep.as_dict()
            except BadPrime as exc:
                rec["surjectivity_note"] = str(exc)
        records.append(rec)
    records.append({"instance": instance})
    _emit(records, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .surface import geiser

    S = _load_surface(args.surface)
    ctx = covers.context_for(S)
    results = []

    def prop(name, samples, passed):
        results.append({"property": name, "samples": samples, "passed": passed, "ok": samples == passed})

    # Geiser involution on generated points
    pts = [gp.point for gp in covers.generate_points(ctx, "f1", 60, 10**1000, args.seed)]
    pts.append(ctx.P0)
    ok = sum(1 for P in pts if geiser(S, geiser(S, P)) == P)
    prop("geiser_involution", len(pts), ok)

    # phi involution on U_inv pairs (P0, Q) with Q from f2
    qs = [gp.point for gp in covers.generate_points(ctx, "f2", 40, 10**1000, args.seed)]
    pairs = [(ctx.P0, Q) for Q in qs if covers.in_u_inv(ctx, Q)][:20]
    ok = 0
    for P, Q in pairs:
        try:
            R = phi(S, P, Q)
            if covers.in_u_inv(ctx, R) and phi(S, P, R) == Q:
                ok += 1
        except DP2Error:
            pass
    prop("phi_involution", len(pairs), ok)

    # origin independence
    ok = 0
    for P, Q in pairs:
        try:
            if phi(S, P, Q, origin="P") == phi(S, P, Q, origin="Q"):
                ok += 1
        except DP2Error:
            pass
    prop("origin_independence", len(pairs), ok)

    # C_P cross-construction agreement
    params = [(1, k) for k in range(1, 11)] + [(k, 1) for k in range(2, 12)]
    ok = n = 0
    for param in params:
        try:
            R = covers.f1(ctx, param)
        except DP2Error:
            continue
        n += 1
        if ctx.section.evaluate(R) == 0:
            ok += 1
    prop("cp_section_agreement", n, ok)

    # dominance rank proxy
    sample = [gp.point for gp in covers.generate_points(ctx, "f2", 60, 10**1000, args.seed)[:30]]
    r7 = covers.rank_minus2K(sample) if len(sample) >= 7 else 0
    r3 = covers.rank_minusK(sample) if len(sample) >= 3 else 0
    prop("rank_minus2K_is_7", 1, 1 if r7 == 7 else 0)
    prop("rank_minusK_is_3", 1, 1 if r3 == 3 else 0)

    all_ok = all(r["ok"] for r in results)
    _emit(results + [{"all_ok": all_ok, "P0": str(ctx.P0), "seed": args.seed}], args.format)
    return EXIT_OK if all_ok else EXIT_DOMAIN


_COMMANDS = {
    "classify": cmd_classify,
    "phi": cmd_phi,
    "curve": cmd_curve,
    "generate": cmd_generate,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"dp2: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _DEGENERATE as exc:
        print(f"dp2: degenerate: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except DP2Error as exc:
        print(f"dp2: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    raise SystemExit(main())
