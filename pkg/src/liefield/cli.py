"""``liefield`` command-line frontend.

Exit codes: 0 success, 1 failed verification, 2 usage or parse error,
3 resource exhaustion.  Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import certify, liestruct, realize
from .grammar import ParseError, parse_field
from .polys import ResourceExhausted
from .roots import (
    RootSystemError,
    build,
    format_root,
    highest_root,
    obstruction_witness,
    orthogonal_a1_subset,
    parse_label,
)
from .serialize import field_to_json, subalgebra_to_json
from .vfield import bracket

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


class VerificationFailed(RuntimeError):
    pass


def _emit(args, text_lines: Sequence[str], payload: dict) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _need_dim(args) -> int:
    if args.dim is None:
        raise UsageError("--dim is required for this subcommand")
    if args.dim < 1:
        raise UsageError("--dim must be positive")
    return args.dim


def _fields(args, texts):
    n = _need_dim(args)
    return [parse_field(t, n) for t in texts]


def _factors(text: str | None) -> list[str]:
    if not text:
        raise UsageError("--factors is required (comma-separated, e.g. A2,A1)")
    out = []
    for part in text.split(","):
        part = part.strip()
        try:
            out.append("{}{}".format(*parse_label(part)))
        except (RootSystemError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
    return out


def _cartan_indices(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        idx = [int(t) - 1 for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"--cartan expects 1-based basis indices: {exc}") from exc
    if not idx or min(idx) < 0:
        raise UsageError("--cartan expects positive 1-based basis indices")
    return idx


# -- subcommands ---------------------------------------------------------------------------


def cmd_bracket(args) -> int:
    X, Y = _fields(args, [args.X, args.Y])
    Z = bracket(X, Y)
    _emit(args, [str(Z)], {"bracket": field_to_json(Z), "text": str(Z)})
    return EXIT_OK


def _closure(args):
    gens = _fields(args, args.fields)
    if not gens:
        raise UsageError("need at least one generator")
    return liestruct.span_closure(gens, max_dim=args.max_dim)


def cmd_closure(args) -> int:
    A = _closure(args)
    lines = [f"dimension {A.dim}"]
    lines += [f"e{a + 1} = {X}" for a, X in enumerate(A.basis)]
    for (a, b), coords in sorted(A.structure.items()):
        if a < b:
            rhs = " + ".join(f"({v})*e{c + 1}" for c, v in sorted(coords.items()))
            lines.append(f"[e{a + 1},e{b + 1}] = {rhs}")
    _emit(args, lines, subalgebra_to_json(A))
    return EXIT_OK


def cmd_analyze(args) -> int:
    A = _closure(args)
    det = liestruct.killing_determinant(A)
    rank = liestruct.generic_rank(A, seed=args.seed)
    lines = [f"dimension {A.dim}", f"killing determinant {det}",
             f"semisimple {'yes' if det else 'no'}", f"generic rank {rank}"]
    payload = subalgebra_to_json(A, killing_det=det)
    payload.update({"semisimple": bool(det), "generic_rank": rank})
    cartan = _cartan_indices(args.cartan)
    if cartan is not None:
        if max(cartan) >= A.dim:
            raise UsageError(f"--cartan index out of range (dimension {A.dim})")
        try:
            cd = liestruct.root_decomposition(A, cartan)
            types = liestruct.identify_type(cd)
        except (liestruct.DecompositionError, liestruct.TypeIdentificationError) as exc:
            raise VerificationFailed(str(exc)) from exc
        roots = [[str(x) for x in r] for r in cd.roots]
        lines.append(f"roots {len(cd.roots)}")
        lines.append("type " + " x ".join(types))
        payload.update({"roots": roots, "type": types})
    _emit(args, lines, payload)
    return EXIT_OK


def _build_realization(args) -> realize.Realization:
    factors = _factors(args.factors)
    ranks = []
    for f in factors:
        typ, rank = parse_label(f)
        if typ != "A":
            raise UsageError(f"only A-type factors have realizations here; got {f} (try certify)")
        ranks.append(rank)
    n = _need_dim(args)
    if sum(ranks) != n:
        raise UsageError(f"factor ranks sum to {sum(ranks)}, not --dim {n}")
    return realize.product(ranks)


def _realization_lines(r: realize.Realization) -> list[str]:
    lines = [f"type {' x '.join(r.declared_type)} on C^{r.ambient_dim} (chart {r.chart})"]
    for name, X in r.generators.items():
        lines.append(f"{name} = {X}")
    lines.append("cartan: " + ", ".join(str(h) for h in r.cartan))
    return lines


def _audit_lines(rep: realize.AuditReport) -> list[str]:
    lines = [f"  {'ok  ' if ok else 'FAIL'} {name}" + (f" ({d})" if d else "")
             for name, ok, d in rep.checks]
    lines.append(f"audit {'PASS' if rep.passed else 'FAIL'}")
    return lines


def cmd_realize(args) -> int:
    r = _build_realization(args)
    if args.straighten:
        r = realize.straighten(r)
    lines = _realization_lines(r)
    payload = {"realization": certify.realization_json(r)}
    code = EXIT_OK
    if args.audit:
        rep = realize.audit(r, seed=args.seed, max_dim=args.max_dim)
        lines += _audit_lines(rep)
        payload["audit"] = rep.to_json()
        code = EXIT_OK if rep.passed else EXIT_FAILED
    _emit(args, lines, payload)
    return code


def cmd_straighten(args) -> int:
    r = _build_realization(args)
    s = realize.straighten(r)
    lines = _realization_lines(s)
    shapes = {name: realize.is_e1_shape(X) for name, X in s.generators.items() if name[0] in "XY"}
    A, B = r.closure(args.max_dim), s.closure(args.max_dim)
    preserved = A.structure == B.structure
    lines.append(f"root vectors in exp(<k,u>)*(constant) form: {'yes' if all(shapes.values()) else 'no'}")
    lines.append(f"structure constants preserved: {'yes' if preserved else 'no'}")
    payload = {"realization": certify.realization_json(s), "e1_shape": shapes,
               "structure_preserved": preserved}
    _emit(args, lines, payload)
    return EXIT_OK if preserved and all(shapes.values()) else EXIT_FAILED


def cmd_certify(args) -> int:
    if args.pairwise is not None:
        if args.pairwise < 1:
            raise UsageError("--pairwise needs N >= 1")
        diag = [certify.diagonal_nonvanishing(max(args.pairwise, 1), 1, w) for w in ("l", "m")]
        res = certify.pairwise_reduce(args.pairwise) if args.pairwise >= 2 else {
            "N": args.pairwise, "pairs": [], "forced_zero": [], "verified": True}
        ok = res["verified"] and all(d["verified"] for d in diag)
        lines = [f"{d['variable']} = 0 contradicts the eigen-relations: "
                 f"{'yes' if d['verified'] else 'no'}" for d in diag]
        for p in res["pairs"]:
            lines.append(f"pair {p['pair'][0]},{p['pair'][1]}: {p['result']['classification']} "
                         + " ".join(p["result"]["forced_zero"]))
        lines.append(f"off-diagonal unknowns forced to zero: {'yes' if ok else 'no'}")
        _emit(args, lines, {"diagonal": diag, "pairwise": res, "verified": ok})
        return EXIT_OK if ok else EXIT_FAILED
    factors = _factors(args.factors)
    n = _need_dim(args)
    try:
        cert = certify.classify(factors, n, seed=args.seed)
    except certify.CertificationError as exc:
        raise VerificationFailed(str(exc)) from exc
    ok = certify.verify_certificate(cert, seed=args.seed)
    lines = [f"factors {' x '.join(cert.factors)} on C^{n}", *cert.transcript,
             f"verdict {cert.verdict}", f"certificate re-verified: {'yes' if ok else 'no'}"]
    payload = cert.to_json()
    payload["reverified"] = ok
    _emit(args, lines, payload)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_roots(args) -> int:
    try:
        typ, rank = parse_label(args.type)
        rs = build(typ, rank)
    except (RootSystemError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    hr = highest_root(rs)
    lines = [f"type {rs.label}", f"positive roots {len(rs.positive_roots)}",
             "cartan matrix:"] + ["  " + " ".join(f"{x:2d}" for x in row) for row in rs.cartan_matrix]
    lines.append(f"highest root {format_root(hr)}")
    payload = rs.to_json()
    payload["highest_root"] = list(hr)
    if args.diagram:
        lines += ["", rs.diagram().ascii()]
    if args.list:
        lines += [f"  {format_root(r)}" for r in rs.positive_roots]
    if args.orthogonal is not None:
        sub = orthogonal_a1_subset(rs, args.orthogonal)
        lines.append("orthogonal roots: " + ("none" if sub is None else ", ".join(format_root(r) for r in sub)))
        payload["orthogonal_roots"] = None if sub is None else [list(r) for r in sub]
    if args.witness:
        w = obstruction_witness(typ, rank)
        ok = w.verify()
        lines.append(f"witness: {w.kind} ({w.reason}); verified: {'yes' if ok else 'no'}")
        payload["witness"] = w.to_json()
        payload["witness_verified"] = ok
        if not ok:
            _emit(args, lines, payload)
            return EXIT_FAILED
    _emit(args, lines, payload)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------------


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, help="ambient dimension N")
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=_u64, default=0, help="seed for generic-rank sampling")
    common.add_argument("--max-dim", type=int, default=liestruct.DEFAULT_MAX_DIM,
                        help="closure dimension cap")
    p = argparse.ArgumentParser(prog="liefield", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bracket", parents=[common], help="Lie bracket of two fields")
    s.add_argument("X")
    s.add_argument("Y")
    s.set_defaults(func=cmd_bracket)

    s = sub.add_parser("closure", parents=[common], help="bracket closure of generators")
    s.add_argument("fields", nargs="+")
    s.set_defaults(func=cmd_closure)

    s = sub.add_parser("analyze", parents=[common], help="Killing form, rank and type")
    s.add_argument("fields", nargs="+")
    s.add_argument("--cartan", help="1-based basis indices of a commuting family")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("realize", parents=[common], help="canonical A-type product realization")
    s.add_argument("--factors")
    s.add_argument("--audit", action="store_true")
    s.add_argument("--straighten", action="store_true")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("straighten", parents=[common], help="torus chart of a realization")
    s.add_argument("--factors")
    s.set_defaults(func=cmd_straighten)

    s = sub.add_parser("certify", parents=[common], help="classification certificate")
    s.add_argument("--factors")
    s.add_argument("--pairwise", type=int, metavar="N",
                   help="run the pairwise A1^N constraint reduction instead")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("roots", parents=[common], help="root system queries")
    s.add_argument("type", help="simple type, e.g. D4")
    s.add_argument("--diagram", action="store_true")
    s.add_argument("--list", action="store_true", help="list positive roots")
    s.add_argument("--orthogonal", type=int, metavar="K", help="find K mutually orthogonal roots")
    s.add_argument("--witness", action="store_true", help="B2/G2/D4 obstruction witness")
    s.set_defaults(func=cmd_roots)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.max_dim < 1:
        print("error: --max-dim must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ParseError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (liestruct.ClosureError, ResourceExhausted) as exc:
        print(f"resource exhausted: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (VerificationFailed, certify.CertificationError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
