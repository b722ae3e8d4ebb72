"""Command line interface: ``galois-forge {forge,verify,torus,scan,ages}``.

Exit codes: 0 pass, 1 usage error, 2 check failed, 3 numerical failure.
JSON output is deterministic (sorted keys, no timestamps); exact integers and
rationals are written as decimal strings.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .errors import GaloisForgeError, IllConditioned, KMaxExceeded, NoConvergence, RealRootDetected
from .forge import REFERENCE_K, combine, forge, minimal_k, paper_example, paper_lifts
from .galois import frobenius_scan, scenic_check, symmetric_closure_oracle, ORACLE_MAX_DEGREE
from .intpoly import IntPoly
from .reidtai import GroupElement, QuasiReflectionPresent, classify, generate, local_model
from .torus import DEFAULT_TOL, period_matrix

EXIT_OK, EXIT_USAGE, EXIT_FAILED, EXIT_NUMERIC = 0, 1, 2, 3
SEED_ENV = "GALOIS_FORGE_SEED"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _resolve_seed(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={env!r} is not an integer") from None


def _read_poly(args) -> IntPoly:
    sources = [s for s in (args.poly, args.poly_opt) if s is not None]
    if args.file:
        sources.append(Path(args.file).read_text())
    if len(sources) != 1:
        raise UsageError("give exactly one polynomial (positional, --poly or --file)")
    try:
        return IntPoly.parse(sources[0])
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _document(command: str, params: dict, seed: int | None, ok: bool, result, **extra) -> dict:
    doc = {
        "version": __version__,
        "command": command,
        "params": params,
        "seed": None if seed is None else str(seed),
        "ok": ok,
        "result": result,
    }
    doc.update({k: v for k, v in extra.items() if v is not None})
    return doc


def _emit(doc: dict, as_json: bool, human: str) -> None:
    if as_json:
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(human.rstrip() + "\n")


def _cert_lines(cert) -> list[str]:
    lines = [f"scenic: {cert.scenic}"]
    if cert.vdw is not None:
        v = cert.vdw
        for p, shape, cond in ((2, v.shape2, v.cond1), (3, v.shape3, v.cond2), (5, v.shape5, v.cond3)):
            lines.append(f"  mod {p}: {list(shape.pairs)} squarefree={shape.squarefree} -> {'ok' if cond else 'FAIL'}")
    lines.append(f"  real roots (Sturm): {cert.real_root_count}")
    for failure in cert.failures:
        lines.append(f"  failed: {failure}")
    return lines


def cmd_forge(args) -> int:
    seed = _resolve_seed(args.seed)
    if args.paper_example:
        f = paper_example()
        f2, f3, f5 = paper_lifts()
        k_star = minimal_k(f2, f3, f5)
        cert = scenic_check(f)
        oracle = symmetric_closure_oracle(8, (3, 3))
        result = {
            "f": [str(c) for c in f.coeffs],
            "f2": [str(c) for c in f2.coeffs],
            "f3": [str(c) for c in f3.coeffs],
            "f5": [str(c) for c in f5.coeffs],
            "k": str(REFERENCE_K),
            "minimal_k": str(k_star),
            "reproduces": combine(f2, f3, f5, REFERENCE_K) == f,
            "closure_oracle": {"generates_symmetric_group": oracle[0], "order": str(oracle[1])},
        }
        ok = cert.scenic and result["reproduces"]
        human = "\n".join(
            [f"f = {f}", f"csv: {f.to_csv()}", f"reference k = {REFERENCE_K}, minimal k = {k_star}"] + _cert_lines(cert)
        )
        _emit(_document("forge", {"paper_example": True}, seed, ok, result, certificate=cert.to_json()), args.json, human)
        return EXIT_OK if ok else EXIT_FAILED

    d = args.degree
    if d is None:
        raise UsageError("--degree is required unless --paper-example is given")
    if d % 2 or d < 6:
        raise UsageError(f"--degree must be even and >= 6, got {d}")
    if d < 8:
        print(f"warning: degree {d} < 8 is below the smallest geometric case (n >= 4)", file=sys.stderr)
    k_max = None if args.k_max is None else args.k_max
    try:
        res = forge(d, seed, k_max=k_max)
    except KMaxExceeded as exc:
        _emit(_document("forge", {"degree": d, "k_max": args.k_max}, seed, False, {"error": str(exc)}), args.json, str(exc))
        return EXIT_FAILED
    result = res.to_json()
    if d <= ORACLE_MAX_DEGREE:
        ok_oracle, order = symmetric_closure_oracle(d, res.certificate.vdw.odd_split())
        result["closure_oracle"] = {"generates_symmetric_group": ok_oracle, "order": str(order)}
    else:
        result["closure_oracle"] = None
    params = {"degree": d, "k_max": None if args.k_max is None else str(args.k_max)}
    human = "\n".join([f"seed {seed}, degree {d}, k = {res.k}", f"f = {res.f}", f"csv: {res.f.to_csv()}"] + _cert_lines(res.certificate))
    _emit(_document("forge", params, seed, res.certificate.scenic, result, certificate=res.certificate.to_json()), args.json, human)
    return EXIT_OK if res.certificate.scenic else EXIT_FAILED


def cmd_verify(args) -> int:
    f = _read_poly(args)
    cert = scenic_check(f)
    human = "\n".join([f"f = {f}"] + _cert_lines(cert))
    _emit(_document("verify", {"poly": f.to_csv()}, _resolve_seed(None), cert.scenic, {"scenic": cert.scenic}, certificate=cert.to_json()), args.json, human)
    return EXIT_OK if cert.scenic else EXIT_FAILED


def cmd_torus(args) -> int:
    f = _read_poly(args)
    selection = None
    if args.select:
        if any(ch not in "+-" for ch in args.select):
            raise UsageError("--select takes a string of '+' (upper root) and '-' (lower root), one per pair")
        selection = [ch == "+" for ch in args.select]
    params = {"poly": f.to_csv(), "tol": repr(args.tol), "select": args.select}
    try:
        model = period_matrix(f, args.tol, require_scenic=False, selection=selection)
    except RealRootDetected as exc:
        _emit(_document("torus", params, _resolve_seed(None), False, {"error": "RealRootDetected", "detail": str(exc)}), args.json, f"RealRootDetected: {exc}")
        return EXIT_FAILED
    except (NoConvergence, IllConditioned) as exc:
        _emit(_document("torus", params, _resolve_seed(None), False, {"error": type(exc).__name__, "detail": str(exc)}), args.json, f"{type(exc).__name__}: {exc}")
        return EXIT_NUMERIC
    ok = model.ok()
    lines = [f"f = {f}", f"n = {model.n}, working precision {model.dps} digits"]
    lines += [f"  {k}: {v:.3e}" for k, v in model.residual_report.items()]
    lines.append("J (rounded):")
    lines += ["  " + " ".join(f"{v: .6g}" for v in row) for row in model.J]
    _emit(_document("torus", params, _resolve_seed(None), ok, model.to_json(), residuals=model.residual_report), args.json, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAILED


def cmd_scan(args) -> int:
    f = _read_poly(args)
    if args.workers < 1:
        raise UsageError("--workers must be positive")
    hist = frobenius_scan(f, args.prime_bound, workers=args.workers)
    # the worker count is deliberately left out so output is identical across counts
    params = {"poly": f.to_csv(), "prime_bound": args.prime_bound}
    doc = hist.to_json()
    lines = [f"f = {f}", f"primes used: {hist.primes_used}, ramified: {hist.ramified}"]
    lines += [f"  {k}: {v}" for k, v in doc["buckets"].items()]
    lines.append(f"irreducible fraction: {doc['irreducible_fraction']} = {doc['irreducible_fraction_float']:.5f}")
    _emit(_document("scan", params, _resolve_seed(None), True, doc), args.json, "\n".join(lines))
    return EXIT_OK


def _load_action_file(path: str):
    try:
        data = json.loads(Path(path).read_text())
        if isinstance(data, dict) and "generators" in data:
            data = data["generators"]
        if isinstance(data, dict):
            data = [data]
        return generate([GroupElement(int(g["order"]), [int(a) for a in g["rotations"]]) for g in data])
    except (OSError, ValueError, TypeError, KeyError) as exc:
        raise UsageError(f"cannot read action file {path}: {exc}") from None


def cmd_ages(args) -> int:
    if (args.model is None) == (args.file is None):
        raise UsageError("give exactly one of --model or --file")
    if args.model:
        try:
            variant, name = args.model.split("-")
            action = local_model(args.n, variant, name)
        except ValueError:
            raise UsageError(f"unknown model {args.model!r}; use base-i ... total-iii") from None
        params = {"model": args.model, "n": args.n}
    else:
        action = _load_action_file(args.file)
        params = {"file": args.file}
    try:
        result = classify(action)
    except QuasiReflectionPresent as exc:
        _emit(_document("ages", params, _resolve_seed(None), False, {"error": "QuasiReflectionPresent", "detail": str(exc)}), args.json, str(exc))
        return EXIT_FAILED
    doc = result.to_json()
    human = f"{result.verdict.value}; ages {', '.join(doc['ages'])}"
    _emit(_document("ages", params, _resolve_seed(None), True, doc), args.json, human)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="galois-forge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def poly_args(p):
        p.add_argument("poly", nargs="?", help="ascending coefficient CSV, e.g. 1,0,1")
        p.add_argument("--poly", dest="poly_opt", help="same as the positional (use for leading '-')")
        p.add_argument("--file", help="read the coefficient CSV from a file")
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("forge", help="build a scenic polynomial")
    p.add_argument("--degree", type=int)
    p.add_argument("--seed", type=int, help=f"defaults to ${SEED_ENV} or 0")
    p.add_argument("--k-max", type=int, default=None, help="upper limit for the constant shift (default: none)")
    p.add_argument("--paper-example", action="store_true", help="certify the reference degree-8 example")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_forge)

    p = sub.add_parser("verify", help="scenic certificate for a polynomial")
    poly_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("torus", help="period matrix and complex structure")
    poly_args(p)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--select", help="per conjugate pair: '+' upper or '-' lower root")
    p.set_defaults(func=cmd_torus)

    p = sub.add_parser("scan", help="Frobenius cycle-type histogram")
    poly_args(p)
    p.add_argument("--prime-bound", type=int, default=200_000)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("ages", help="Reid-Tai classification")
    p.add_argument("--model", help="base-i, base-ii, base-iii, total-i, total-ii or total-iii")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--file", help="JSON list of {order, rotations} generators")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ages)
    return parser


def _protect_negative_csv(argv: list[str]) -> list[str]:
    """Let ``-1,0,1`` through argparse, which would otherwise read it as a flag."""
    out = []
    for tok in argv:
        if len(tok) > 1 and tok[0] in "-−" and "," in tok and tok[1] not in "-":
            if out and out[-1] == "--poly":
                out[-1] = f"--poly={tok}"
                continue
            tok = f"--poly={tok}"
        out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_protect_negative_csv(argv))
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"galois-forge {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NoConvergence, IllConditioned) as exc:
        print(f"galois-forge {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except GaloisForgeError as exc:
        print(f"galois-forge {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
