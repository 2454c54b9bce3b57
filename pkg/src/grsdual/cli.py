"""Command-line front end: construct, verify, search, sweep.

Exit codes are scriptable: 0 success / all checks pass, 1 usage or parse
error, 2 honest construction failure (infeasible parameters, exhausted
search), 3 verification failure.  All JSON output is deterministic for
identical flags, including the --seed driving randomized MDS sampling.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Optional

from .construct import (
    FAMILIES,
    ConstructionRequest,
    build,
    result_to_json,
    search_square_difference_set,
)
from .errors import ConstructionInfeasible, GrsDualError
from .gf import make_field, split_prime_power
from .grs import code_from_json, stored_generator_from_json
from .verify import (
    EXACT_MDS_BUDGET,
    RANDOM_MDS_SAMPLES,
    resolve_mds_mode,
    verify_code,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_VERIFY_FAIL = 3


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage errors exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(payload: dict, output: Optional[str]) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _resolve_q(args) -> Optional[int]:
    if args.p is not None or args.e is not None:
        if args.p is None:
            raise GrsDualError("--e given without --p")
        q = args.p ** (args.e if args.e is not None else 1)
        if args.q is not None and args.q != q:
            raise GrsDualError(f"--q {args.q} conflicts with --p/--e ({q})")
        return q
    return args.q


def _cmd_construct(args) -> int:
    try:
        q = _resolve_q(args)
        request = ConstructionRequest(family=args.family, q=q,
                                      r=args.r, t=args.t, n=args.n)
        result = build(request)
    except ConstructionInfeasible as exc:
        print(f"construction infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (GrsDualError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(result_to_json(result), args.output)
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        raw = (sys.stdin.read() if args.input == "-"
               else Path(args.input).read_text())
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON at line {exc.lineno}, column {exc.colno}: "
              f"{exc.msg}", file=sys.stderr)
        return EXIT_USAGE
    try:
        code = code_from_json(obj)
        stored = stored_generator_from_json(obj)
    except (GrsDualError, ValueError, KeyError, TypeError) as exc:
        print(f"error: not a valid code object: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        report = verify_code(code, mds_mode=args.mds_mode,
                             budget=args.budget, samples=args.samples,
                             seed=args.seed,
                             dual_identity=args.dual_identity,
                             stored_generator=stored)
    except GrsDualError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report.to_json(), args.output)
    return EXIT_OK if report.overall else EXIT_VERIFY_FAIL


def _cmd_search(args) -> int:
    try:
        found = search_square_difference_set(args.q, args.n,
                                             node_budget=args.node_budget)
    except ConstructionInfeasible as exc:
        print(f"search infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except GrsDualError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    ctx = make_field(*split_prime_power(args.q))
    payload = {
        "q": args.q,
        "n": args.n,
        "found": found is not None,
        "set": None if found is None else [ctx.coeffs(x) for x in found],
    }
    _emit(payload, args.output)
    return EXIT_OK if found is not None else EXIT_INFEASIBLE


# --- sweep -------------------------------------------------------------------

_SWEEP_DEFAULTS = {
    "even-char": {"q": [4, 8, 16]},
    "extended": {"q": [5, 7, 9, 13, 17, 25, 27]},
    "square-set": {"cells": [(13, 2), (29, 4)]},
    "subfield-points": {"r": [3, 5, 7, 9]},
    "roots-of-unity": {"q": [9, 25, 49, 81]},
    "theorem-3-5": {"r": [3, 7]},
}


def _pick(override, default):
    """User-supplied list wins, even when empty; None means the default."""
    return default if override is None else override


def _sweep_cells(family: str, args) -> list[ConstructionRequest]:
    cells: list[ConstructionRequest] = []
    if family == "even-char":
        for q in _pick(args.q, _SWEEP_DEFAULTS[family]["q"]):
            for n in _pick(args.n, range(2, q + 1, 2)):
                cells.append(ConstructionRequest(family, q=q, n=n))
    elif family == "extended":
        for q in _pick(args.q, _SWEEP_DEFAULTS[family]["q"]):
            cells.append(ConstructionRequest(family, q=q))
    elif family == "square-set":
        if args.q is None and args.n is None:
            for q, n in _SWEEP_DEFAULTS[family]["cells"]:
                cells.append(ConstructionRequest(family, q=q, n=n))
        else:
            for q in args.q or []:
                for n in args.n or []:
                    cells.append(ConstructionRequest(family, q=q, n=n))
    elif family == "subfield-points":
        for r in _pick(args.r, _SWEEP_DEFAULTS[family]["r"]):
            for n in _pick(args.n, range(2, r + 1, 2)):
                cells.append(ConstructionRequest(family, r=r, n=n))
    elif family == "roots-of-unity":
        for q in _pick(args.q, _SWEEP_DEFAULTS[family]["q"]):
            valid = [n for n in range(2, q + 1, 2) if (q - 1) % (n - 1) == 0]
            for n in _pick(args.n, valid):
                cells.append(ConstructionRequest(family, q=q, n=n))
    elif family == "theorem-3-5":
        for r in _pick(args.r, _SWEEP_DEFAULTS[family]["r"]):
            for t in _pick(args.t, range(1, (r - 1) // 2 + 1)):
                cells.append(ConstructionRequest(family, r=r, t=t))
    return cells


def _cell_label(request: ConstructionRequest) -> str:
    parts = []
    for name in ("q", "r", "t", "n"):
        value = getattr(request, name)
        if value is not None:
            parts.append(f"{name}{value}")
    return f"{request.family}_{'_'.join(parts)}"


def _cmd_sweep(args) -> int:
    families = list(FAMILIES) if args.family == "all" else [args.family]
    rows = []
    all_ok = True
    for family in families:
        for request in _sweep_cells(family, args):
            t0 = time.perf_counter()
            try:
                result = build(request)
                code = result.code
                mode = resolve_mds_mode(code, args.budget)
                report = verify_code(code, mds_mode=mode,
                                     budget=args.budget,
                                     samples=args.samples, seed=args.seed)
                ok = report.overall
                status = "pass" if ok else "FAIL"
                params = (f"[{code.block_length},{code.k}] over "
                          f"GF({code.ctx.q})")
            except ConstructionInfeasible as exc:
                ok, status, mode, params, report, result = (
                    False, "infeasible", "-", str(exc), None, None)
            elapsed = time.perf_counter() - t0
            all_ok = all_ok and ok
            rows.append((family, _cell_label(request), params, mode,
                         status, f"{elapsed:.3f}s"))
            if args.out_dir and result is not None:
                out = Path(args.out_dir)
                out.mkdir(parents=True, exist_ok=True)
                payload = result_to_json(result)
                if report is not None:
                    payload["report"] = report.to_json()
                (out / f"{_cell_label(request)}.json").write_text(
                    json.dumps(payload, indent=2) + "\n")
    _print_table(rows)
    return EXIT_OK if all_ok else EXIT_VERIFY_FAIL


def _print_table(rows) -> None:
    header = ("family", "cell", "code", "mds", "status", "time")
    table = [header] + [tuple(str(x) for x in row) for row in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    for row in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())


# --- entry point ----------------------------------------------------------------

def _build_parser() -> _Parser:
    parser = _Parser(prog="grsdual",
                     description="Construct and verify MDS self-dual codes "
                                 "built from generalized Reed-Solomon codes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_con = sub.add_parser("construct", help="build one code as JSON")
    p_con.add_argument("--family", required=True,
                       choices=list(FAMILIES) + ["auto"])
    p_con.add_argument("--p", type=int)
    p_con.add_argument("--e", type=int)
    p_con.add_argument("--q", type=int)
    p_con.add_argument("--r", type=int)
    p_con.add_argument("--t", type=int)
    p_con.add_argument("--n", type=int)
    p_con.add_argument("--output", "-o")
    p_con.set_defaults(func=_cmd_construct)

    p_ver = sub.add_parser("verify", help="check a code JSON file")
    p_ver.add_argument("input", help="path to code JSON, or - for stdin")
    p_ver.add_argument("--mds-mode", default="auto",
                       choices=["auto", "exact", "randomized", "structural"])
    p_ver.add_argument("--budget", type=int, default=EXACT_MDS_BUDGET)
    p_ver.add_argument("--samples", type=int, default=RANDOM_MDS_SAMPLES)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--dual-identity", action="store_true")
    p_ver.add_argument("--output", "-o")
    p_ver.set_defaults(func=_cmd_verify)

    p_sea = sub.add_parser("search",
                           help="search for a square-difference point set")
    p_sea.add_argument("--q", type=int, required=True)
    p_sea.add_argument("--n", type=int, required=True)
    p_sea.add_argument("--node-budget", type=int)
    p_sea.add_argument("--output", "-o")
    p_sea.set_defaults(func=_cmd_search)

    p_swp = sub.add_parser("sweep",
                           help="construct and verify a parameter grid")
    p_swp.add_argument("--family", default="all",
                       choices=list(FAMILIES) + ["all"])
    p_swp.add_argument("--q", type=int, nargs="*")
    p_swp.add_argument("--r", type=int, nargs="*")
    p_swp.add_argument("--t", type=int, nargs="*")
    p_swp.add_argument("--n", type=int, nargs="*")
    p_swp.add_argument("--budget", type=int, default=EXACT_MDS_BUDGET)
    p_swp.add_argument("--samples", type=int, default=RANDOM_MDS_SAMPLES)
    p_swp.add_argument("--seed", type=int, default=0)
    p_swp.add_argument("--out-dir")
    p_swp.set_defaults(func=_cmd_sweep)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
