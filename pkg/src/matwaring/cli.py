"""Command-line front end.  Every command prints one JSON document.

Exit codes: 0 ok, 1 bad input, 2 internal assertion, 3 condition violated
or infeasible (including a failed verification), 4 commutator budget
exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import codec
from .commutator import DEFAULT_BUDGET, commutator_decompose
from .decomposition import verify_decomposition
from .dispatch import bound, decompose_any
from .errors import (
    BadInput,
    BudgetExhausted,
    ConditionViolated,
    InternalAssertion,
    MatWaringError,
    NoSolution,
)
from .fuzz import commutator_trials, fuzz, lemma33_trials
from .universality import DEFAULT_RESIDUE_LIMIT, CoeffList, decide_universal_m2, residue_universal_check

EXIT_OK, EXIT_BAD_INPUT, EXIT_INTERNAL, EXIT_CONDITION, EXIT_BUDGET = 0, 1, 2, 3, 4


def _read_json(source: str | None, stdin) -> object:
    if source is None or source == "-":
        text = stdin.read()
    elif source.startswith("@"):
        try:
            with open(source[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise BadInput(f"cannot read {source[1:]}: {exc}") from exc
    else:
        text = source
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadInput(f"invalid JSON: {exc}") from exc


def _coeffs(text: str | None) -> CoeffList:
    if text is None:
        raise BadInput("--coeffs is required")
    text = text.strip()
    if text.startswith("@") or text.startswith("["):
        data = _read_json(text, sys.stdin)
        if not isinstance(data, list):
            raise BadInput("coefficient JSON must be an array")
        return CoeffList(tuple(codec._int(x) for x in data))
    return CoeffList.parse(text)


def _n_range(text: str) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        lo, sep, hi = part.strip().partition("-")
        out.extend(range(int(lo), int(hi) + 1) if sep else [int(lo)])
    if not out or min(out) < 2:
        raise BadInput(f"dimensions must be at least 2: {text!r}")
    return out


def cmd_decide(args, stdin) -> dict:
    a = _coeffs(args.coeffs)
    v = decide_universal_m2(a)
    return {
        "command": "decide",
        "coeffs": a,
        "universal": v.universal,
        "failed_condition": v.failed_condition,
        "prime": v.prime,
        "witness_modulus": v.witness_modulus,
    }


def cmd_residue(args, stdin) -> dict:
    a = _coeffs(args.coeffs)
    if args.modulus is None:
        raise BadInput("--modulus is required")
    rep = residue_universal_check(a, args.modulus, limit=args.limit)
    return {
        "command": "residue-check",
        "coeffs": a,
        "modulus": rep.modulus,
        "universal": rep.universal,
        "reachable_count": rep.reachable_count,
        "missed": rep.missed,
    }


def cmd_decompose(args, stdin) -> dict:
    a = _coeffs(args.coeffs)
    target = codec.matrix_from_json(_read_json(args.target, stdin))
    if args.n is not None and args.n != target.dim:
        raise BadInput(f"--n {args.n} but target is {target.dim}x{target.dim}")
    d = decompose_any(a, target, budget=args.budget, seed=args.seed)
    out = codec.decomposition_to_json(d, explain=args.explain)
    out["verified"] = verify_decomposition(d)[0]
    return out


def cmd_verify(args, stdin) -> dict:
    d = codec.decomposition_from_json(_read_json(args.input, stdin))
    ok, cell = verify_decomposition(d)
    out = {"command": "verify", "verified": ok, "mismatch": list(cell) if cell else None}
    if not ok:
        raise _Infeasible(out)
    return out


def cmd_commutator(args, stdin) -> dict:
    Z = codec.matrix_from_json(_read_json(args.target, stdin))
    pair = commutator_decompose(Z, budget=args.budget, seed=args.seed, use_precondition=args.precondition)
    return {"command": "commutator", "Z": Z, "X": pair.X, "Y": pair.Y, "attempts": pair.attempts,
            "verified": pair.commutator() == Z}


def cmd_selftest(args, stdin) -> dict:
    trials = args.trials
    parts = {
        "lemma33": lemma33_trials(args.seed, trials),
        "commutator": commutator_trials(args.seed, trials, [2, 3, 4], budget=args.budget),
        "decompose": fuzz(args.seed, max(1, trials // 10), list(range(2, 7)), 1000, 100, args.budget),
    }
    ok = all(r.all_passed for r in parts.values())
    out = {"command": "selftest", "seed": args.seed, "passed": ok, "reports": parts}
    if not ok:
        raise _Infeasible(out)
    return out


def cmd_fuzz(args, stdin):
    rep = fuzz(args.seed, args.trials, _n_range(args.n_range), args.coeff_bound, args.entry_bound,
               args.budget, timing=args.timing)
    if not rep.all_passed:
        raise _Infeasible(rep)
    return rep


def cmd_table1(args, stdin) -> dict:
    ns = list(range(2, args.max_n + 1))
    rep = fuzz(args.seed, args.trials, ns, args.coeff_bound, args.entry_bound, args.budget,
               timing=args.timing, command="table1")
    rows = [{"n": n, "required": bound(n), "max_nonzero": rep.per_n[str(n)]["max_nonzero"],
             "verified_count": rep.per_n[str(n)]["verified_count"], "trials": args.trials} for n in ns]
    out = {"command": "table1", "seed": args.seed, "rows": rows, "report": rep}
    if not rep.all_passed:
        raise _Infeasible(out)
    return out


class _Infeasible(Exception):
    """Carries a report whose command ran but did not succeed (exit 3)."""

    def __init__(self, payload):
        super().__init__("infeasible")
        self.payload = payload


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matwaring", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, coeffs=False, target=False, budget=False, seed=False, trials=False):
        p.add_argument("--format", choices=["json"], default="json")
        if coeffs:
            p.add_argument("--coeffs", help="comma-separated list, JSON array, or @file")
        if target:
            p.add_argument("--target", help="matrix JSON, @file, or - for stdin (default stdin)")
        if budget:
            p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        if seed:
            p.add_argument("--seed", type=int, default=0)
        if trials:
            p.add_argument("--trials", type=int, default=10)
        return p

    p = common(sub.add_parser("decide", help="decide universality over 2x2 matrices"), coeffs=True)
    p.set_defaults(func=cmd_decide)

    p = common(sub.add_parser("residue-check", help="enumerate the form over M_2(Z/r)"), coeffs=True)
    p.add_argument("--modulus", type=int)
    p.add_argument("--limit", type=int, default=DEFAULT_RESIDUE_LIMIT)
    p.set_defaults(func=cmd_residue)

    p = common(sub.add_parser("decompose", help="write a matrix as sum a_i X_i^2"),
               coeffs=True, target=True, budget=True, seed=True)
    p.add_argument("--n", type=int)
    p.add_argument("--explain", action="store_true")
    p.set_defaults(func=cmd_decompose)

    p = common(sub.add_parser("verify", help="check a decomposition document"))
    p.add_argument("--input", help="decomposition JSON, @file, or - for stdin (default stdin)")
    p.set_defaults(func=cmd_verify)

    p = common(sub.add_parser("commutator", help="write a trace-zero matrix as XY - YX"),
               target=True, budget=True, seed=True)
    p.add_argument("--precondition", action="store_true")
    p.set_defaults(func=cmd_commutator)

    p = common(sub.add_parser("selftest", help="quick seeded property run"), budget=True, seed=True, trials=True)
    p.set_defaults(func=cmd_selftest)

    for name, func in (("fuzz", cmd_fuzz), ("table1", cmd_table1)):
        p = common(sub.add_parser(name), budget=True, seed=True, trials=True)
        p.add_argument("--coeff-bound", type=int, default=10**6)
        p.add_argument("--entry-bound", type=int, default=100)
        p.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte-identical output)")
        if name == "fuzz":
            p.add_argument("--n", dest="n_range", default="2-5", help="dimensions, e.g. 2-5 or 2,4,6")
        else:
            p.add_argument("--max-n", type=int, default=8)
        p.set_defaults(func=func)
    return parser


def run(argv: Sequence[str] | None = None, stdin=None, stdout=None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_BAD_INPUT

    def emit(obj) -> None:
        stdout.write(codec.dumps(codec.to_jsonable(obj)) + "\n")

    try:
        if getattr(args, "trials", 1) < 1:
            raise BadInput("--trials must be positive")
        for flag in ("coeff_bound", "entry_bound"):
            if getattr(args, flag, 0) < 0:
                raise BadInput(f"--{flag.replace('_', '-')} must be non-negative")
        emit(args.func(args, stdin))
        return EXIT_OK
    except _Infeasible as exc:
        emit(exc.payload)
        return EXIT_CONDITION
    except (MatWaringError, ValueError) as exc:
        code = exit_code(exc)
        emit({"error": type(exc).__name__, "message": str(exc), "exit_code": code})
        return code


def exit_code(exc: Exception) -> int:
    if isinstance(exc, InternalAssertion):
        return EXIT_INTERNAL
    if isinstance(exc, (ConditionViolated, NoSolution)):
        return EXIT_CONDITION
    if isinstance(exc, BudgetExhausted):
        return EXIT_BUDGET
    if isinstance(exc, (BadInput, ValueError)):
        return EXIT_BAD_INPUT
    return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
