"""Seeded random-instance harness.

Every trial draws from its own generator, seeded by a string built from
(master seed, kind, n, index), so any failure replays in isolation and two
runs with the same arguments produce identical reports.  Trials run
sequentially in index order.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field

from .commutator import DEFAULT_BUDGET, commutator_decompose
from .dispatch import bound, decompose_any, verify_decomposition
from .errors import MatWaringError
from .lemma33 import solve_lemma33
from .matrix import IntMat


@dataclass
class RunReport:
    command: str
    seed: int
    trials: int
    successes: int = 0
    failures: list[dict] = field(default_factory=list)
    per_n: dict[str, dict] = field(default_factory=dict)
    bound_table: dict[str, int] = field(default_factory=dict)
    timing: dict[str, float] | None = None

    @property
    def all_passed(self) -> bool:
        return not self.failures and self.successes == self.trials


def trial_rng(seed: int, kind: str, n: int, index: int) -> random.Random:
    return random.Random(f"{seed}/{kind}/{n}/{index}")


def coprime_tuple(rng: random.Random, count: int, coeff_bound: int) -> list[int]:
    """``count`` nonzero pairwise coprime integers with |a| <= coeff_bound."""
    if coeff_bound < 1:
        raise ValueError("coefficient bound must be positive")
    out: list[int] = []
    while len(out) < count:
        x = rng.randint(-coeff_bound, coeff_bound)
        if x and all(math.gcd(x, y) == 1 for y in out):
            out.append(x)
    return out


def random_matrix(rng: random.Random, n: int, entry_bound: int) -> IntMat:
    return IntMat([[rng.randint(-entry_bound, entry_bound) for _ in range(n)] for _ in range(n)])


def random_trace_zero(rng: random.Random, n: int, entry_bound: int) -> IntMat:
    """Uniform entries off the last diagonal cell, which is redrawn until the trace can vanish."""
    while True:
        rows = [[rng.randint(-entry_bound, entry_bound) for _ in range(n)] for _ in range(n)]
        last = -sum(rows[i][i] for i in range(n - 1))
        if abs(last) <= entry_bound:
            rows[n - 1][n - 1] = last
            return IntMat(rows)


def decompose_instance(seed: int, n: int, index: int, coeff_bound: int, entry_bound: int):
    rng = trial_rng(seed, "decompose", n, index)
    coeffs = coprime_tuple(rng, bound(n), coeff_bound)
    return coeffs, random_matrix(rng, n, entry_bound)


def run_decompose_trial(seed: int, n: int, index: int, coeff_bound: int, entry_bound: int,
                        budget: int = DEFAULT_BUDGET) -> dict:
    coeffs, target = decompose_instance(seed, n, index, coeff_bound, entry_bound)
    record = {"n": n, "index": index, "seed": seed, "coeffs": coeffs, "target": target}
    try:
        d = decompose_any(coeffs, target, budget=budget, seed=seed)
        ok, cell = verify_decomposition(d)
        record.update(ok=ok, nonzero=d.nonzero_count(), mismatch=cell,
                      x4_checks=d.audit.get("X3 = X3^4", 0) + d.audit.get("X4 = X4^4", 0),
                      commutator_calls=d.audit.get("commutator pair verified", 0))
    except MatWaringError as exc:
        record.update(ok=False, error=f"{type(exc).__name__}: {exc}")
    return record


def fuzz(seed: int, trials: int, ns, coeff_bound: int, entry_bound: int,
         budget: int = DEFAULT_BUDGET, timing: bool = False, command: str = "fuzz") -> RunReport:
    report = RunReport(command, seed, trials * len(ns))
    start = time.perf_counter()
    for n in ns:
        stats = {"trials": trials, "verified_count": 0, "required": bound(n), "max_nonzero": 0,
                 "x4_checks": 0, "commutator_calls": 0}
        for i in range(trials):
            rec = run_decompose_trial(seed, n, i, coeff_bound, entry_bound, budget)
            if rec["ok"] and (n == 2 or rec["nonzero"] <= bound(n)):
                report.successes += 1
                stats["verified_count"] += 1
                stats["max_nonzero"] = max(stats["max_nonzero"], rec["nonzero"])
                stats["x4_checks"] += rec["x4_checks"]
                stats["commutator_calls"] += rec["commutator_calls"]
            else:
                report.failures.append(rec)
        report.per_n[str(n)] = stats
        report.bound_table[str(n)] = bound(n)
    if timing:
        report.timing = {"seconds": round(time.perf_counter() - start, 3)}
    return report


def replay(failure: dict, coeff_bound: int, entry_bound: int, budget: int = DEFAULT_BUDGET) -> dict:
    return run_decompose_trial(failure["seed"], failure["n"], failure["index"], coeff_bound, entry_bound, budget)


def commutator_trials(seed: int, trials: int, ns, entry_bound: int = 100,
                      budget: int = DEFAULT_BUDGET, timing: bool = False) -> RunReport:
    report = RunReport("commutator", seed, trials * len(ns))
    start = time.perf_counter()
    for n in ns:
        stats = {"trials": trials, "verified_count": 0, "max_attempts": 0}
        for i in range(trials):
            Z = random_trace_zero(trial_rng(seed, "commutator", n, i), n, entry_bound)
            try:
                pair = commutator_decompose(Z, budget=budget, seed=seed)
                ok = pair.commutator() == Z
            except MatWaringError as exc:
                report.failures.append({"n": n, "index": i, "seed": seed, "Z": Z, "error": str(exc)})
                continue
            if ok:
                report.successes += 1
                stats["verified_count"] += 1
                stats["max_attempts"] = max(stats["max_attempts"], pair.attempts)
            else:
                report.failures.append({"n": n, "index": i, "seed": seed, "Z": Z})
        report.per_n[str(n)] = stats
    if timing:
        report.timing = {"seconds": round(time.perf_counter() - start, 3)}
    return report


def lemma33_trials(seed: int, trials: int, a_bound: int = 99, m_bound: int = 10**4) -> RunReport:
    report = RunReport("lemma33", seed, trials)
    odd = [x for x in range(-a_bound, a_bound + 1) if x % 2]
    for i in range(trials):
        rng = trial_rng(seed, "lemma33", 0, i)
        while True:
            a1, a2 = rng.choice(odd), rng.choice(odd)
            if math.gcd(a1, a2) == 1:
                break
        m = rng.randint(-m_bound, m_bound)
        try:
            solve_lemma33(a1, a2, m).check()
            report.successes += 1
        except MatWaringError as exc:
            report.failures.append({"index": i, "seed": seed, "a1": a1, "a2": a2, "m": m, "error": str(exc)})
    return report
