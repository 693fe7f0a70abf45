"""Acceptance gate.  Each test checks one criterion and prints a PASS/FAIL line."""

import itertools
import time
from functools import lru_cache

import pytest

from matwaring import codec
from matwaring.fuzz import commutator_trials, fuzz, lemma33_trials
from matwaring.matrix import IntMat
from matwaring.universality import count_squares_m2_mod, decide_universal_m2, residue_universal_check

TABLE1_NS = [3, 4, 5, 6, 7, 8]
SEED = 2024


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'} {title} {detail}".rstrip())
    return emit


def timed(fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - start


@lru_cache(maxsize=None)
def run_two_by_two():
    return fuzz(SEED, 1000, [2], 50, 100)


@lru_cache(maxsize=None)
def run_table1():
    return fuzz(SEED, 100, TABLE1_NS, 10**6, 100, command="table1")


@lru_cache(maxsize=None)
def run_commutators():
    return commutator_trials(SEED, 500 // 3 + 1, [2, 3, 4], entry_bound=100)


def test_mod4_witnesses(report):
    (one, t1) = timed(residue_universal_check, (1, 1), 4)
    (two, t2) = timed(residue_universal_check, (1, -1), 4)
    ok = (not one.represents(IntMat.diag([1, 3])) and one.missed == IntMat.diag([1, 3])
          and not two.represents(IntMat.diag([0, 2])) and max(t1, t2) < 1)
    report(1, "mod-4 witnesses diag(1,3) and diag(0,2)", ok, f"({max(t1, t2):.2f}s)")
    assert ok


def test_square_count_obstruction(report):
    start = time.perf_counter()
    counts = {p: count_squares_m2_mod(p) for p in (2, 3, 5, 7)}
    elapsed = time.perf_counter() - start
    ok = all(c < p**4 for p, c in counts.items()) and elapsed < 5
    report(2, "square count below p^4 for p in 2,3,5,7", ok, f"{counts}")
    assert ok


def test_decision_matches_enumeration(report):
    start = time.perf_counter()
    bad = []
    for a in itertools.product(range(-10, 11), repeat=3):
        v = decide_universal_m2(a)
        if v.universal:
            if not all(residue_universal_check(a, r).universal for r in (2, 3, 4, 5, 8, 9)):
                bad.append(a)
        else:
            rep = residue_universal_check(a, v.witness_modulus)
            if rep.universal or rep.represents(rep.missed):
                bad.append(a)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 120
    report(3, "decider agrees with residue enumeration on 9261 triples", ok,
           f"({len(bad)} mismatches, {elapsed:.1f}s)")
    assert ok


def test_four_squares_suffice_in_dimension_two(report):
    rep, elapsed = timed(run_two_by_two)
    nonuniv = decide_universal_m2((1, 1, 4))
    missed = residue_universal_check((1, 1, 4), 4).missed
    ok = (rep.all_passed and rep.successes == 1000 and not nonuniv.universal
          and nonuniv.witness_modulus == 4 and missed is not None and elapsed < 60)
    report(4, "1000 random 2x2 instances decompose; (1,1,4) misses mod 4", ok,
           f"({rep.successes}/1000, missed {missed.tolist() if missed else None})")
    assert ok


def test_table1_bounds(report):
    rep, elapsed = timed(run_table1)
    within = all(rep.per_n[str(n)]["max_nonzero"] <= rep.bound_table[str(n)] for n in TABLE1_NS)
    ok = rep.all_passed and rep.successes == 600 and within and elapsed < 600
    counts = {n: rep.per_n[str(n)]["verified_count"] for n in TABLE1_NS}
    report(5, "dimension 3..8 constructions within the bound table", ok, f"{counts}")
    assert ok


def test_idempotent_blocks_hold(report):
    rep = run_table1()
    runs = sum(1 for n in TABLE1_NS if n % 2) * 100
    checks = sum(rep.per_n[str(n)]["x4_checks"] for n in TABLE1_NS)
    # one check for X3 and one for X4 on each 3x3 run; a violation aborts the run
    ok = rep.all_passed and checks == 2 * runs
    report(6, "X3 = X3^4 and X4 = X4^4 on every 3x3 run", ok, f"({checks} checks, 0 violations)")
    assert ok


def test_lemma33_properties(report):
    rep, elapsed = timed(lemma33_trials, SEED, 500)
    ok = rep.all_passed and rep.successes == 500 and elapsed < 10
    report(7, "500 random border-parameter instances satisfy both postconditions", ok)
    assert ok


def test_commutator_oracle(report):
    rep, elapsed = timed(run_commutators)
    table = run_table1()
    calls = sum(table.per_n[str(n)]["commutator_calls"] for n in TABLE1_NS)
    expected = sum(100 for n in TABLE1_NS if n % 2 == 0) + sum(100 for n in TABLE1_NS if n % 2 and n > 5)
    ok = rep.all_passed and rep.successes >= 500 and calls == expected and elapsed < 120
    report(8, "random trace-zero matrices and engine inputs are commutators", ok,
           f"({rep.successes} random, {calls} from constructions)")
    assert ok


def test_reports_are_byte_identical(report):
    pairs = [
        (run_two_by_two(), fuzz(SEED, 1000, [2], 50, 100)),
        (run_table1(), fuzz(SEED, 100, TABLE1_NS, 10**6, 100, command="table1")),
        (run_commutators(), commutator_trials(SEED, 500 // 3 + 1, [2, 3, 4], entry_bound=100)),
    ]
    ok = all(codec.dumps(codec.to_jsonable(a)) == codec.dumps(codec.to_jsonable(b)) for a, b in pairs)
    report(9, "reruns with the same seeds give identical JSON", ok)
    assert ok
