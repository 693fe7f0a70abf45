import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from matwaring.errors import BadInput
from matwaring.matrix import IntMat
from matwaring.universality import (
    MOD4_CONDITION,
    PRIME_CONDITION,
    CoeffList,
    all_but_one_gcds,
    count_squares_m2_mod,
    decide_universal_m2,
    decode,
    encode,
    residue_universal_check,
)


def brute_values(a, r):
    """All values of sum a_i X_i^2 over M_2(Z/r), as tuples, by plain iteration."""
    mats = list(itertools.product(range(r), repeat=4))
    squares = set()
    for x00, x01, x10, x11 in mats:
        squares.add(((x00 * x00 + x01 * x10) % r, (x00 * x01 + x01 * x11) % r,
                     (x10 * x00 + x11 * x10) % r, (x10 * x01 + x11 * x11) % r))
    values = {(0, 0, 0, 0)}
    for ai in a:
        scaled = {tuple(ai * v % r for v in s) for s in squares}
        values = {tuple((u + v) % r for u, v in zip(x, y)) for x in values for y in scaled}
    return values


def test_coefflist_metadata():
    a = CoeffList((3, 4, 6, -5))
    assert a.odd_indices == (0, 3)
    assert a.mod4 == (3, 0, 2, 3)
    assert not a.pairwise_coprime
    assert CoeffList.parse("1, -2,3").coeffs == (1, -2, 3)
    with pytest.raises(BadInput):
        CoeffList(())
    with pytest.raises(BadInput):
        CoeffList.parse("1,x")


def test_decide_examples():
    assert decide_universal_m2((1, 1, 1)).universal
    v = decide_universal_m2((1, 1, 4))
    assert (v.universal, v.failed_condition, v.witness_modulus) == (False, MOD4_CONDITION, 4)
    v = decide_universal_m2((3, 3, 5))
    assert (v.universal, v.failed_condition, v.prime, v.witness_modulus) == (False, PRIME_CONDITION, 3, 3)


def test_prime_condition_reported_before_mod4():
    v = decide_universal_m2((2, 2, 4))
    assert v.failed_condition == PRIME_CONDITION and v.prime == 2


def test_zero_coefficients_are_total():
    # every prime divides 0
    v = decide_universal_m2((0, 0, 1))
    assert v.failed_condition == PRIME_CONDITION and v.witness_modulus == 2
    assert decide_universal_m2((1, 1, 1, 0)).universal


@given(st.lists(st.integers(-1000, 1000), min_size=1, max_size=8))
def test_all_but_one_gcds_match_direct(a):
    import math

    for i, g in enumerate(all_but_one_gcds(a)):
        rest = a[:i] + a[i + 1:]
        assert g == (math.gcd(*rest) if len(rest) > 1 else (abs(rest[0]) if rest else 0))


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=2))
def test_short_tuples_never_universal(a):
    assert not decide_universal_m2(a).universal


@given(st.lists(st.integers(-10**6, 10**6), min_size=3, max_size=3))
def test_triples_match_the_pairwise_criterion(a):
    # for three coefficients: universal iff pairwise coprime and abc not divisible by 4
    x, y, z = a
    import math

    expected = math.gcd(x, y) == math.gcd(y, z) == math.gcd(z, x) == 1 and (x * y * z) % 4 != 0
    assert decide_universal_m2(a).universal == expected


def test_encode_decode_roundtrip():
    for r in (2, 3, 5):
        for idx in range(r**4):
            assert encode(decode(idx, r), r) == idx


def test_residue_examples():
    rep = residue_universal_check((1, 1), 4)
    assert not rep.universal
    assert not rep.represents(IntMat.diag([1, 3]))
    assert IntMat.diag([1, 3]) in rep.missed_matrices()
    rep = residue_universal_check((1, -1), 4)
    assert not rep.represents(IntMat.diag([0, 2]))
    rep = residue_universal_check((1, 1, 1), 4)
    assert rep.universal and rep.missed is None and rep.reachable_count == 256


def test_residue_report_invariants():
    for a in ((1, 1), (2, 3), (1, 1, 1), (3,)):
        for r in (2, 3, 4):
            rep = residue_universal_check(a, r)
            assert rep.universal == (rep.reachable_count == r**4) == (rep.missed is None)
            if rep.missed is not None:
                assert rep.missed == rep.missed_matrices(1)[0]
                assert not rep.represents(rep.missed)


@pytest.mark.parametrize("a, r", [((1, 1), 4), ((1, -1), 4), ((1, 2), 3), ((3,), 3), ((1, 1, 2), 2), ((2, 5), 5)])
def test_residue_matches_brute_force(a, r):
    expected = brute_values(a, r)
    rep = residue_universal_check(a, r)
    assert rep.reachable_count == len(expected)
    got = {tuple(decode(i, r).entries()) for i in range(r**4) if rep.represents(decode(i, r))}
    assert got == expected
    if rep.missed is not None:
        least = min(encode([[v[0], v[1]], [v[2], v[3]]], r) for v in set(itertools.product(range(r), repeat=4)) - expected)
        assert encode(rep.missed, r) == least


def test_residue_bounds():
    with pytest.raises(BadInput):
        residue_universal_check((1, 1, 1), 1)
    with pytest.raises(BadInput):
        residue_universal_check((1, 1, 1), 17)
    assert residue_universal_check((1, 1, 1), 17, limit=17).modulus == 17


def test_count_squares():
    for p in (2, 3):
        assert count_squares_m2_mod(p) == len({v for v in brute_values((1,), p)})
    assert count_squares_m2_mod(2) < 16
    assert count_squares_m2_mod(3) < 81
    for p in (2, 3, 5, 7, 11, 13):
        assert count_squares_m2_mod(p) < p**4
    with pytest.raises(BadInput):
        count_squares_m2_mod(1)


def test_soundness_and_witness_screen_small():
    # a slice of the full screen; the acceptance suite runs the whole cube
    for a in itertools.product(range(-4, 5), repeat=3):
        v = decide_universal_m2(a)
        if v.universal:
            assert all(residue_universal_check(a, r).universal for r in (2, 3, 4, 5, 8, 9))
        else:
            assert not residue_universal_check(a, v.witness_modulus).universal
