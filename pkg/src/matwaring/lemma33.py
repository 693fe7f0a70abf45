"""Scalar helper for the even-dimension engine.

Given odd coprime a1, a2 and any integer m, find c, d, u, v with

    a1 (c^2 + 2u) + a2 (d^2 + 2v) = m,   gcd(a1 (u - c), a2 (v - d)) = 1.

Writing u = c + U and v = d + V turns the first equation into
a1 U + a2 V = H with H = (m - B) / 2 and B = a1 (c^2 + 2c) + a2 (d^2 + 2d).
If c, d are chosen so that H is an integer prime to a1 a2, any common
prime factor of a1 U and a2 V divides both U and V, hence H; forcing
U = 1 (mod H) rules that out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BadInput, InternalAssertion, NotPairwiseCoprime, ZeroCoefficient, check
from .exact import crt_combine, ext_gcd, prime_divisors


@dataclass(frozen=True)
class Lemma33Solution:
    a1: int
    a2: int
    m: int
    c: int
    d: int
    u: int
    v: int
    B: int
    A_half: int

    def check(self) -> None:
        a1, a2 = self.a1, self.a2
        check(a1 * (self.c**2 + 2 * self.u) + a2 * (self.d**2 + 2 * self.v) == self.m,
              "lemma33: sum identity")
        check(math.gcd(a1 * (self.u - self.c), a2 * (self.v - self.d)) == 1, "lemma33: gcd condition")
        check((self.m - self.B) % 2 == 0, "lemma33: m - B even")
        check(math.gcd(a1 * a2, self.m - self.B) == 1, "lemma33: m - B prime to a1 a2")


def _avoid_root(p: int, value) -> int:
    # x^2 + 2x takes at least two values mod any odd p on {0, 1, 2}
    for x in range(3):
        if value(x) % p:
            return x
    raise InternalAssertion(f"lemma33: no admissible residue mod {p}")


def _quad(x: int) -> int:
    return x * x + 2 * x


def solve_lemma33(a1: int, a2: int, m: int) -> Lemma33Solution:
    if a1 == 0 or a2 == 0:
        raise ZeroCoefficient("coefficients must be nonzero")
    if a1 % 2 == 0 or a2 % 2 == 0:
        raise BadInput(f"coefficients must be odd, got {a1}, {a2}")
    if math.gcd(a1, a2) != 1:
        raise NotPairwiseCoprime(f"gcd({a1}, {a2}) != 1")

    # d makes m - B prime to a1, c makes it prime to a2
    d = crt_combine([(_avoid_root(p, lambda x: m - a2 * _quad(x)), p) for p in prime_divisors(a1)])
    c = crt_combine([
        (_avoid_root(p, lambda x: m - a1 * _quad(x) - a2 * _quad(d)), p) for p in prime_divisors(a2)
    ])
    if (m - c - d) % 2:
        c += a2

    while True:
        B = a1 * _quad(c) + a2 * _quad(d)
        H = (m - B) // 2
        check(2 * H == m - B, "lemma33: m - B even")
        check(math.gcd(a1 * a2, H) == 1, "lemma33: m - B prime to a1 a2")
        if H != 0:
            break
        if abs(a1) == abs(a2) == 1:
            # a1 U = 1 and a2 V = -1 already satisfy everything
            sol = Lemma33Solution(a1, a2, m, c, d, c + a1, d - a2, B, H)
            sol.check()
            return sol
        # H = 0 would force |a1 U| = 1; move c within its class mod 2 a2
        c += 2 * a2

    _, s, t = ext_gcd(a1, a2)
    U0, V0 = s * H, t * H
    # shift along (a2, -a1) so that U = 1 (mod |H|)
    tau = (1 - U0) * pow(a2, -1, abs(H)) % abs(H) if abs(H) > 1 else 0
    U, V = U0 + tau * a2, V0 - tau * a1
    sol = Lemma33Solution(a1, a2, m, c, d, c + U, d + V, B, H)
    sol.check()
    return sol
