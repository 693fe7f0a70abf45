"""Six-term decomposition of 3x3 integer matrices.

Two idempotent border terms make the (3,1) entry of the remainder A' equal
to 1 and its trace even.  A unimodular T then brings A' to the shape
[[0, a, b], [0, c, d], [1, -a3 - a4, e]], which is written as
a3 (X3^2)^2 + a4 (X4^2)^2 + a5 Y5^2 + a6 Y6^2 with explicit X_i, Y_i.
The X_i satisfy X^4 = X because their lower 2x2 block is a root of
x^2 + x + 1.  Every identity the construction relies on is checked.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass

from .decomposition import Decomposition
from .errors import BadInput, NotPairwiseCoprime, ZeroCoefficient, check
from .exact import bezout
from .matrix import IntMat
from .universality import as_coeffs

TERMS = 6


def build_X_i(P: int, Q: int, u: int) -> IntMat:
    return IntMat([[0, P, Q], [0, u, 1 + u + u * u], [0, -1, -1 - u]])


def build_Y_i(P: int, Q: int, t: int) -> IntMat:
    return IntMat([[0, 0, P], [t, 0, t * Q], [0, 1, 0]])


@dataclass
class Lemma32Workspace:
    roles: list[int]
    t: list[int]
    m: int
    u: int
    A_prime: IntMat
    c1: int
    c2: int
    c3: int
    c4: int
    c3_tilde: int
    T: IntMat
    a: int
    b: int
    c: int
    d: int
    e: int
    u3: int
    u4: int
    P: int
    Q: int
    P3: int
    P4: int
    Q3: int
    Q4: int
    X3: IntMat
    X4: IntMat
    Y5: IntMat
    Y6: IntMat

    def summary(self) -> dict:
        return {k: (v.tolist() if isinstance(v, IntMat) else v) for k, v in asdict(self).items()}


def check_coefficients(a, count: int) -> None:
    if len(a) < count:
        raise BadInput(f"need {count} coefficients, got {len(a)}")
    head = list(a)[:count]
    if any(v == 0 for v in head):
        raise ZeroCoefficient("coefficients must be nonzero")
    for i in range(count):
        for j in range(i + 1, count):
            if math.gcd(head[i], head[j]) != 1:
                raise NotPairwiseCoprime(f"gcd({head[i]}, {head[j]}) != 1")


def role_order(a) -> list[int]:
    """The (at most one) even coefficient goes first; the rest keep their order."""
    even = [i for i in range(TERMS) if a[i] % 2 == 0]
    return even + [i for i in range(TERMS) if i not in even]


def _inverse_T(c1: int, c2: int, c3t: int) -> IntMat:
    return IntMat([[1, c3t, -c2 * c3t - c1], [0, 1, -c2], [0, 0, 1]])


def decompose_3x3(a, target: IntMat, audit: Counter | None = None) -> Decomposition:
    a = as_coeffs(a)
    check_coefficients(a, TERMS)
    if target.shape != (3, 3):
        raise BadInput(f"target must be 3x3, got {target.shape}")
    audit = Counter() if audit is None else audit
    ws = _build_workspace(a, target, audit)

    T, Tinv = ws.T, _inverse_T(ws.c1, ws.c2, ws.c3_tilde)
    M1 = IntMat([[1, 0, 0], [0, 0, 0], [ws.m * ws.t[0], 0, 0]])
    M2 = IntMat([[1, 0, 0], [0, ws.u, 0], [ws.m * ws.t[1], 0, 0]])
    roots = [
        M1,
        M2,
        T @ ws.X3.square() @ Tinv,
        T @ ws.X4.square() @ Tinv,
        T @ ws.Y5 @ Tinv,
        T @ ws.Y6 @ Tinv,
    ]
    squares = sorted(zip(ws.roles, roots))
    total = IntMat.zeros(3)
    for i, R in squares:
        total = total + a[i] * R.square()
    check(total == target, "3x3 decomposition does not reproduce the target", audit)
    return Decomposition(a, target, tuple(squares), audit, {"engine": "3x3", "workspace": ws.summary()})


def _build_workspace(a, target: IntMat, audit: Counter) -> Lemma32Workspace:
    roles = role_order(a)
    r = [a[i] for i in roles]
    for k in (1, 2, 3):
        check(r[k] % 2 == 1, "odd coefficient expected in the middle roles", audit)
    t = []
    for k in (0, 2, 4):
        bp = bezout(r[k], r[k + 1])
        t += [bp.t_a, bp.t_b]

    m = target[2, 0] - 1
    u = (target.trace() - r[0] - 1) % 2
    M1 = IntMat([[1, 0, 0], [0, 0, 0], [m * t[0], 0, 0]])
    M2 = IntMat([[1, 0, 0], [0, u, 0], [m * t[1], 0, 0]])
    check(M1.square() == M1 and M2.square() == M2, "border terms are idempotent", audit)
    Ap = target - r[0] * M1 - r[1] * M2
    check(Ap[2, 0] == 1, "remainder has 1 in the corner", audit)
    check(Ap.trace() % 2 == 0, "remainder trace is even", audit)

    c1, c2, c3, c4 = Ap[0, 0], Ap[1, 0], Ap[2, 1], Ap[2, 2]
    s34 = r[2] + r[3]
    c3t = c3 + s34
    T = IntMat([[1, -c3t, c1], [0, 1, c2], [0, 0, 1]])
    Tinv = _inverse_T(c1, c2, c3t)
    check(T @ Tinv == IntMat.identity(3), "closed-form inverse of T", audit)
    C = Tinv @ Ap @ T
    check(C[0, 0] == 0 and C[1, 0] == 0 and C[2, 0] == 1 and C[2, 1] == -s34,
          "conjugated remainder has the companion pattern", audit)
    a_, b_, c_, d_, e_ = C[0, 1], C[0, 2], C[1, 1], C[1, 2], C[2, 2]
    check((c_ - e_) % 2 == 0, "c - e is even", audit)

    h = (c_ - e_ - s34) // 2
    u3, u4 = t[2] * h, t[3] * h
    P = d_ - r[2] * (1 + u3 + u3 * u3) - r[3] * (1 + u4 + u4 * u4)
    P3 = t[2] * (a_ - (r[4] + r[5]) * P)
    P4 = t[3] * (a_ - (r[4] + r[5]) * P)
    Q3, Q4 = t[2] * b_, t[3] * b_
    Q = c_ - (r[2] * u3 + r[3] * u4)
    check(Q == e_ + r[2] * (1 + u3) + r[3] * (1 + u4), "two expressions for Q agree", audit)

    X3, X4 = build_X_i(P3, Q3, u3), build_X_i(P4, Q4, u4)
    check(X3 ** 4 == X3, "X3 = X3^4", audit)
    check(X4 ** 4 == X4, "X4 = X4^4", audit)
    Y5, Y6 = build_Y_i(P, Q, t[4]), build_Y_i(P, Q, t[5])
    rebuilt = r[2] * X3.square().square() + r[3] * X4.square().square() \
        + r[4] * Y5.square() + r[5] * Y6.square()
    check(rebuilt == C, "conjugated remainder is rebuilt by the four inner terms", audit)

    return Lemma32Workspace(roles, t, m, u, Ap, c1, c2, c3, c4, c3t, T, a_, b_, c_, d_, e_,
                            u3, u4, P, Q, P3, P4, Q3, Q4, X3, X4, Y5, Y6)
