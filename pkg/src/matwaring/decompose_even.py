"""Six-term decomposition of 2k x 2k integer matrices (k >= 2).

Write the target as [[P, Q], [R, S]] with k x k blocks.  Two border terms
[[O, B_i], [C_i, X_i]] clear Q and R and fix the trace of what is left,
so the remainder is block diagonal [[P0, O], [O, S0]] with
tr(P0 - S0) = 0.  Writing P0 - S0 = XY - YX and N = P0 - XY = S0 - YX,
four more terms [[O, t X], [Y, O]] and [[O, t N], [I, O]] finish the job.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .commutator import DEFAULT_BUDGET, CommutatorPair, commutator_decompose
from .decompose3 import check_coefficients
from .decomposition import Decomposition
from .errors import BadInput, check
from .exact import bezout, block_compose, block_split, ext_gcd
from .lemma33 import Lemma33Solution, solve_lemma33
from .matrix import IntMat
from .universality import as_coeffs

TERMS = 6


@dataclass(frozen=True)
class BorderBlocks:
    X1: IntMat
    X2: IntMat
    B1: IntMat
    B2: IntMat
    C1: IntMat
    C2: IntMat


@dataclass(frozen=True)
class EvenAssembly:
    P0: IntMat
    S0: IntMat
    pair: CommutatorPair
    N: IntMat
    t: tuple[int, int, int, int]


def _corner_block(n: int, top: int, right: int) -> IntMat:
    rows = IntMat.identity(n).tolist()
    rows[0][0], rows[0][1], rows[1][0], rows[1][1] = top, right, 1, 1
    return IntMat(rows)


def trace_budget(a1: int, a2: int, P: IntMat, S: IntMat, n: int) -> int:
    """Value that a1 (c^2 + 2u) + a2 (d^2 + 2v) must take so that tr(P0 - S0) = 0."""
    return S.trace() - P.trace() - (n - 1) * (a1 + a2)


def solve_border_system(a1: int, a2: int, c: int, d: int, u: int, v: int,
                        Q: IntMat, R: IntMat, audit: Counter | None = None) -> BorderBlocks:
    n = Q.dim
    if n < 2:
        raise BadInput("border blocks need k >= 2")
    t1, t2 = bezout(a1, a2).t_a, bezout(a1, a2).t_b
    g, s, t = ext_gcd(a1 * (u - c), a2 * (v - d))
    check(g == 1, "gcd(a1 (u - c), a2 (v - d)) = 1", audit)

    q = [list(Q.col(j)) for j in range(n)]
    r = [list(R.row(i)) for i in range(n)]
    al1, al2, al3, al4 = [], [], [], []
    be1, be2, be3, be4 = [], [], [], []
    for i in range(n):
        diff = q[1][i] - q[0][i]
        al1.append(s * diff)
        al3.append(t * diff)
        rhs = q[0][i] - (a1 * c * al1[i] + a2 * d * al3[i])
        al2.append(t1 * rhs)
        al4.append(t2 * rhs)
        be1.append(t1 * r[1][i])
        be3.append(t2 * r[1][i])
        rhs = r[0][i] - (a1 * c * be1[i] + a2 * d * be3[i])
        be2.append(s * rhs)
        be4.append(t * rhs)

    X1, X2 = _corner_block(n, c, u), _corner_block(n, d, v)
    B1 = IntMat.from_columns([al1, al2] + [[t1 * x for x in q[j]] for j in range(2, n)])
    B2 = IntMat.from_columns([al3, al4] + [[t2 * x for x in q[j]] for j in range(2, n)])
    C1 = IntMat([[x - y for x, y in zip(be1, be2)], be2] + [[t1 * x for x in r[j]] for j in range(2, n)])
    C2 = IntMat([[x - y for x, y in zip(be3, be4)], be4] + [[t2 * x for x in r[j]] for j in range(2, n)])
    check(a1 * (B1 @ X1) + a2 * (B2 @ X2) == Q, "border blocks rebuild Q", audit)
    check(a1 * (X1 @ C1) + a2 * (X2 @ C2) == R, "border blocks rebuild R", audit)
    return BorderBlocks(X1, X2, B1, B2, C1, C2)


def role_order(a) -> list[int]:
    odd = [i for i in range(TERMS) if a[i] % 2]
    first = odd[:2]
    return first + [i for i in range(TERMS) if i not in first]


def decompose_even(a, target: IntMat, *, budget: int = DEFAULT_BUDGET, seed: int = 0,
                   audit: Counter | None = None) -> Decomposition:
    a = as_coeffs(a)
    check_coefficients(a, TERMS)
    dim = target.dim
    if dim < 4 or dim % 2:
        raise BadInput(f"dimension must be even and at least 4, got {dim}")
    audit = Counter() if audit is None else audit
    n = dim // 2
    roles = role_order(a)
    r = [a[i] for i in roles]
    check(r[0] % 2 == 1 and r[1] % 2 == 1, "two odd coefficients lead the role order", audit)

    P, Q, R, S = block_split(target, n)
    m = trace_budget(r[0], r[1], P, S, n)
    lem: Lemma33Solution = solve_lemma33(r[0], r[1], m)
    bb = solve_border_system(r[0], r[1], lem.c, lem.d, lem.u, lem.v, Q, R, audit)
    check((r[0] * bb.X1.square() + r[1] * bb.X2.square()).trace() == S.trace() - P.trace(),
          "border squares carry the trace difference", audit)

    P0 = P - r[0] * (bb.B1 @ bb.C1) - r[1] * (bb.B2 @ bb.C2)
    S0 = S - r[0] * (bb.C1 @ bb.B1 + bb.X1.square()) - r[1] * (bb.C2 @ bb.B2 + bb.X2.square())
    check((P0 - S0).trace() == 0, "tr(P0 - S0) = 0", audit)
    pair = commutator_decompose(P0 - S0, budget=budget, seed=seed)
    X, Y = pair.X, pair.Y
    check(pair.commutator() == P0 - S0, "commutator pair verified", audit)
    N = P0 - X @ Y
    check(N == S0 - Y @ X, "P0 - XY = S0 - YX", audit)

    b34, b56 = bezout(r[2], r[3]), bezout(r[4], r[5])
    ts = (b34.t_a, b34.t_b, b56.t_a, b56.t_b)
    O, I = IntMat.zeros(n), IntMat.identity(n)
    roots = [
        block_compose(O, bb.B1, bb.C1, bb.X1),
        block_compose(O, bb.B2, bb.C2, bb.X2),
        block_compose(O, ts[0] * X, Y, O),
        block_compose(O, ts[1] * X, Y, O),
        block_compose(O, ts[2] * N, I, O),
        block_compose(O, ts[3] * N, I, O),
    ]
    squares = sorted(zip(roles, roots))
    total = IntMat.zeros(dim)
    for i, M in squares:
        total = total + a[i] * M.square()
    check(total == target, "even-dimension decomposition does not reproduce the target", audit)
    asm = EvenAssembly(P0, S0, pair, N, ts)
    return Decomposition(a, target, tuple(squares), audit, {
        "engine": "even",
        "roles": roles,
        "lemma": {"c": lem.c, "d": lem.d, "u": lem.u, "v": lem.v, "B": lem.B, "A_half": lem.A_half},
        "trace_target": m,
        "commutator_attempts": pair.attempts,
        "commutator_input_max_abs": (P0 - S0).max_abs(),
        "assembly": asm,
        "border": bb,
    })
