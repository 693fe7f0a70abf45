"""Top-level dispatcher for any dimension n >= 2.

n = 2 uses the 2x2 engine, n = 3 the six-term 3x3 engine, even n >= 4 the
six-term even engine.  Odd n >= 5 peels off two border terms so that the
remainder is block diagonal with a 3x3 block and an (n - 3) x (n - 3)
block; both blocks are decomposed with the same six coefficients and the
pieces are glued as [[X_i, O], [O, W_i]].
"""

from __future__ import annotations

from collections import Counter

from .commutator import DEFAULT_BUDGET
from .decompose2 import decompose_m2
from .decompose3 import check_coefficients, decompose_3x3
from .decompose_even import decompose_even
from .decomposition import Decomposition, verify_decomposition
from .errors import BadInput, TooFewCoefficients, check
from .exact import bezout, block_compose, block_diag, block_split
from .matrix import IntMat
from .universality import CoeffList, as_coeffs

__all__ = [
    "bound",
    "BOUND_TABLE",
    "split_border",
    "decompose_any",
    "verify_decomposition",
    "Decomposition",
]

# required number of coefficients by dimension; even and odd n >= 4 follow the pattern
BOUND_TABLE = {2: 4, 3: 6, "even": 6, "odd": 8}


def bound(n: int) -> int:
    if n < 2:
        raise BadInput(f"dimension must be at least 2, got {n}")
    if n in BOUND_TABLE:
        return BOUND_TABLE[n]
    return BOUND_TABLE["even"] if n % 2 == 0 else BOUND_TABLE["odd"]


def split_border(a1: int, a2: int, A: IntMat, p: int, q: int,
                 audit: Counter | None = None) -> tuple[IntMat, IntMat, IntMat, IntMat]:
    """Return (M1, M2, X', W') with A - a1 M1^2 - a2 M2^2 = diag(X', W')."""
    if A.dim != p + q or p < 2 or q < 2:
        raise BadInput(f"cannot split a {A.dim}x{A.dim} matrix as {p} + {q}")
    bp = bezout(a1, a2)
    X, Y, Z, W = block_split(A, p)
    Op, Iq = IntMat.zeros(p), IntMat.identity(q)
    M1 = block_compose(Op, bp.t_a * Y, bp.t_a * Z, Iq)
    M2 = block_compose(Op, bp.t_b * Y, bp.t_b * Z, Iq)
    kappa = a1 * bp.t_a**2 + a2 * bp.t_b**2
    Xp = X - kappa * (Y @ Z)
    Wq = W - kappa * (Z @ Y) - (a1 + a2) * Iq
    check(A - a1 * M1.square() - a2 * M2.square() == block_diag(Xp, Wq),
          "border terms leave a block-diagonal remainder", audit)
    return M1, M2, Xp, Wq


def _prefix(a: CoeffList, k: int) -> CoeffList:
    return CoeffList(a.coeffs[:k])


def _pad(a: CoeffList, target: IntMat, sub: Decomposition, audit: Counter, trace: dict) -> Decomposition:
    squares = list(sub.squares)
    n = target.dim
    squares += [(i, IntMat.zeros(n)) for i in range(len(sub.coeffs), len(a))]
    return Decomposition(a, target, tuple(squares), audit, trace)


def decompose_any(a, target: IntMat, *, budget: int = DEFAULT_BUDGET, seed: int = 0) -> Decomposition:
    a = as_coeffs(a)
    n = target.dim
    need = bound(n)
    audit: Counter = Counter()
    if n == 2:
        d = decompose_m2(a, target)
        audit.update(d.audit)
        result = Decomposition(a, target, d.squares, audit, d.trace)
    else:
        if len(a) < need:
            raise TooFewCoefficients(f"dimension {n} needs {need} coefficients, got {len(a)}")
        check_coefficients(a, len(a))
        head = _prefix(a, need)
        if n == 3:
            d = decompose_3x3(head, target, audit)
            result = _pad(a, target, d, audit, d.trace)
        elif n % 2 == 0:
            d = decompose_even(head, target, budget=budget, seed=seed, audit=audit)
            result = _pad(a, target, d, audit, d.trace)
        else:
            result = _decompose_odd(a, head, target, budget, seed, audit)
    ok, cell = verify_decomposition(result)
    check(ok, f"decomposition fails at cell {cell}", audit)
    if n > 2:
        check(result.nonzero_count() <= need, "too many nonzero squares", audit)
    return result


def _decompose_odd(a: CoeffList, head: CoeffList, target: IntMat, budget: int, seed: int,
                   audit: Counter) -> Decomposition:
    n = target.dim
    M1, M2, Xp, Wq = split_border(head[0], head[1], target, 3, n - 3, audit)
    inner = CoeffList(head.coeffs[2:])
    top = decompose_3x3(inner, Xp, audit)
    if n - 3 == 2:
        bottom = decompose_m2(inner, Wq)
        audit.update(bottom.audit)
    else:
        bottom = decompose_even(inner, Wq, budget=budget, seed=seed, audit=audit)
    tops, bottoms = top.matrices(), bottom.matrices()
    squares = [(0, M1), (1, M2)]
    for k, (Xk, Wk) in enumerate(zip(tops, bottoms)):
        G = block_diag(Xk, Wk)
        check(G.square() == block_diag(Xk.square(), Wk.square()), "block-diagonal squares split", audit)
        squares.append((k + 2, G))
    squares += [(i, IntMat.zeros(n)) for i in range(len(head), len(a))]
    return Decomposition(a, target, tuple(squares), audit, {
        "engine": "odd",
        "split": [3, n - 3],
        "block3": top.trace,
        "block_rest": bottom.trace,
    })
