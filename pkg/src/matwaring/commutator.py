"""Integer commutators: given trace-zero Z, find integer X, Y with XY - YX = Z.

For a fixed X the map Y -> XY - YX is linear, so the whole problem comes
down to picking a good X.  Two candidate sources are interleaved:

* Z-adapted candidates.  After conjugating Z by a unimodular V, take
  X = N + e1 a^T, where N is the lower shift.  Such an X is cyclic over
  the integers (e1 generates a unimodular Krylov basis), so the image of
  ad_X is a saturated sublattice.  Z then lies in that image iff
  tr(Z X^k) = 0 for k = 1..n-1, and after subtracting a[j] multiples of
  the lower-order conditions those equations are affine in a.  That makes
  the choice of X one small integer linear solve (n unknowns, n - 1
  equations).
* A fixed structured stream (shift, small companions, shift plus
  diagonal, small matrices) as a fallback.

Every returned pair is checked by multiplication.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator

from .errors import BudgetExhausted, NoSolution, TraceNonZero, check
from .exact import integer_inverse, smith_solve
from .matrix import IntMat

DEFAULT_BUDGET = 256


@dataclass(frozen=True)
class CommutatorPair:
    X: IntMat
    Y: IntMat
    attempts: int = 0

    def commutator(self) -> IntMat:
        return self.X @ self.Y - self.Y @ self.X


def ad_matrix(X: IntMat) -> list[list[int]]:
    """Matrix of Y -> XY - YX acting on row-major vec(Y)."""
    n = X.dim
    rows = []
    for i in range(n):
        for j in range(n):
            r = [0] * (n * n)
            for k in range(n):
                r[k * n + j] += X[i, k]
                r[i * n + k] -= X[k, j]
            rows.append(r)
    # diagonal rows must sum to zero: commutators are trace free
    diag_sum = [sum(rows[i * n + i][c] for i in range(n)) for c in range(n * n)]
    check(not any(diag_sum), "ad_X assembly is not trace free")
    return rows


def solve_ad(X: IntMat, Z: IntMat) -> IntMat:
    """Integer Y with XY - YX = Z; raises NoSolution if there is none."""
    n = X.dim
    basis = krylov_basis(X)
    if basis is not None:
        return _solve_ad_cyclic(X, Z, *basis)
    y = smith_solve(ad_matrix(X), Z.entries())
    return IntMat([y[i * n : (i + 1) * n] for i in range(n)])


def krylov_basis(X: IntMat) -> tuple[IntMat, IntMat] | None:
    """(K, K^-1) for K = [e1, X e1, ..., X^(n-1) e1] when K is unimodular."""
    n = X.dim
    cols = [[int(i == 0) for i in range(n)]]
    for _ in range(n - 1):
        cols.append(X.matvec(cols[-1]))
    K = IntMat.from_columns(cols)
    if K.det() not in (1, -1):
        return None
    return K, integer_inverse(K)


def _solve_ad_cyclic(X: IntMat, Z: IntMat, K: IntMat, Kinv: IntMat) -> IntMat:
    # In the Krylov basis X is a companion matrix C with C e_j = e_(j+1).
    # Column j of CY - YC = Z reads C y_j - y_(j+1) = z_j, so y_1 = 0 fixes
    # Y; the last column then holds iff Z lies in the image at all.
    n = X.dim
    C = Kinv @ X @ K
    Zc = Kinv @ Z @ K
    cols = [[0] * n]
    for j in range(n - 1):
        cols.append([a - b for a, b in zip(C.matvec(cols[-1]), Zc.col(j))])
    Yc = IntMat.from_columns(cols)
    if C @ Yc - Yc @ C != Zc:
        raise NoSolution("target is not in the image of ad_X")
    return K @ Yc @ Kinv


def lower_shift(n: int) -> IntMat:
    return IntMat([[int(i == j + 1) for j in range(n)] for i in range(n)])


def upper_shift(n: int) -> IntMat:
    return IntMat([[int(j == i + 1) for j in range(n)] for i in range(n)])


def companion(coeffs: tuple[int, ...]) -> IntMat:
    """Companion of x^n + c[n-1] x^(n-1) + ... + c[0]; ones on the subdiagonal."""
    n = len(coeffs)
    rows = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i + 1][i] = 1
    for i in range(n):
        rows[i][n - 1] = -coeffs[i]
    return IntMat(rows)


def _first_row_shift(a: list[int]) -> IntMat:
    n = len(a)
    rows = [[0] * n for _ in range(n)]
    rows[0] = list(a)
    for i in range(n - 1):
        rows[i + 1][i] = 1
    return IntMat(rows)


def _adapted_conditions(Z: IntMat, a: list[int]) -> list[int]:
    # tr(Z M_k) with M_k = X^k - sum_{j<k} a[j] X^(k-1-j); affine in a
    n = Z.dim
    X = _first_row_shift(a)
    powers = [IntMat.identity(n)]
    for _ in range(1, n):
        powers.append(powers[-1] @ X)
    out = []
    for k in range(1, n):
        M = powers[k]
        for j in range(k):
            M = M - a[j] * powers[k - 1 - j]
        out.append((Z @ M).trace())
    return out


def adapted_candidate(Z: IntMat) -> IntMat | None:
    """X = N + e1 a^T with tr(Z X^k) = 0 for 1 <= k < n, or None if no integer a."""
    n = Z.dim
    base = _adapted_conditions(Z, [0] * n)
    columns = []
    for l in range(n):
        unit = [0] * n
        unit[l] = 1
        columns.append([v - b for v, b in zip(_adapted_conditions(Z, unit), base)])
    system = [list(r) for r in zip(*columns)]
    try:
        sol = smith_solve(system, [-b for b in base])
    except NoSolution:
        return None
    X = _first_row_shift(sol)
    P = IntMat.identity(n)
    for _ in range(1, n):
        P = P @ X
        if (Z @ P).trace() != 0:
            return None
    return X


def _elementary_pair(n: int, rng: random.Random, steps: int) -> tuple[IntMat, IntMat]:
    """A random unimodular V together with its inverse."""
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    W = [row[:] for row in V]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        s = rng.choice((-2, -1, 1, 2))
        # V <- V (I + s E_ij): column j += s * column i
        for r in range(n):
            V[r][j] += s * V[r][i]
        # W <- (I - s E_ij) W: row i -= s * row j
        W[i] = [x - s * y for x, y in zip(W[i], W[j])]
    return IntMat(V), IntMat(W)


def gen_structured_X(n: int, budget: int, seed: int = 0) -> Iterator[IntMat]:
    """Deterministic stream of small structured candidates, at most ``budget`` long."""
    if n < 2:
        raise ValueError("dimension must be at least 2")
    rng = random.Random(seed)

    def tiers():
        yield upper_shift(n)
        for c in _small_tuples(n, rng):
            yield companion(c)
        S = upper_shift(n)
        for d in _small_tuples(n, rng):
            if len(set(d)) > 1:
                yield S + IntMat.diag(d)
        if n <= 3:
            for ent in itertools.product(range(-2, 3), repeat=n * n):
                M = IntMat([ent[i * n : (i + 1) * n] for i in range(n)])
                if M != M[0, 0] * IntMat.identity(n):
                    yield M

    seen = set()
    count = 0
    for X in tiers():
        if count >= budget:
            return
        if X in seen:
            continue
        seen.add(X)
        count += 1
        yield X


def _small_tuples(n: int, rng: random.Random, limit: int = 4096):
    if 5**n <= limit:
        pool = list(itertools.product(range(-2, 3), repeat=n))
        rng.shuffle(pool)
        yield from pool
    else:
        drawn = set()
        while len(drawn) < limit:
            t = tuple(rng.randint(-2, 2) for _ in range(n))
            if t not in drawn:
                drawn.add(t)
                yield t


def precondition(Z: IntMat, seed: int = 0, rounds: int = 8) -> tuple[IntMat, IntMat, IntMat]:
    """Greedy unimodular conjugation that shrinks sum |Z_ij|.

    Returns (Z', V, V^-1) with Z' = V^-1 Z V.
    """
    n = Z.dim
    rng = random.Random(seed)
    V, W = IntMat.identity(n), IntMat.identity(n)
    cur = Z
    weight = sum(abs(x) for x in cur.entries())
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for _ in range(rounds):
        rng.shuffle(pairs)
        improved = False
        for i, j in pairs:
            for s in (1, -1):
                E = IntMat.identity(n).with_entry(i, j, s)
                Einv = IntMat.identity(n).with_entry(i, j, -s)
                cand = Einv @ cur @ E
                w = sum(abs(x) for x in cand.entries())
                if w < weight:
                    cur, weight = cand, w
                    V, W = V @ E, Einv @ W
                    improved = True
        if not improved:
            break
    return cur, V, W


def commutator_decompose(
    Z: IntMat,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    use_precondition: bool = False,
) -> CommutatorPair:
    """Integer X, Y with XY - YX = Z for trace-zero Z.

    Raises TraceNonZero for bad input and BudgetExhausted when ``budget``
    candidates all fail.
    """
    n = Z.dim
    if Z.trace() != 0:
        raise TraceNonZero(f"trace is {Z.trace()}, not 0")
    if Z.is_zero():
        return CommutatorPair(IntMat.zeros(n), IntMat.zeros(n), 0)

    V0, W0 = IntMat.identity(n), IntMat.identity(n)
    target = Z
    if use_precondition:
        target, V0, W0 = precondition(Z, seed)

    rng = random.Random(seed)
    stream = gen_structured_X(n, budget, seed)
    attempts = 0
    round_no = 0
    while attempts < budget:
        # Z-adapted candidate under a fresh conjugation
        if round_no == 0:
            V, W = IntMat.identity(n), IntMat.identity(n)
        else:
            V, W = _elementary_pair(n, rng, steps=n + round_no % (2 * n))
        Zc = W @ target @ V
        attempts += 1
        X = adapted_candidate(Zc)
        if X is not None:
            try:
                Y = solve_ad(X, Zc)
            except NoSolution:
                Y = None
            if Y is not None:
                return _finish(V0 @ V, W @ W0, X, Y, Z, attempts)
        round_no += 1
        if attempts >= budget:
            break
        X = next(stream, None)
        if X is not None:
            attempts += 1
            try:
                Y = solve_ad(X, target)
            except NoSolution:
                continue
            return _finish(V0, W0, X, Y, Z, attempts)
    raise BudgetExhausted(f"no commutator pair found within budget {budget}")


def _finish(V: IntMat, W: IntMat, X: IntMat, Y: IntMat, Z: IntMat, attempts: int) -> CommutatorPair:
    X, Y = V @ X @ W, V @ Y @ W
    check(X @ Y - Y @ X == Z, "commutator pair does not reproduce Z")
    return CommutatorPair(X, Y, attempts)
