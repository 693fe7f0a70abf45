"""Number-theoretic kernel and exact linear algebra over the integers.

Everything here is a pure function of its arguments.  The integer linear
solver works by unimodular column reduction to an echelon form, so every
solution it returns is certified by a final multiplication.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import BadInput, NoSolution
from .matrix import IntMat

TRIAL_LIMIT = 10**6


# --- gcd and Bezout -------------------------------------------------------


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``a*s + b*t == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class BezoutPair:
    a: int
    b: int
    t_a: int
    t_b: int

    def __post_init__(self):
        if self.a * self.t_a + self.b * self.t_b != 1:
            raise BadInput(f"not a Bezout pair: {self}")


def bezout(a: int, b: int) -> BezoutPair:
    g, s, t = ext_gcd(a, b)
    if g != 1:
        raise BadInput(f"gcd({a}, {b}) = {g}, expected 1")
    return BezoutPair(a, b, s, t)


def gcd_list(values: Sequence[int]) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g


def solve_linear_diophantine(c: Sequence[int], b: int) -> list[int]:
    """Solve ``sum(c[i] * x[i]) == b`` by chaining ext_gcd left to right.

    Raises NoSolution when gcd(c) does not divide b.
    """
    if not c:
        raise BadInput("empty coefficient list")
    g, x = 0, []
    for ci in c:
        g, s, t = ext_gcd(g, ci)
        x = [s * xi for xi in x] + [t]
    if g == 0:
        if b != 0:
            raise NoSolution(f"all coefficients zero but b = {b}")
        return [0] * len(c)
    if b % g:
        raise NoSolution(f"gcd {g} does not divide {b}")
    k = b // g
    return [k * xi for xi in x]


# --- integer linear systems ----------------------------------------------


def _as_rows(M) -> list[list[int]]:
    if isinstance(M, IntMat):
        return M.tolist()
    rows = [list(map(int, r)) for r in M]
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise BadInput("matrix rows must be non-empty and equal length")
    return rows


def column_echelon(M) -> tuple[list[list[int]], list[list[int]], list[tuple[int, int]]]:
    """Unimodular column reduction ``M V = L`` with L in lower column echelon form.

    Returns ``(L_cols, V_cols, pivots)``: columns of L, columns of V and the
    list of ``(row, col)`` pivot positions.  Columns past the last pivot are
    zero and span the integer kernel.
    """
    rows = _as_rows(M)
    k, l = len(rows), len(rows[0])
    cols = [list(col) for col in zip(*rows)]
    vcols = [[int(i == j) for i in range(l)] for j in range(l)]
    pivots: list[tuple[int, int]] = []
    pc = 0
    for i in range(k):
        if pc == l:
            break
        for j in range(pc + 1, l):
            b = cols[j][i]
            if b == 0:
                continue
            a = cols[pc][i]
            g, s, t = ext_gcd(a, b)
            ag, bg = a // g, b // g
            cp, cj = cols[pc], cols[j]
            cols[pc] = [s * x + t * y for x, y in zip(cp, cj)]
            cols[j] = [ag * y - bg * x for x, y in zip(cp, cj)]
            vp, vj = vcols[pc], vcols[j]
            vcols[pc] = [s * x + t * y for x, y in zip(vp, vj)]
            vcols[j] = [ag * y - bg * x for x, y in zip(vp, vj)]
        piv = cols[pc][i]
        if piv == 0:
            continue
        if piv < 0:
            cols[pc] = [-x for x in cols[pc]]
            vcols[pc] = [-x for x in vcols[pc]]
            piv = -piv
        # reduce earlier pivot columns in this row to keep entries small
        for j in range(pc):
            q = cols[j][i] // piv
            if q:
                cols[j] = [x - q * y for x, y in zip(cols[j], cols[pc])]
                vcols[j] = [x - q * y for x, y in zip(vcols[j], vcols[pc])]
        pivots.append((i, pc))
        pc += 1
    return cols, vcols, pivots


def smith_solve(M, b: Sequence[int]) -> list[int]:
    """Return an integer x with ``M x == b`` or raise NoSolution.

    ``M`` may be rectangular (an IntMat or a list of rows).  Free variables
    are set to zero; the result is checked by multiplication before return.
    """
    rows = _as_rows(M)
    b = [int(x) for x in b]
    if len(b) != len(rows):
        raise BadInput(f"right-hand side has length {len(b)}, expected {len(rows)}")
    cols, vcols, pivots = column_echelon(rows)
    l = len(rows[0])
    y = [0] * l
    for i, j in pivots:
        val = b[i] - sum(cols[jj][i] * y[jj] for jj in range(j))
        piv = cols[j][i]
        if val % piv:
            raise NoSolution(f"row {i}: {piv} does not divide {val}")
        y[j] = val // piv
    x = [sum(vcols[j][i] * y[j] for j in range(l)) for i in range(l)]
    if any(sum(a * xi for a, xi in zip(r, x)) != bi for r, bi in zip(rows, b)):
        raise NoSolution("system is inconsistent")
    return x


# --- factorization --------------------------------------------------------


@dataclass(frozen=True, order=True)
class PrimePower:
    p: int
    e: int

    def __post_init__(self):
        if self.p < 2 or self.e < 1 or not is_probable_prime(self.p):
            raise BadInput(f"invalid prime power {self.p}^{self.e}")

    @property
    def value(self) -> int:
        return self.p**self.e


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * (TRIAL_LIMIT + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(TRIAL_LIMIT**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, TRIAL_LIMIT + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n: int) -> bool:
    # the fixed bases are a proof of primality below 3.3e24
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _rho(n: int, rng: random.Random) -> int:
    """Brent's variant of Pollard rho; returns a nontrivial factor of composite n."""
    if n % 2 == 0:
        return 2
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> list[PrimePower]:
    """Prime factorization of |n| as increasing prime powers; [] for units."""
    if n == 0:
        raise BadInput("cannot factor 0")
    n = abs(n)
    counts: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    if n > 1:
        rng = random.Random(0x5EED)
        stack = [n]
        while stack:
            m = stack.pop()
            if m == 1:
                continue
            if is_probable_prime(m):
                counts[m] = counts.get(m, 0) + 1
                continue
            f = _rho(m, rng)
            stack.extend((f, m // f))
    return [PrimePower(p, e) for p, e in sorted(counts.items())]


def prime_divisors(n: int) -> list[int]:
    return [pp.p for pp in factorize(n)]


def crt_combine(residues: Sequence[tuple[int, int]]) -> int:
    """Least non-negative x with x = r (mod m) for every pair (r, m)."""
    moduli = [m for _, m in residues]
    if any(m < 1 for m in moduli):
        raise BadInput("moduli must be positive")
    for i in range(len(moduli)):
        for j in range(i + 1, len(moduli)):
            if math.gcd(moduli[i], moduli[j]) != 1:
                raise BadInput(f"moduli {moduli[i]} and {moduli[j]} are not coprime")
    x, M = 0, 1
    for r, m in residues:
        k = (r - x) * pow(M, -1, m) % m if m > 1 else 0
        x += M * k
        M *= m
    return x % M


# --- forms and matrix helpers --------------------------------------------


def eval_form(a: Sequence[int], X: Sequence[IntMat]) -> IntMat:
    """Exact value of sum(a[i] * X[i]^2)."""
    if len(a) != len(X):
        raise BadInput(f"{len(a)} coefficients but {len(X)} matrices")
    if not X:
        raise BadInput("empty form")
    n = X[0].dim
    total = IntMat.zeros(n)
    for ai, Xi in zip(a, X):
        if Xi.dim != n:
            raise BadInput("matrices of different dimensions")
        total = total + ai * Xi.square()
    return total


def integer_inverse(T: IntMat) -> IntMat:
    det = T.det()
    if det not in (1, -1):
        raise BadInput(f"matrix is not unimodular (det = {det})")
    inv = T.inverse_fraction()
    return IntMat([[int(x) for x in r] for r in inv])


def conjugate_unimodular(T: IntMat, A: IntMat) -> IntMat:
    """Return T^-1 A T for unimodular T."""
    return integer_inverse(T) @ A @ T


def block_compose(P: IntMat, Q: IntMat, R: IntMat, S: IntMat) -> IntMat:
    p, q = P.dim, S.dim
    if Q.shape != (p, q) or R.shape != (q, p):
        raise BadInput("block shapes do not fit together")
    top = [pr + qr for pr, qr in zip(P.rows, Q.rows)]
    bottom = [rr + sr for rr, sr in zip(R.rows, S.rows)]
    return IntMat(top + bottom)


def block_split(A: IntMat, p: int) -> tuple[IntMat, IntMat, IntMat, IntMat]:
    n = A.dim
    if not 0 < p < n:
        raise BadInput(f"split point {p} outside (0, {n})")
    return (
        A.submatrix(0, p, 0, p),
        A.submatrix(0, p, p, n),
        A.submatrix(p, n, 0, p),
        A.submatrix(p, n, p, n),
    )


def block_diag(X: IntMat, W: IntMat) -> IntMat:
    return block_compose(X, IntMat.zeros(X.dim, W.dim), IntMat.zeros(W.dim, X.dim), W)
