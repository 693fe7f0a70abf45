"""Universality of sum(a_i X_i^2) over 2x2 integer matrices.

The decider applies the closed-form criterion: the form is universal iff
no prime divides all but (at most) one coefficient and at least three
coefficients are not multiples of 4.  The residue checker is the
independent finite-ring counterpart: it enumerates every value of the form
over M_2(Z/r) by repeated Minkowski sums of square sets.

A 2x2 matrix over Z/r is encoded as ((x00*r + x01)*r + x10)*r + x11.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import BadInput
from .exact import factorize
from .matrix import IntMat

DEFAULT_RESIDUE_LIMIT = 16
PRIME_CONDITION = "PrimeDividesAllButOne"
MOD4_CONDITION = "FewerThanThreeNonMultiplesOf4"


@dataclass(frozen=True)
class CoeffList:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))
        if not self.coeffs:
            raise BadInput("coefficient list is empty")

    @classmethod
    def parse(cls, text: str) -> "CoeffList":
        try:
            return cls(tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok))
        except ValueError as exc:
            raise BadInput(f"cannot parse coefficients {text!r}") from exc

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    @property
    def odd_indices(self) -> tuple[int, ...]:
        return tuple(i for i, a in enumerate(self.coeffs) if a % 2)

    @property
    def mod4(self) -> tuple[int, ...]:
        return tuple(a % 4 for a in self.coeffs)

    @property
    def pairwise_coprime(self) -> bool:
        c = self.coeffs
        return all(math.gcd(c[i], c[j]) == 1 for i in range(len(c)) for j in range(i + 1, len(c)))


def as_coeffs(a) -> CoeffList:
    return a if isinstance(a, CoeffList) else CoeffList(tuple(a))


@dataclass(frozen=True)
class UniversalityVerdict:
    universal: bool
    failed_condition: str | None = None
    prime: int | None = None
    witness_modulus: int | None = None

    def __post_init__(self):
        if self.universal != (self.failed_condition is None):
            raise BadInput("failed_condition must be set exactly when not universal")


def all_but_one_gcds(a: Sequence[int]) -> list[int]:
    """g[i] = gcd of every coefficient except a[i], via prefix and suffix gcds."""
    m = len(a)
    prefix, suffix = [0] * (m + 1), [0] * (m + 1)
    for i in range(m):
        prefix[i + 1] = math.gcd(prefix[i], a[i])
    for i in range(m - 1, -1, -1):
        suffix[i] = math.gcd(suffix[i + 1], a[i])
    return [math.gcd(prefix[i], suffix[i + 1]) for i in range(m)]


def decide_universal_m2(a) -> UniversalityVerdict:
    a = as_coeffs(a)
    # every prime divides 0, so a zero gcd is reported with the prime 2
    bad = [g for g in all_but_one_gcds(a.coeffs) if g != 1]
    if bad:
        p = min(2 if g == 0 else factorize(g)[0].p for g in bad)
        return UniversalityVerdict(False, PRIME_CONDITION, p, p)
    if sum(1 for r in a.mod4 if r) < 3:
        return UniversalityVerdict(False, MOD4_CONDITION, None, 4)
    return UniversalityVerdict(True)


# --- finite ring enumeration ----------------------------------------------


def _check_modulus(r: int, limit: int) -> None:
    if not 2 <= r <= limit:
        raise BadInput(f"modulus {r} outside [2, {limit}]")


def encode(M, r: int) -> int:
    rows = M.rows if isinstance(M, IntMat) else M
    (x00, x01), (x10, x11) = rows
    return (((x00 % r) * r + x01 % r) * r + x10 % r) * r + x11 % r


def decode(idx: int, r: int) -> IntMat:
    x11 = idx % r
    idx //= r
    x10 = idx % r
    idx //= r
    x01 = idx % r
    x00 = idx // r
    return IntMat([[x00, x01], [x10, x11]])


def _digits(idx: np.ndarray, r: int) -> np.ndarray:
    out = np.empty((4,) + idx.shape, dtype=np.int64)
    rest = idx.copy()
    for k in range(3, -1, -1):
        out[k] = rest % r
        rest //= r
    return out


def _undigits(d: np.ndarray, r: int) -> np.ndarray:
    return ((d[0] * r + d[1]) * r + d[2]) * r + d[3]


@lru_cache(maxsize=None)
def _squares(r: int) -> np.ndarray:
    """Sorted indices of {X^2 : X in M_2(Z/r)}."""
    x00, x01, x10, x11 = _digits(np.arange(r**4, dtype=np.int64), r)
    sq = np.stack([
        x00 * x00 + x01 * x10,
        x00 * x01 + x01 * x11,
        x10 * x00 + x11 * x10,
        x10 * x01 + x11 * x11,
    ]) % r
    return np.unique(_undigits(sq, r))


def _scaled_squares(a: int, r: int) -> np.ndarray:
    return np.unique(_undigits(_digits(_squares(r), r) * (a % r) % r, r))


def _sumset(S: np.ndarray, Q: np.ndarray, r: int, chunk: int = 1 << 22) -> np.ndarray:
    size = r**4
    out = np.zeros(size, dtype=bool)
    dq = _digits(Q, r)
    step = max(1, chunk // len(Q))
    for lo in range(0, len(S), step):
        ds = _digits(S[lo : lo + step], r)
        total = (ds[:, :, None] + dq[:, None, :]) % r
        out[_undigits(total, r).ravel()] = True
        if out.all():
            break
    return np.flatnonzero(out)


@lru_cache(maxsize=4096)
def _reachable(residues: tuple[int, ...], r: int) -> np.ndarray:
    # residues are sorted, so every prefix is itself a cache entry
    if not residues:
        return np.zeros(1, dtype=np.int64)
    prev = _reachable(residues[:-1], r)
    if len(prev) == r**4:
        return prev
    return _sumset(prev, _scaled_squares(residues[-1], r), r)


@dataclass(frozen=True)
class ResidueReport:
    modulus: int
    universal: bool
    missed: IntMat | None
    reachable_count: int
    _reachable: np.ndarray = field(repr=False, compare=False, default=None)

    def represents(self, M) -> bool:
        """True if the form attains M (reduced mod the modulus)."""
        idx = encode(M, self.modulus)
        pos = np.searchsorted(self._reachable, idx)
        return bool(pos < len(self._reachable) and self._reachable[pos] == idx)

    def missed_matrices(self, limit: int | None = None) -> list[IntMat]:
        mask = np.ones(self.modulus**4, dtype=bool)
        mask[self._reachable] = False
        idx = np.flatnonzero(mask)
        if limit is not None:
            idx = idx[:limit]
        return [decode(int(i), self.modulus) for i in idx]


def residue_universal_check(a, r: int, limit: int = DEFAULT_RESIDUE_LIMIT) -> ResidueReport:
    """Exact set of values of the form over M_2(Z/r)."""
    a = as_coeffs(a)
    _check_modulus(r, limit)
    reach = _reachable(tuple(sorted(x % r for x in a)), r)
    count = len(reach)
    missed = None
    if count < r**4:
        # reach is sorted, so the first gap is the least missed index
        gaps = np.flatnonzero(reach != np.arange(count))
        missed = decode(int(gaps[0]) if len(gaps) else count, r)
    return ResidueReport(r, count == r**4, missed, count, reach)


def count_squares_m2_mod(r: int, limit: int = DEFAULT_RESIDUE_LIMIT) -> int:
    _check_modulus(r, limit)
    return len(_squares(r))
