"""The result type shared by every engine, and the independent verifier."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any

from .errors import BadInput
from .matrix import IntMat
from .universality import CoeffList, as_coeffs


@dataclass(frozen=True)
class Decomposition:
    """target == sum(coeffs[i] * M^2 for i, M in squares)."""

    coeffs: CoeffList
    target: IntMat
    squares: tuple[tuple[int, IntMat], ...]
    audit: Counter = field(default_factory=Counter, compare=False, repr=False)
    trace: dict[str, Any] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", as_coeffs(self.coeffs))
        object.__setattr__(self, "squares", tuple((int(i), M) for i, M in self.squares))

    def matrices(self) -> list[IntMat]:
        """One matrix per coefficient, zero where no square was listed."""
        n = self.target.dim
        out = [IntMat.zeros(n) for _ in self.coeffs]
        for i, M in self.squares:
            out[i] = M
        return out

    def nonzero_count(self) -> int:
        return sum(1 for _, M in self.squares if not M.is_zero())


def evaluate(d: Decomposition) -> IntMat:
    n = d.target.dim
    total = IntMat.zeros(n)
    for i, M in d.squares:
        if not 0 <= i < len(d.coeffs):
            raise BadInput(f"square index {i} out of range")
        if M.shape != (n, n):
            raise BadInput(f"square {i} has shape {M.shape}, target is {n}x{n}")
        total = total + d.coeffs[i] * M.square()
    return total


def verify_decomposition(d: Decomposition) -> tuple[bool, tuple[int, int] | None]:
    """(True, None) if the squares reproduce the target, else (False, first bad cell)."""
    value = evaluate(d)
    n = d.target.dim
    for i in range(n):
        for j in range(n):
            if value[i, j] != d.target[i, j]:
                return False, (i, j)
    return True, None
