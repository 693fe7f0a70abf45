"""Exact decompositions of integer matrices as sums sum(a_i X_i^2)."""

from .commutator import CommutatorPair, commutator_decompose
from .decompose2 import decompose_m2
from .decompose3 import decompose_3x3
from .decompose_even import decompose_even
from .decomposition import Decomposition, verify_decomposition
from .dispatch import BOUND_TABLE, bound, decompose_any, split_border
from .errors import (
    BadInput,
    BudgetExhausted,
    ConditionViolated,
    InternalAssertion,
    MatWaringError,
    NoSolution,
    NotPairwiseCoprime,
    TooFewCoefficients,
    TraceNonZero,
    ZeroCoefficient,
)
from .exact import eval_form
from .lemma33 import solve_lemma33
from .matrix import IntMat
from .universality import CoeffList, count_squares_m2_mod, decide_universal_m2, residue_universal_check

__all__ = [
    "BOUND_TABLE",
    "BadInput",
    "BudgetExhausted",
    "CoeffList",
    "CommutatorPair",
    "ConditionViolated",
    "Decomposition",
    "IntMat",
    "InternalAssertion",
    "MatWaringError",
    "NoSolution",
    "NotPairwiseCoprime",
    "TooFewCoefficients",
    "TraceNonZero",
    "ZeroCoefficient",
    "bound",
    "commutator_decompose",
    "count_squares_m2_mod",
    "decide_universal_m2",
    "decompose_3x3",
    "decompose_any",
    "decompose_even",
    "decompose_m2",
    "eval_form",
    "residue_universal_check",
    "solve_lemma33",
    "split_border",
    "verify_decomposition",
]
