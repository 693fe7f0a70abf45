"""Exception hierarchy shared by every engine."""


class MatWaringError(Exception):
    """Base class for all library errors."""


class BadInput(MatWaringError, ValueError):
    """Malformed or out-of-range input (dimension mismatch, bad modulus, ...)."""


class NoSolution(MatWaringError):
    """An integer linear system has no integer solution."""


class ConditionViolated(MatWaringError):
    """The coefficient tuple fails the universality condition for n = 2."""


class ZeroCoefficient(BadInput):
    pass


class NotPairwiseCoprime(BadInput):
    pass


class TooFewCoefficients(BadInput):
    pass


class TraceNonZero(BadInput):
    pass


class InternalAssertion(MatWaringError, AssertionError):
    """A construction step produced something its derivation says is impossible."""


class BudgetExhausted(MatWaringError):
    """The commutator search spent its candidate budget without a verified pair."""


def check(cond, message, counter=None, key=None):
    """Raise InternalAssertion unless ``cond``; optionally tally passed checks."""
    if not cond:
        raise InternalAssertion(message)
    if counter is not None:
        counter[key or message] += 1
