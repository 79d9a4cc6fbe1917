"""Exception hierarchy shared by every module.

Each class carries a stable ``name`` so callers (notably the CLI) can report
machine-readable error identifiers.
"""


class AfinvError(Exception):
    name = "AfinvError"


class DimensionError(AfinvError, ValueError):
    name = "DimensionError"


class UsageError(AfinvError, ValueError):
    name = "UsageError"


class DomainError(AfinvError, ValueError):
    name = "DomainError"


class NotHyperbolicError(DomainError):
    name = "NotHyperbolic"


class NotPrimitiveError(DomainError):
    name = "NotPrimitive"


class FactorizationNotFound(DomainError):
    name = "FactorizationNotFound"


class RangeError(AfinvError, IndexError):
    name = "RangeError"


class ParseError(AfinvError, ValueError):
    name = "ParseError"


class ZeroDivisorError(AfinvError, ArithmeticError):
    """Raised when a claimed field turns out to have zero divisors.

    ``factor`` is a nontrivial monic factor of the defining polynomial
    (low-degree-first coefficients), which lets callers split and retry.
    """

    name = "ZeroDivisor"

    def __init__(self, factor):
        super().__init__(f"defining polynomial has the factor {list(factor)}")
        self.factor = tuple(factor)
