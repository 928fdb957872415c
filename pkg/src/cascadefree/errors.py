"""Exception hierarchy.

Every error carries a stable ``code`` string that the CLI writes to stderr,
so scripts can branch on it without parsing messages.
"""

from __future__ import annotations


class CascadeError(Exception):
    code = "CascadeError"


class InvalidDecomposition(CascadeError, ValueError):
    code = "InvalidDecomposition"


class InvalidOperation(CascadeError, ValueError):
    code = "InvalidOperation"


class NotApplicable(CascadeError):
    code = "NotApplicable"


class InvalidBase(CascadeError, ValueError):
    code = "InvalidBase"


class NotPrime(CascadeError, ValueError):
    code = "NotPrime"


class DimensionTooLarge(CascadeError):
    code = "DimensionTooLarge"


class SeedTooShort(CascadeError, ValueError):
    code = "SeedTooShort"


class StateCountMismatch(CascadeError):
    code = "StateCountMismatch"


class NotBinaryState(CascadeError):
    code = "NotBinaryState"


class NegationPresent(CascadeError):
    code = "NegationPresent"


class SymbolOutOfRange(CascadeError, ValueError):
    code = "SymbolOutOfRange"


class BudgetExceeded(CascadeError):
    code = "BudgetExceeded"


class DegenerateChain(CascadeError):
    code = "DegenerateChain"


class DegenerateDistribution(CascadeError):
    code = "DegenerateDistribution"


class InvalidMu(CascadeError, ValueError):
    code = "InvalidMu"


class NoInteriorRoot(CascadeError):
    code = "NoInteriorRoot"


class ToleranceNotMet(CascadeError):
    code = "ToleranceNotMet"


class SpecFileError(CascadeError, ValueError):
    code = "SpecFileError"
