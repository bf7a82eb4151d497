"""Exception hierarchy for the quantgames package."""

from __future__ import annotations


class QuantGamesError(Exception):
    """Base class for all errors raised by this package."""


class NotHermitian(QuantGamesError, ValueError):
    pass


class InvalidDimension(QuantGamesError, ValueError):
    pass


class InvalidParams(QuantGamesError, ValueError):
    pass


class DimensionMismatch(QuantGamesError, ValueError):
    pass


class NonUnitaryStrategy(QuantGamesError, ValueError):
    pass


class NotMaximallyEntangled(QuantGamesError, ValueError):
    pass


class AmbiguousRank(QuantGamesError, ArithmeticError):
    """Singular values sit too close to the rank threshold to decide a dimension."""


class BudgetExceeded(QuantGamesError, RuntimeError):
    pass


class OrderingViolation(QuantGamesError, ValueError):
    pass


class InvalidProbabilities(QuantGamesError, ValueError):
    pass


class ConfigInvalid(QuantGamesError, ValueError):
    pass
