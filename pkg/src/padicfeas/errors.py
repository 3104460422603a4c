"""Shared exception types."""


class CapsExceeded(RuntimeError):
    """A configured resource cap or search budget was exhausted.

    Raised instead of returning a possibly-wrong answer.
    """


class FactorBudgetExceeded(CapsExceeded):
    """Integer factoring exceeded its iteration budget."""


class PrimeSearchExhausted(CapsExceeded):
    """No prime was found within the configured number of trials."""


class InexactDivision(ArithmeticError):
    """Polynomial division left a nonzero remainder or a fractional quotient."""
