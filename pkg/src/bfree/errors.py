"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: parse errors exit 2, budget and
overflow errors exit 3, precondition violations exit 4.
"""


class BFreeError(Exception):
    """Base class for all package errors."""


class FamilyParseError(BFreeError):
    """A family spec string could not be parsed."""


class PeriodOverflowError(BFreeError):
    """An exact computation would need a period or budget beyond its cap."""


class SearchExhaustedError(BFreeError):
    """A bounded search (e.g. for a cutoff N) ran out of candidates."""


class PreconditionError(BFreeError):
    """An operation was called with inputs violating its stated preconditions."""


class NotCoprimeError(PreconditionError):
    """Two moduli that must be coprime share a factor."""

    def __init__(self, a: int, c: int):
        self.a = a
        self.c = c
        super().__init__(f"moduli {a} and {c} share gcd > 1")
