"""Exception hierarchy shared by all modules."""


class InvfactError(Exception):
    """Base class for every error raised by this package."""


class MalformedInput(InvfactError, ValueError):
    """Input that violates a structural precondition (bad matrix, bad file, ...)."""


class ParseError(MalformedInput):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class OrderMismatch(MalformedInput):
    """A monomial automorphism does not have the declared order."""

    def __init__(self, message, power):
        self.power = power
        super().__init__(message)


class BoxNotStable(InvfactError):
    """A truncation box is not closed under the exponent action."""

    def __init__(self, message, orbit, enlargement):
        self.orbit = orbit
        self.enlargement = enlargement
        super().__init__(message)


class CriterionInapplicable(InvfactError):
    """The hypotheses of a criterion are not certified; no answer is given."""


class UnsupportedAction(InvfactError):
    """The action lies outside the class handled by the algorithms here."""


class MalformedWitness(InvfactError):
    """A certificate whose defining identity does not hold."""
