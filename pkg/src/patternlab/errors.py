"""Exception types shared across the package."""


class PatternLabError(Exception):
    """Base class for every error raised by patternlab."""


class ParseError(PatternLabError, ValueError):
    """Malformed input file. ``lineno`` is 1-based when known."""

    def __init__(self, message, lineno=None, source=None):
        self.lineno = lineno
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if lineno is not None:
            where += f"{lineno}:"
        super().__init__(f"{where} {message}" if where else message)


class UniverseMismatchError(PatternLabError, ValueError):
    """An itemset refers to items outside the dataset's universe."""


class EmptyPatternError(PatternLabError, ValueError):
    """A pattern-facing operation received the empty itemset."""


class UndefinedConfidenceError(PatternLabError, ZeroDivisionError):
    """The body of a rule has frequency zero."""


class WitnessError(PatternLabError, ValueError):
    """A witness handed to a backward mapping does not have the required shape."""


class CapExceededError(PatternLabError, ValueError):
    """A brute-force routine was asked to run beyond its configured size cap."""
