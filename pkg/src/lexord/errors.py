"""Exception types shared across the package."""


class LexordError(Exception):
    """Base class for domain errors (the CLI maps these to exit code 1)."""


class GrammarSyntaxError(LexordError, ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class GrammarError(LexordError, ValueError):
    """A grammar violates a structural invariant."""


class EpsilonInLanguage(LexordError):
    pass


class EmptyLanguage(LexordError):
    pass


class NotNormalized(LexordError):
    """Operation needs a grammar in weak Greibach normal form."""


class AlphabetMismatch(LexordError, ValueError):
    pass


class NotPrefixLanguage(LexordError):
    pass


class WordNotInLanguage(LexordError):
    pass


class OrderViolation(LexordError):
    pass


class TermSyntaxError(LexordError, ValueError):
    pass


class InvalidAddress(LexordError, ValueError):
    pass
