"""Exception hierarchy shared by the core modules and the CLI."""


class RssError(Exception):
    """Base class for every error raised by the toolkit."""


class TurtleSyntaxError(RssError, ValueError):
    """
    Raised when a Turtle document cannot be parsed.

    Args:
        message (str): What went wrong.
        line (int): 1-based line of the offending token (0 if unknown).
        column (int): 1-based column of the offending token (0 if unknown).
        token (str): The offending token text.
    """

    def __init__(self, message, line=0, column=0, token=""):
        self.message = message
        self.line = line
        self.column = column
        self.token = token
        if line:
            super().__init__(f"{message} at line {line}, column {column} (near {token!r})")
        else:
            super().__init__(message)


class UnknownPrefixError(TurtleSyntaxError):
    pass


class RelativeIRIError(TurtleSyntaxError):
    pass


class FewerThanTwoAnchorsError(RssError):
    """Measured period is undefined: fewer than two members carry a start date."""


class NoAnchorError(RssError):
    pass


class NoEstimatedPeriodError(RssError):
    pass


class NotASeriesError(RssError):
    pass


class UnknownFactorError(RssError):
    pass


class UnknownFixtureError(RssError):
    pass


class DateOutOfRangeError(RssError):
    """A computed date falls outside the years the calendar supports (1-9999)."""
