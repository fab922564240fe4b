"""Exception hierarchy shared by every module of the package."""


class GaussError(Exception):
    """Base class for all errors raised by gausspoly."""


class ModulusMismatch(GaussError, ValueError):
    pass


class ParseError(GaussError, ValueError):
    pass


class InvalidDiagram(GaussError, ValueError):
    pass


class InvalidChoice(GaussError, ValueError):
    pass


class UnknownChord(GaussError, KeyError):
    def __str__(self):
        # KeyError quotes its argument; keep messages readable
        return str(self.args[0]) if self.args else "unknown chord"


class NotABridge(GaussError, ValueError):
    pass


class IndexOutOfRange(GaussError, IndexError):
    pass


class NotIsolated(GaussError, ValueError):
    pass


class PatternNotFound(GaussError, ValueError):
    pass


class PatternNotApplicable(GaussError, ValueError):
    pass


class KindMismatch(GaussError, TypeError):
    """An operation was given a diagram of the wrong kind."""
