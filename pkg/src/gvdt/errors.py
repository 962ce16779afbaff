"""Exception hierarchy shared by the library and the command line."""


class GVDTError(Exception):
    """Base class for domain errors (CLI exit status 1)."""


class WindowError(GVDTError):
    """A q-window or t-truncation is too narrow for the requested result."""


class IntegralityError(GVDTError):
    """A solved invariant that should be an integer is not."""

    def __init__(self, beta, genus, value):
        self.beta = beta
        self.genus = genus
        self.value = value
        super().__init__(
            f"non-integer invariant at beta={list(beta)} g={genus}: {value}")


class InconsistentSeriesError(GVDTError):
    """A DT series is not in the image of any GV table within its window."""


class MissingEntryError(GVDTError):
    """A triangular inversion needs a table entry that was not supplied."""


class ParseError(Exception):
    """Malformed input text; carries the 1-based line number."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(where + message)
