"""Exception types shared across the package."""


class ZdschemeError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ZdschemeError):
    """Malformed input: unreadable file, bad JSON, unparsable polynomial."""


class PreconditionError(ZdschemeError):
    """A mathematical precondition is violated (duplicate points, point at
    infinity, ideal not maximal, argument out of range)."""


class InternalCheckError(ZdschemeError):
    """A consistency check that is guaranteed by theory failed; indicates a
    bug in this package, never bad user input."""
