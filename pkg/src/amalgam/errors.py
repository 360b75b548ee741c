"""Exception hierarchy shared by the library and the CLI."""


class AmalgamError(Exception):
    """Base class for every error raised by this package."""


class CapExceeded(AmalgamError):
    """A size or enumeration cap would be exceeded."""


class NotAnIdeal(AmalgamError):
    pass


class NotPrime(AmalgamError):
    pass


class NotLocal(AmalgamError):
    pass


class ImproperIdeal(AmalgamError):
    pass


class UnsupportedCombination(AmalgamError):
    """The requested check has no decidable criterion in this library."""


class UnsupportedShape(AmalgamError):
    pass


class KernelError(AmalgamError):
    """Two independent algorithms disagreed; this is a bug, never a verdict."""


class HierarchyViolation(AmalgamError):
    pass


class ElementError(AmalgamError):
    """A literal does not denote an element of the ring."""


class ParseError(AmalgamError):
    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        self.position = position
        self.expected = expected
        detail = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{message} at position {position}{detail}")
