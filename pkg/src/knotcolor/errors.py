"""Exception hierarchy shared by every module."""


class _LookupMessage:
    # KeyError repr()s its argument; keep plain messages for users
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class KnotColorError(Exception):
    """Base class for all domain errors raised by :mod:`knotcolor`."""


class PDError(KnotColorError, ValueError):
    """A planar-diagram code could not be turned into a valid diagram."""


class MalformedToken(PDError):
    pass


class EdgeCountMismatch(PDError):
    pass


class NonContiguousNumbering(PDError):
    pass


class NonPlanar(PDError):
    pass


class UnknownEdge(_LookupMessage, KnotColorError, KeyError):
    pass


class NonSquare(KnotColorError, ValueError):
    pass


class IndexOutOfRange(KnotColorError, IndexError):
    pass


class NotPrime(KnotColorError, ValueError):
    pass


class InvalidParameters(KnotColorError, ValueError):
    pass


class DegenerateDiagram(KnotColorError, ValueError):
    pass


class TooManySolutions(KnotColorError):
    pass


class NotConnected(KnotColorError, ValueError):
    pass


class InvalidM(KnotColorError, ValueError):
    pass


class MOutOfRange(KnotColorError, ValueError):
    pass


class InapplicableSite(KnotColorError, ValueError):
    pass


class UnknownKnot(_LookupMessage, KnotColorError, KeyError):
    pass
