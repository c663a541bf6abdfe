"""Exception types raised across the package."""


class KncError(Exception):
    """Base class for all errors raised by knoncrossing."""


class InvalidStep(KncError, ValueError):
    pass


class DuplicateEntry(KncError, ValueError):
    pass


class InvalidRemoval(KncError, ValueError):
    pass


class RowBoundExceeded(KncError, ValueError):
    """The matching contains a k-crossing, so its tableaux need k rows."""


class OutOfRange(KncError, KeyError):
    """A count table was queried outside the region it was built for."""


class TruncationTooSmall(KncError, ValueError):
    pass


class EmptyClass(KncError, ValueError):
    """There is no object to sample (e.g. perfect matchings on an odd vertex set)."""


class ZeroBound(KncError, ValueError):
    pass


class AllZeroWeights(KncError, ValueError):
    pass


class TooLarge(KncError, ValueError):
    pass


class TooManyClasses(KncError, ValueError):
    pass


class ParseError(KncError, ValueError):
    pass
