"""Exception types raised by the package."""


class ChshError(ValueError):
    """Base class for input errors."""


class NonUnitary(ChshError):
    pass


class OutOfRange(ChshError):
    pass


class NotNormalized(ChshError):
    pass


class NotOnEllipticityCircle(ChshError):
    pass


class UnsupportedCombination(ChshError):
    pass


class ResolutionTooSmall(ChshError):
    pass


class ParseError(ChshError):
    pass
