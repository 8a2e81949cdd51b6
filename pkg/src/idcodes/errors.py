"""Exception types raised across the package."""


class IdCodeError(Exception):
    """Base class for every error raised by :mod:`idcodes`."""


class NotPrime(IdCodeError, ValueError):
    pass


class DegreeTooLarge(IdCodeError, ValueError):
    pass


class DivisionByZero(IdCodeError, ZeroDivisionError):
    pass


class IndexOutOfRange(IdCodeError, IndexError):
    pass


class FieldTooLargeForDiscreteLog(IdCodeError, ValueError):
    pass


class MaterializationTooLarge(IdCodeError, ValueError):
    pass


class SearchSpaceTooLarge(IdCodeError, ValueError):
    pass


class InvalidScaling(IdCodeError, ValueError):
    pass


class ValueOutOfRange(IdCodeError, ValueError):
    pass


class IntegerTooLarge(IdCodeError, ValueError):
    pass


class InsufficientPoints(IdCodeError, ValueError):
    pass


class AlphabetMismatch(IdCodeError, ValueError):
    pass


class MalformedChallenge(IdCodeError, ValueError):
    pass
