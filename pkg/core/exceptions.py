from .constants import EXIT_DOMAIN, EXIT_MALFORMED, EXIT_RETRY


class HullcertError(Exception):
    """Base class for every failure raised by the geometry modules."""

    exit_status = EXIT_DOMAIN

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def as_dict(self):
        return {'error': type(self).__name__, 'message': self.message, **self.details}


class MalformedInputError(HullcertError):
    exit_status = EXIT_MALFORMED


class DomainError(HullcertError):
    exit_status = EXIT_DOMAIN


class DimensionMismatchError(DomainError):
    pass


class OpenCurveError(DomainError):
    pass


class DegenerateSegmentError(DomainError):
    pass


class NotSimpleError(DomainError):
    def __init__(self, message, witness=None, **details):
        super().__init__(message, **details)
        self.witness = witness


class DuplicateParameterError(DomainError):
    pass


class OutOfDomainError(DomainError):
    pass


class VanishingError(DomainError):
    pass


class LinearDependenceError(DomainError):
    pass


class EmptyIntersectionError(DomainError):
    pass


class InvalidParameterError(DomainError):
    pass


class TubeTooThinError(DomainError):
    pass


class NoAdmissibleBallError(DomainError):
    pass


class RetryExhaustedError(HullcertError):
    exit_status = EXIT_RETRY


class ShrinkExhaustedError(RetryExhaustedError):
    pass
