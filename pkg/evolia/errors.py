class EvoliaError(Exception):
    """Base class of every error raised by evolia."""


class RingError(EvoliaError, ValueError):
    pass


class EnumerationError(EvoliaError, ValueError):
    pass


class DimensionError(EvoliaError, ValueError):
    pass


class AlgebraMismatchError(EvoliaError, ValueError):
    pass


class NotAnIdealError(EvoliaError, ValueError):
    def __init__(self, generator: int, square: str):
        super().__init__(
            f'span of the dropped generators is not an ideal: x{generator}^2 = {square} '
            'leaves the span'
        )
        self.generator = generator
        self.square = square


class PowerError(EvoliaError, ValueError):
    pass


class PowerCapExceeded(EvoliaError):
    def __init__(self, n: int, cap: int, partial_size: int):
        super().__init__(
            f'power {n} exceeds the configured cap {cap} '
            f'(support size at the cap: {partial_size})'
        )
        self.n = n
        self.cap = cap
        self.partial_size = partial_size


class BoundRequiredError(EvoliaError, ValueError):
    pass


class GuardExceeded(EvoliaError, ValueError):
    pass


class UnsupportedBoundError(EvoliaError, ValueError):
    pass


class ParseError(EvoliaError, ValueError):
    def __init__(self, message: str, context: str = ''):
        super().__init__(f'{context}: {message}' if context else message)
        self.context = context


class CertificateMismatchError(EvoliaError, ValueError):
    pass


class InvariantViolation(EvoliaError, AssertionError):
    pass
