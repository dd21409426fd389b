"""Exception hierarchy shared by all modules."""


class SchwarzError(Exception):
    """Base class for every error raised by this package."""


class ParameterOutOfRange(SchwarzError, ValueError):
    pass


class DenominatorVanishes(SchwarzError, ZeroDivisionError):
    """A node was evaluated at (or numerically on) one of its poles."""


class DegenerateConstant(SchwarzError, ValueError):
    pass


class NotOriginFixing(SchwarzError, ValueError):
    pass


class NotBlaschke(SchwarzError, TypeError):
    pass


class NotFixed(SchwarzError, ValueError):
    """The map does not fix the requested boundary point."""


class NoConvergence(SchwarzError, ArithmeticError):
    pass


class DegreeZero(SchwarzError, ValueError):
    pass


class PreconditionError(SchwarzError, ValueError):
    pass


class NotSelfMapData(SchwarzError, ValueError):
    """(f(0), f'(0)) violates |f(0)| < 1 or the Schwarz-Pick bound."""


class NoRegularFixedPointData(SchwarzError, ValueError):
    pass


class OriginNotFixed(SchwarzError, ValueError):
    pass


class ParseError(SchwarzError, ValueError):
    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at {position})")
        self.position = position


class ValidationError(SchwarzError, ValueError):
    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
