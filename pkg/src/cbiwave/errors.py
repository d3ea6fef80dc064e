"""Exception hierarchy shared by the algebra, verification and CLI layers."""


class BiwaveError(Exception):
    """Base class for every error raised by cbiwave."""


class InvalidParameter(BiwaveError, ValueError):
    pass


class DegenerateParameter(BiwaveError, ValueError):
    """c is (numerically) 1, where the two characteristic speeds coincide."""


class WrongRegime(BiwaveError, ValueError):
    pass


class NotInvertible(BiwaveError, ZeroDivisionError):
    pass


class GridTooSmall(BiwaveError, ValueError):
    pass


class PolynomialOverflow(BiwaveError, OverflowError):
    pass


class ConfigError(BiwaveError, ValueError):
    """Malformed run configuration; ``path`` names the offending field."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path
