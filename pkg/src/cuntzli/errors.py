"""Exception hierarchy shared by every module of the package."""


class CuntzLiError(Exception):
    """Base class; ``name`` is the error name reported by the CLI."""

    @property
    def name(self) -> str:
        return type(self).__name__


class DivisionByZero(CuntzLiError, ZeroDivisionError):
    pass


class UndefinedGcd(CuntzLiError, ValueError):
    pass


class ZeroModulus(CuntzLiError, ValueError):
    pass


class NotDivisible(CuntzLiError, ValueError):
    pass


class ZeroMultiplier(CuntzLiError, ValueError):
    pass


class NotAProjection(CuntzLiError, ValueError):
    pass


class NotInDomain(CuntzLiError, ValueError):
    pass


class InsufficientPrecision(CuntzLiError, ValueError):
    pass


class IsIdentity(CuntzLiError, ValueError):
    pass


class FieldDegenerate(CuntzLiError, ValueError):
    pass


class NoWitnessAtDepth(CuntzLiError, RuntimeError):
    pass


class NotDivisorClosed(CuntzLiError, ValueError):
    pass


class EmptyTarget(CuntzLiError, ValueError):
    pass


class ParseError(CuntzLiError, ValueError):
    """Malformed literal; ``position`` is the 0-based offset of the problem."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position
