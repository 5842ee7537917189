"""Exception types shared across the package."""


class FinsymError(Exception):
    """Base class for all package errors."""


class DivisionByZero(FinsymError, ZeroDivisionError):
    pass


class NotCoprime(FinsymError, ValueError):
    pass


class NotFound(FinsymError):
    """Numeric-to-exact recognition found no candidate within bounds."""


class ParseError(FinsymError, ValueError):
    pass


class OutOfRange(FinsymError, ValueError):
    pass


class NotTransitive(FinsymError, ValueError):
    pass


class CapExceeded(FinsymError, RuntimeError):
    pass


class ScaleExceeded(FinsymError, RuntimeError):
    pass


class NotInRing(FinsymError, ArithmeticError):
    """A product of basis forms escaped the span of the basis."""


class NonCommutative(FinsymError, ValueError):
    pass


class FactorizationFailed(FinsymError, RuntimeError):
    """Las Vegas retries exhausted; usually a wrong conductor guess."""


class CoarseningFailed(FinsymError, RuntimeError):
    pass


class SingularSystem(FinsymError, ArithmeticError):
    pass


class DimensionMismatch(FinsymError, ValueError):
    pass


class ZeroNorm(FinsymError, ArithmeticError):
    pass


class IrrationalProbability(FinsymError, ArithmeticError):
    """A Born probability failed to reduce to a rational number.

    Signals that an imprimitive component was used alone; the conjugate
    components have to be combined to restore rationality.
    """


class LengthMismatch(FinsymError, ValueError):
    pass


class NotSuperset(FinsymError, ValueError):
    pass


class NotConsequence(FinsymError, ValueError):
    pass


class UnsupportedQ(FinsymError, ValueError):
    pass


class DegreeMismatch(FinsymError, ValueError):
    pass


class NotAntihomomorphism(FinsymError, ValueError):
    pass


class NotRegular(FinsymError, ValueError):
    pass


class NotEquivariant(FinsymError, ValueError):
    pass


class BadPath(FinsymError, ValueError):
    pass


class OutOfCone(FinsymError, ValueError):
    pass


class ParityViolation(FinsymError, ValueError):
    pass


class DomainError(FinsymError, ValueError):
    pass


class UnknownFixture(FinsymError, KeyError):
    pass
