"""Exception types shared across the toolkit."""


class PolyconjError(Exception):
    """Base class for every error raised by polyconj."""


class ZeroPolynomial(PolyconjError, ValueError):
    pass


class NotRealRooted(PolyconjError, ValueError):
    pass


class NotSimple(PolyconjError, ValueError):
    pass


class DegreeMismatch(PolyconjError, ValueError):
    pass


class DegreeTooHigh(PolyconjError, ValueError):
    pass


class NonConvergence(PolyconjError, RuntimeError):
    pass


class ZeroCoefficient(PolyconjError, ValueError):
    pass


class NotAdmissible(PolyconjError, ValueError):
    pass


class NotRationallySplit(PolyconjError, ValueError):
    pass


class IndexOutOfRange(PolyconjError, ValueError):
    pass


class RealZerosNotSimple(PolyconjError, ValueError):
    pass


class OddDegree(PolyconjError, ValueError):
    pass


class CoincidentCriticalRoots(PolyconjError, ValueError):
    """Roots of two different derivatives coincide (non-generic input)."""


class TooLarge(PolyconjError, ValueError):
    pass


class DuplicateAxisRoots(PolyconjError, ValueError):
    pass


class AtChargeSingularity(PolyconjError, ValueError):
    pass


class SingularOnLine(PolyconjError, ValueError):
    pass


class NotReal(PolyconjError, ValueError):
    pass


class EqualRealParts(PolyconjError, ValueError):
    pass


class Indeterminate(PolyconjError, ArithmeticError):
    """A floating-point decision fell inside its safety margin."""


class MissingFinding(PolyconjError, KeyError):
    pass
