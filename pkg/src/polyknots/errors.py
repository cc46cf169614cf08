"""Exception hierarchy shared by every module."""


class PolyKnotError(Exception):
    """Base class for all library errors."""


class NotDivisible(PolyKnotError, ArithmeticError):
    pass


class ZeroPolynomial(PolyKnotError, ValueError):
    pass


class ParseError(PolyKnotError, ValueError):
    pass


class DegreeTooLow(PolyKnotError, ValueError):
    pass


class DegenerateProjection(PolyKnotError):
    """The resultant of the two divided differences vanishes identically."""


class NonTransverseCrossing(PolyKnotError):
    """The plane projection is not regular (tangency, cusp-like node, merged crossings)."""


class CannotCertify(PolyKnotError):
    pass


class WrongStratum(PolyKnotError, ValueError):
    pass


class UnresolvedCrossing(PolyKnotError):
    pass


class TooManyCrossings(PolyKnotError):
    pass


class InfeasibleRuns(PolyKnotError):
    pass


class NoSolution(PolyKnotError):
    def __init__(self, rank, augmented_rank):
        super().__init__(f"inconsistent system: rank {rank}, augmented rank {augmented_rank}")
        self.rank = rank
        self.augmented_rank = augmented_rank


class VerificationFailed(PolyKnotError):
    pass


class WrongShape(PolyKnotError, ValueError):
    pass


class LiftFailed(PolyKnotError):
    pass


class HypothesisFailed(PolyKnotError, ValueError):
    pass


class PathBroken(PolyKnotError):
    def __init__(self, s, reason=""):
        super().__init__(f"path leaves the space at s={s}" + (f": {reason}" if reason else ""))
        self.s = s


class CorpusCorrupt(PolyKnotError):
    pass
