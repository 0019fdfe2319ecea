"""Exception types shared across the laboratory modules."""


class ProblabError(Exception):
    """Base class for all errors raised by this package."""


class AsymmetryError(ProblabError):
    """Distance matrix is not symmetric."""


class NegativeDistanceError(ProblabError):
    """Distance matrix contains a negative entry."""


class NonzeroDiagonalError(ProblabError):
    """Distance matrix has a nonzero diagonal entry."""


class TriangleViolation(ProblabError):
    """Triangle inequality fails; carries the witness triple (i, j, k)."""

    def __init__(self, i, j, k, lhs, rhs):
        self.witness = (i, j, k)
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(
            f"triangle inequality violated at ({i},{j},{k}): "
            f"d[{i},{k}]={lhs!r} > d[{i},{j}]+d[{j},{k}]={rhs!r}"
        )


class SizeLimitExceeded(ProblabError):
    """Problem too large for an exhaustive/exact operation."""


class DegenerateCovariance(ProblabError):
    """Covariance produced a significantly negative squared distance."""


class FactorizationFailure(ProblabError):
    """Covariance square root failed even after jitter escalation."""


class ZeroDistancePair(ProblabError):
    """Pairwise tail check requested for a zero-distance pair."""


class AdmissibilityViolation(ProblabError):
    """Subset sequence violates the admissibility cardinality rules."""


class DomainError(ProblabError):
    """Argument outside the mathematically supported domain."""


class EmptySet(ProblabError):
    """An operation received an empty target set."""


class NonConvergence(ProblabError):
    """Iterative solver exhausted its iteration budget."""


class AbsoluteContinuityError(ProblabError):
    """First measure puts mass where the reference measure has none."""


class BadConfiguration(ProblabError):
    """Spin configuration is not a valid +/-1 vector of the right length."""


class ConfigError(ProblabError):
    """Experiment configuration is malformed."""


class IoError(ProblabError):
    """Report or instance files could not be written."""
