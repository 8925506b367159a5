"""Exception hierarchy shared by all circle_sqm modules."""


class CircleSqmError(Exception):
    """Base class for all library errors."""


class DomainError(CircleSqmError):
    """An argument lies outside the domain an operation is defined on."""


class SingularPointError(DomainError):
    """Evaluation requested at (or too close to) a potential singularity."""


class BranchError(CircleSqmError):
    """The requested sign branch is not admissible for the given k1."""


class PoleError(CircleSqmError):
    """Gamma-function argument sits on a pole (non-positive integer)."""


class DegenerateDenominatorError(CircleSqmError):
    """Lower hypergeometric parameter hits a forbidden non-positive integer."""


class ConvergenceError(CircleSqmError):
    """An iterative numerical routine exceeded its iteration cap."""
