"""Exactly-solvable singular oscillator and singular Coulomb systems on the
circle, the complex duality relating them, and a validation engine that
cross-checks every closed form numerically."""

from .coulomb import CoulombQuantumNumbers, CoulombSystem, Parity
from .errors import (
    BranchError,
    CircleSqmError,
    ConvergenceError,
    DegenerateDenominatorError,
    DomainError,
    PoleError,
    SingularPointError,
)
from .oscillator import OscillatorSystem
from .systems import Branch, CircleGeometry, PoschlTellerForm

__version__ = "0.1.0"

__all__ = [
    "Branch",
    "BranchError",
    "CircleGeometry",
    "CircleSqmError",
    "ConvergenceError",
    "CoulombQuantumNumbers",
    "CoulombSystem",
    "DegenerateDenominatorError",
    "DomainError",
    "OscillatorSystem",
    "Parity",
    "PoleError",
    "PoschlTellerForm",
    "SingularPointError",
    "__version__",
]
