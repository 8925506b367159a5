"""Shared geometric and branch descriptors."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import BranchError


class Branch(enum.Enum):
    """Sign choice for the singular-term exponent.

    PLUS is always admissible.  MINUS is admissible only for 0 < |k1| <= 1/2,
    where the extra inverse-square term is attractive at the origin and both
    solution families are physical.
    """

    PLUS = "plus"
    MINUS = "minus"

    @property
    def sign(self) -> int:
        return 1 if self is Branch.PLUS else -1


def check_branch_admissible(branch: Branch, k1: float) -> None:
    """Raise BranchError unless (branch, k1) is an admissible combination."""
    if branch is Branch.MINUS and not (0.0 < abs(k1) <= 0.5):
        raise BranchError(
            f"minus branch requires 0 < |k1| <= 1/2, got k1 = {k1:g}"
        )


@dataclass(frozen=True)
class CircleGeometry:
    """The circle s0^2 + s1^2 = radius^2; radius is the single geometric knob."""

    radius: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise ValueError(f"radius must be finite and > 0, got {self.radius!r}")


@dataclass(frozen=True)
class PoschlTellerForm:
    """Reduced-equation triple (epsilon, k0, k1).

    Both systems meet in the equation
    ``psi'' + [epsilon - (k0^2 - 1/4)/cos^2 - (k1^2 - 1/4)/sin^2] psi = 0``.
    For the oscillator ``epsilon`` and ``k0`` are real with k0 >= 1/2; the
    Coulomb duality route produces complex values.
    """

    epsilon: complex | float
    k0: complex | float
    k1: float
