"""Physical constants.

Everything in the library is expressed in atomic units by default
(m = 1, hbar = 1); non-default masses are supported throughout so unit
errors cannot hide behind 1s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class PhysicalConstants:
    """Particle mass and Planck constant defining the unit system.

    Attributes
    ----------
    m : particle mass (>0)
    hbar : reduced Planck constant (>0)
    """

    m: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.m > 0.0 and math.isfinite(self.m)):
            raise DomainError(f"mass must be positive and finite, got {self.m}")
        if not (self.hbar > 0.0 and math.isfinite(self.hbar)):
            raise DomainError(f"hbar must be positive and finite, got {self.hbar}")

    @property
    def h(self) -> float:
        """Planck constant h = 2*pi*hbar."""
        return 2.0 * math.pi * self.hbar


#: Atomic units, the default throughout (m = 1, hbar = 1).
ATOMIC_UNITS = PhysicalConstants()
