"""Free-particle Feynman kernel and the centre-of-mass approximation for a dimer.

Two non-interacting mass points ``m`` at ``R +/- d`` move to ``R' +/- d'``.
Their joint kernel phase is compared with the phase of a single point of
mass ``2m`` moving ``R -> R'``. The difference is ``m D^2 / (hbar dt)`` with
``D = d' - d``, so the centre-of-mass treatment holds when it is small
compared to the total phase, i.e. ``|R' - R| >> |D|``.

Phases are plain floats without reduction modulo 2 pi. The common
normalization constant is excluded from every phase.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .physics import HBAR

__all__ = [
    "KernelQuery",
    "KernelComparison",
    "free_propagator",
    "free_phase",
    "composite_phase",
    "ecm_phase",
    "compare",
]

# sqrt(1/i) on the principal branch
_INV_SQRT_I = cmath.exp(-0.25j * math.pi)


def _check_dt(delta_t: float) -> float:
    if not (delta_t > 0 and math.isfinite(delta_t)):
        raise ValidationError(f"delta_t must be positive, got {delta_t!r}")
    return float(delta_t)


@dataclass(frozen=True)
class KernelQuery:
    point_mass_m: float
    R: float
    R_prime: float
    half_sep_d: float
    half_sep_d_prime: float
    delta_t: float

    def __post_init__(self):
        if not (self.point_mass_m > 0 and math.isfinite(self.point_mass_m)):
            raise ValidationError(f"point_mass_m must be positive, got {self.point_mass_m!r}")
        _check_dt(self.delta_t)
        if self.half_sep_d < 0 or self.half_sep_d_prime < 0:
            raise ValidationError("half separations must be >= 0")

    @classmethod
    def from_displacements(
        cls, m: float, delta_R: float, D: float, delta_t: float
    ) -> "KernelQuery":
        """Query with R = 0, d = 0 (or d = -D when D < 0) realising the given dR and D."""
        d = max(0.0, -D)
        return cls(m, 0.0, delta_R, d, d + D, delta_t)

    @property
    def delta_R(self) -> float:
        return self.R_prime - self.R

    @property
    def D(self) -> float:
        return self.half_sep_d_prime - self.half_sep_d


@dataclass(frozen=True)
class KernelComparison:
    composite_phase: float
    ecm_phase: float
    exact_error: float
    paper_literal_error: float
    validity_ratio: float

    def as_dict(self) -> dict:
        return {
            "composite_phase_rad": self.composite_phase,
            "ecm_phase_rad": self.ecm_phase,
            "exact_error_rad": self.exact_error,
            "literal_error_rad": self.paper_literal_error,
            "validity_ratio": self.validity_ratio,
        }


def free_phase(m: float, displacement, delta_t: float):
    """Exponent phase m (q' - q)^2 / (2 hbar dt) of the free kernel."""
    delta_t = _check_dt(delta_t)
    return m * np.square(displacement) / (2.0 * HBAR * delta_t)


def free_propagator(m: float, q, q_prime, delta_t: float):
    """<q', t' | q, t> for a free particle of mass ``m``, with dt = t' - t."""
    delta_t = _check_dt(delta_t)
    if not m > 0:
        raise ValidationError(f"mass must be positive, got {m!r}")
    amp = math.sqrt(m / (2.0 * math.pi * HBAR * delta_t)) * _INV_SQRT_I
    dq = np.subtract(q_prime, q)
    out = amp * np.exp(1j * free_phase(m, dq, delta_t))
    return out if np.ndim(out) else complex(out)


def composite_phase(query: KernelQuery) -> float:
    """Sum of the two constituents' free phases."""
    dR, D = query.delta_R, query.D
    m, dt = query.point_mass_m, query.delta_t
    # q1' - q1 = dR + D and q2' - q2 = dR - D
    return float(free_phase(m, dR + D, dt) + free_phase(m, dR - D, dt))


def ecm_phase(query: KernelQuery) -> float:
    """Free phase of one point of mass 2m displaced by dR."""
    return float(free_phase(2.0 * query.point_mass_m, query.delta_R, query.delta_t))


def compare(query: KernelQuery) -> KernelComparison:
    """Phase error of the centre-of-mass kernel against the two-point kernel.

    ``paper_literal_error`` uses the summed exponent written as
    2m (dR + D)^2 / (2 hbar dt); it differs from ``exact_error`` by the
    cross term 2 dR D and is reported for reference.
    """
    m, dt = query.point_mass_m, query.delta_t
    dR, D = query.delta_R, query.D
    scale = m / (HBAR * dt)
    return KernelComparison(
        composite_phase=composite_phase(query),
        ecm_phase=ecm_phase(query),
        exact_error=scale * D * D,
        paper_literal_error=scale * (2.0 * dR * D + D * D),
        validity_ratio=math.inf if D == 0 else abs(dR) / abs(D),
    )
