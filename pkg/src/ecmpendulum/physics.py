"""Physical constants, pendulum kinematics and de Broglie wavelengths.

Everything is SI. ``hbar`` and ``k_B`` are the CODATA-2018 exact/recommended
values; ``h`` is derived from ``hbar`` so that ``h == 2*pi*hbar`` holds to
machine precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError

__all__ = [
    "Constants",
    "CONSTANTS",
    "HBAR",
    "H",
    "K_B",
    "G_DEFAULT",
    "PendulumSpec",
    "ThermalSystem",
    "angular_frequency",
    "classical_period",
    "lambda_min",
    "max_momentum",
    "thermal_wavelength",
    "turning_point",
    "free_end_amplitude",
]


@dataclass(frozen=True)
class Constants:
    hbar: float = 1.054571817e-34  # J s
    k_B: float = 1.380649e-23  # J/K
    # 9.8 rather than standard gravity: the printed period column uses it
    g_default: float = 9.8  # m/s^2

    @property
    def h(self) -> float:
        return 2.0 * math.pi * self.hbar


CONSTANTS = Constants()
HBAR = CONSTANTS.hbar
H = CONSTANTS.h
K_B = CONSTANTS.k_B
G_DEFAULT = CONSTANTS.g_default


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not (value > 0.0) or not math.isfinite(value):
        raise ValidationError(f"{name} must be a positive finite number, got {value!r}")
    return value


def _level(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise ValidationError(f"level n must be a non-negative integer, got {n!r}")
    return int(n)


@dataclass(frozen=True)
class PendulumSpec:
    """Rigid rod pivoted at one end.

    Attributes:
        arm_length_l: full rod length in m.
        mass_M: total mass in kg.
        size_D: transverse size (tube diameter) in m.
        gravity_g: gravitational acceleration in m/s^2.
    """

    arm_length_l: float
    mass_M: float
    size_D: float = 0.0
    gravity_g: float = G_DEFAULT

    def __post_init__(self):
        _positive("arm_length_l", self.arm_length_l)
        _positive("mass_M", self.mass_M)
        _positive("gravity_g", self.gravity_g)
        if not (self.size_D >= 0.0) or not math.isfinite(self.size_D):
            raise ValidationError(f"size_D must be >= 0, got {self.size_D!r}")


@dataclass(frozen=True)
class ThermalSystem:
    particle_mass_m: float
    count_N: int
    mean_free_path_dbar: float
    temperature_T: float

    def __post_init__(self):
        _positive("particle_mass_m", self.particle_mass_m)
        _positive("mean_free_path_dbar", self.mean_free_path_dbar)
        _positive("temperature_T", self.temperature_T)
        if isinstance(self.count_N, bool) or int(self.count_N) != self.count_N or self.count_N < 1:
            raise ValidationError(f"count_N must be a positive integer, got {self.count_N!r}")


def angular_frequency(spec: PendulumSpec) -> float:
    """Small-angle angular frequency sqrt(3g/2l) of a rod pivoted at one end."""
    l = _positive("arm_length_l", spec.arm_length_l)
    g = _positive("gravity_g", spec.gravity_g)
    return math.sqrt(3.0 * g / (2.0 * l))


def classical_period(spec: PendulumSpec) -> float:
    return 2.0 * math.pi / angular_frequency(spec)


def max_momentum(spec: PendulumSpec, n: int) -> float:
    """Momentum at the bottom of the well for energy E_n: sqrt((2n+1) M hbar omega)."""
    n = _level(n)
    return math.sqrt((2 * n + 1) * spec.mass_M * HBAR * angular_frequency(spec))


def lambda_min(spec: PendulumSpec, n: int) -> float:
    """Minimum de Broglie wavelength of the n-th eigenstate along the swing.

    Evaluated as ``2*pi*sqrt(hbar / ((2n+1) M) * sqrt(2l / 3g))``.
    """
    n = _level(n)
    inv_omega = 1.0 / angular_frequency(spec)
    return 2.0 * math.pi * math.sqrt(HBAR / ((2 * n + 1) * spec.mass_M) * inv_omega)


def thermal_wavelength(m: float, T: float) -> float:
    """Thermal de Broglie wavelength h / sqrt(2 pi m k_B T)."""
    m = _positive("mass m", m)
    T = _positive("temperature T", T)
    return H / math.sqrt(2.0 * math.pi * m * K_B * T)


def turning_point(spec: PendulumSpec, n: int) -> float:
    """Centre-of-mass displacement where E_n equals the harmonic potential."""
    n = _level(n)
    return math.sqrt((2 * n + 1) * HBAR / (spec.mass_M * angular_frequency(spec)))


def free_end_amplitude(spec: PendulumSpec, n: int) -> float:
    # rigid rod: centre of mass sits at l/2, the free end at l
    return 2.0 * turning_point(spec, n)
