"""Classical entropy of an ideal gas and where it goes unphysical.

S = (5/2) N k_B + 3 N k_B ln(dbar / lambda_T). At T* the thermal wavelength
equals the mean free path and the log term vanishes; the entropy itself
crosses zero lower down, at T* exp(-5/3). Both temperatures are reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import NoSignChange, ValidationError
from .physics import H, K_B, ThermalSystem, _positive, thermal_wavelength

__all__ = [
    "ZERO_TO_CRITICAL_RATIO",
    "EntropyProfile",
    "entropy",
    "entropy_per_particle",
    "critical_temperature",
    "zero_entropy_temperature",
    "zero_entropy_temperature_bisect",
    "entropy_profile",
]

ZERO_TO_CRITICAL_RATIO = math.exp(-5.0 / 3.0)


def entropy_per_particle(m: float, d_bar: float, T: float) -> float:
    """S / (N k_B), independent of N."""
    d_bar = _positive("mean free path", d_bar)
    return 2.5 + 3.0 * math.log(d_bar / thermal_wavelength(m, T))


def entropy(sys: ThermalSystem) -> float:
    """Entropy in J/K."""
    s = entropy_per_particle(sys.particle_mass_m, sys.mean_free_path_dbar, sys.temperature_T)
    return sys.count_N * K_B * s


def critical_temperature(m: float, d_bar: float) -> float:
    """T* = h^2 / (2 pi m k_B dbar^2), where lambda_T == dbar."""
    m = _positive("mass m", m)
    d_bar = _positive("mean free path", d_bar)
    return H * H / (2.0 * math.pi * m * K_B * d_bar * d_bar)


def zero_entropy_temperature(m: float, d_bar: float) -> float:
    return critical_temperature(m, d_bar) * ZERO_TO_CRITICAL_RATIO


def zero_entropy_temperature_bisect(m: float, d_bar: float) -> float:
    """Root of S(T) = 0 by bisection in log T, bracketing T* by six decades."""
    t_star = critical_temperature(m, d_bar)
    f = lambda log_t: entropy_per_particle(m, d_bar, math.exp(log_t))
    lo, hi = math.log(t_star) - 6 * math.log(10), math.log(t_star) + 6 * math.log(10)
    if f(lo) * f(hi) > 0:
        raise NoSignChange("entropy does not change sign on the bracket")
    log_root = optimize.bisect(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=400)
    return math.exp(log_root)


@dataclass(frozen=True)
class EntropyProfile:
    temperatures: np.ndarray
    entropies: np.ndarray  # J/K
    per_particle: np.ndarray  # S / (N k_B)
    T_star: float
    T_zero: float

    def negative_interval(self) -> tuple[float, float]:
        """Exact temperature interval on which S < 0."""
        return (0.0, self.T_zero)


def entropy_profile(
    m: float, d_bar: float, t_min: float, t_max: float, points: int = 50, N: int = 1
) -> EntropyProfile:
    """Entropy on a log-spaced temperature grid."""
    t_min = _positive("t_min", t_min)
    t_max = _positive("t_max", t_max)
    if not t_min < t_max:
        raise ValidationError("t_min must be below t_max")
    if points < 2:
        raise ValidationError("points must be >= 2")
    temps = np.geomspace(t_min, t_max, int(points))
    per = np.array([entropy_per_particle(m, d_bar, t) for t in temps])
    return EntropyProfile(
        temperatures=temps,
        entropies=N * K_B * per,
        per_particle=per,
        T_star=critical_temperature(m, d_bar),
        T_zero=zero_entropy_temperature(m, d_bar),
    )
