"""Harmonic-oscillator eigenstates of the pendulum's centre of mass.

Eigenfunctions are evaluated with the normalized three-term recurrence

    phi_0 = pi^(-1/4) exp(-xi^2/2)
    phi_{k+1} = sqrt(2/(k+1)) xi phi_k - sqrt(k/(k+1)) phi_{k-1}

which already carries the (2^n n!)^(-1/2) factor and stays finite up to
n = 200. The raw physicists' Hermite polynomial is kept for testing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import integrate

from .errors import SamplerFailure, ValidationError
from .physics import HBAR, _level

__all__ = [
    "HERMITE_MAX_N",
    "OscillatorState",
    "SamplerMethod",
    "SamplerConfig",
    "hermite",
    "psi",
    "density",
    "cdf",
    "overlap",
    "make_rng",
    "sample_positions",
]

HERMITE_MAX_N = 200
_MIN_ACCEPTANCE = 1e-4


@dataclass(frozen=True)
class OscillatorState:
    """Eigenstate ``n`` of a mass ``mass_M`` in a well of angular frequency ``omega``."""

    mass_M: float
    omega: float
    level_n: int

    def __post_init__(self):
        if not (self.mass_M > 0 and math.isfinite(self.mass_M)):
            raise ValidationError(f"mass_M must be positive, got {self.mass_M!r}")
        if not (self.omega > 0 and math.isfinite(self.omega)):
            raise ValidationError(f"omega must be positive, got {self.omega!r}")
        n = _level(self.level_n)
        if n > HERMITE_MAX_N:
            raise ValidationError(f"level_n must be <= {HERMITE_MAX_N}, got {n}")

    @property
    def energy(self) -> float:
        return (self.level_n + 0.5) * HBAR * self.omega

    @property
    def length_scale(self) -> float:
        """Oscillator length sqrt(hbar / (M omega)); xi = x / length_scale."""
        return math.sqrt(HBAR / (self.mass_M * self.omega))

    @property
    def turning_point(self) -> float:
        return math.sqrt(2 * self.level_n + 1) * self.length_scale


class SamplerMethod(str, Enum):
    REJECTION = "rejection"
    INVERSE_CDF = "inverse-cdf"


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 0
    method: SamplerMethod = SamplerMethod.INVERSE_CDF
    grid_points: int = 20001
    support_cutoff: float = 6.0  # in units of the turning point

    def __post_init__(self):
        object.__setattr__(self, "method", SamplerMethod(self.method))
        if self.grid_points < 1024:
            raise ValidationError("grid_points must be >= 1024")
        if not self.support_cutoff >= 2.0:
            raise ValidationError("support_cutoff must be >= 2.0")


def hermite(n: int, xi):
    """Physicists' Hermite polynomial H_n(xi) by upward recurrence."""
    n = _level(n)
    if n > HERMITE_MAX_N:
        raise ValidationError(f"hermite: n must be <= {HERMITE_MAX_N}, got {n}")
    xi = np.asarray(xi, dtype=float)
    h_prev = np.ones_like(xi)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * xi
    for k in range(1, n):
        h_prev, h = h, 2.0 * xi * h - 2.0 * k * h_prev
    return h if h.ndim else float(h)


def _phi(n: int, xi: np.ndarray) -> np.ndarray:
    # dimensionless normalized eigenfunction
    p_prev = np.pi ** -0.25 * np.exp(-0.5 * xi * xi)
    if n == 0:
        return p_prev
    p = math.sqrt(2.0) * xi * p_prev
    for k in range(1, n):
        p_prev, p = p, math.sqrt(2.0 / (k + 1)) * xi * p - math.sqrt(k / (k + 1)) * p_prev
    return p


def psi(state: OscillatorState, x):
    """Real eigenfunction psi_n(x) in m^(-1/2)."""
    a = state.length_scale
    x = np.asarray(x, dtype=float)
    out = _phi(state.level_n, x / a) / math.sqrt(a)
    return out if out.ndim else float(out)


def density(state: OscillatorState, x):
    """Position probability density |psi_n(x)|^2 in 1/m."""
    p = psi(state, x)
    return p * p


def _dimensionless_density(n: int):
    return lambda xi: _phi(n, np.asarray(xi, dtype=float)) ** 2


def cdf(state: OscillatorState, x) -> np.ndarray | float:
    """Cumulative distribution of |psi_n|^2 by adaptive quadrature.

    Integrates from the nearer of 0 or x using the exact symmetry
    F(0) = 1/2, so the result is accurate in both tails.
    """
    f = _dimensionless_density(state.level_n)
    xs = np.atleast_1d(np.asarray(x, dtype=float)) / state.length_scale
    out = np.empty_like(xs)
    for i, xi in enumerate(xs):
        if xi >= 0:
            part, _ = integrate.quad(f, 0.0, xi, limit=400, epsabs=1e-14, epsrel=1e-12)
            out[i] = 0.5 + part
        else:
            part, _ = integrate.quad(f, xi, 0.0, limit=400, epsabs=1e-14, epsrel=1e-12)
            out[i] = 0.5 - part
    return out if np.ndim(x) else float(out[0])


def overlap(first: OscillatorState, second: OscillatorState, cutoff: float = 10.0) -> float:
    """Integral of psi_m psi_n over |x| <= cutoff * (larger turning point).

    Both states must share mass and frequency; the integral is done in the
    dimensionless coordinate.
    """
    if (first.mass_M, first.omega) != (second.mass_M, second.omega):
        raise ValidationError("overlap requires states of the same oscillator")
    m, n = first.level_n, second.level_n
    bound = cutoff * math.sqrt(2 * max(m, n) + 1)
    val, _ = integrate.quad(
        lambda xi: _phi(m, np.asarray(xi)) * _phi(n, np.asarray(xi)),
        -bound,
        bound,
        limit=1000,
        epsabs=1e-13,
        epsrel=1e-12,
    )
    return float(val)


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Generator reproducible from ``(seed, stream)``; streams are independent."""
    ss = np.random.SeedSequence(entropy=int(seed) & 0xFFFFFFFFFFFFFFFF, spawn_key=(int(stream),))
    return np.random.Generator(np.random.PCG64(ss))


def _grid(state: OscillatorState, config: SamplerConfig):
    half = config.support_cutoff * state.turning_point
    x = np.linspace(-half, half, config.grid_points)
    return x, density(state, x)


def _sample_inverse_cdf(state, config, count, rng):
    x, rho = _grid(state, config)
    cum = np.concatenate(([0.0], np.cumsum(0.5 * (rho[1:] + rho[:-1]) * np.diff(x))))
    cum /= cum[-1]
    u = rng.random(count)
    # linear inverse of a non-decreasing table is monotone
    return np.interp(u, cum, x)


def _sample_rejection(state, config, count, rng, refine: int = 8):
    x, _ = _grid(state, config)
    dx = x[1] - x[0]
    # cell-wise bound from a refined evaluation, padded against curvature between points
    sub = x[:-1, None] + dx * np.linspace(0.0, 1.0, refine + 1)[None, :]
    envelope = density(state, sub).max(axis=1)
    envelope = envelope * 1.05 + 1e-12 * envelope.max()
    weights = envelope * dx
    total = weights.sum()
    probs = weights / total

    out = np.empty(count)
    filled = 0
    proposed = 0
    while filled < count:
        batch = max(1024, int(1.3 * (count - filled)))
        cells = rng.choice(len(probs), size=batch, p=probs)
        xs = x[cells] + dx * rng.random(batch)
        accept = rng.random(batch) * envelope[cells] < density(state, xs)
        proposed += batch
        got = xs[accept][: count - filled]
        out[filled : filled + got.size] = got
        filled += got.size
        if filled / proposed < _MIN_ACCEPTANCE:
            raise SamplerFailure(f"rejection acceptance rate {filled / proposed:.2e} below {_MIN_ACCEPTANCE}")
    return out


def sample_positions(
    state: OscillatorState, config: SamplerConfig, count: int, stream: int = 0
) -> np.ndarray:
    """Draw ``count`` i.i.d. positions (m) distributed as |psi_n|^2."""
    if isinstance(count, bool) or int(count) != count or count < 1:
        raise ValidationError(f"count must be a positive integer, got {count!r}")
    rng = make_rng(config.seed, stream)
    if config.method is SamplerMethod.REJECTION:
        return _sample_rejection(state, config, int(count), rng)
    return _sample_inverse_cdf(state, config, int(count), rng)
