"""Two-probe pendulum experiment: classical swing vs. quantum position jumps.

Classical mode samples the harmonic trajectory ``A cos(omega t)`` with ``A``
the turning point of the chosen eigenstate energy. Quantum mode models each
observation as an ideal position measurement of a stationary eigenstate, so
successive positions are independent draws from |psi_n|^2. No jump rate or
measurement back-action is modelled beyond that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import TooFewSamples, ValidationError
from .oscillator import OscillatorState, SamplerConfig, sample_positions
from .physics import PendulumSpec, _level, angular_frequency, classical_period, turning_point

__all__ = [
    "Mode",
    "ReportPoint",
    "ExperimentConfig",
    "EventSeries",
    "Probe",
    "PeriodResult",
    "SAMPLES_PER_PERIOD",
    "MAX_EVENTS",
    "simulate",
    "detector_counts",
    "default_probes",
    "autocorrelation",
    "detect_period",
]

# non-integer so sampling never locks onto the swing
SAMPLES_PER_PERIOD = 37.1
MAX_EVENTS = 1e8
MIN_EVENTS = 64


class Mode(str, Enum):
    CLASSICAL = "classical"
    QUANTUM = "quantum"


class ReportPoint(str, Enum):
    CENTRE_OF_MASS = "centre-of-mass"
    FREE_END = "free-end"

    @property
    def scale(self) -> float:
        # rigid rod: the free end is twice as far from the pivot as the centre of mass
        return 2.0 if self is ReportPoint.FREE_END else 1.0


@dataclass(frozen=True)
class ExperimentConfig:
    pendulum: PendulumSpec
    level_n: int = 5
    mode: Mode = Mode.CLASSICAL
    observation_rate: float | None = None  # Hz; None -> SAMPLES_PER_PERIOD per period
    duration: float | None = None  # s; None -> 100 periods
    seed: int = 0
    report_point: ReportPoint = ReportPoint.CENTRE_OF_MASS
    sampler: SamplerConfig = field(default_factory=SamplerConfig)

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "report_point", ReportPoint(self.report_point))
        _level(self.level_n)
        period = classical_period(self.pendulum)
        if self.observation_rate is None:
            object.__setattr__(self, "observation_rate", SAMPLES_PER_PERIOD / period)
        if self.duration is None:
            object.__setattr__(self, "duration", 100.0 * period)
        if not (self.observation_rate > 0 and math.isfinite(self.observation_rate)):
            raise ValidationError("observation_rate must be positive")
        if not (self.duration > 0 and math.isfinite(self.duration)):
            raise ValidationError("duration must be positive")
        if self.duration * self.observation_rate > MAX_EVENTS:
            raise ValidationError(f"duration * observation_rate exceeds {MAX_EVENTS:.0e} events")

    @property
    def event_count(self) -> int:
        # samples at t = 0, 1/rate, ... up to and including t = duration
        return int(math.floor(self.duration * self.observation_rate * (1 + 1e-12))) + 1

    def as_dict(self) -> dict:
        p = self.pendulum
        return {
            "mode": self.mode.value,
            "seed": int(self.seed),
            "observation_rate_hz": self.observation_rate,
            "duration_s": self.duration,
            "level_n": int(self.level_n),
            "report_point": self.report_point.value,
            "pendulum": {
                "arm_length_m": p.arm_length_l,
                "mass_kg": p.mass_M,
                "size_m": p.size_D,
                "gravity_m_s2": p.gravity_g,
            },
            "sampler": {
                "method": self.sampler.method.value,
                "grid_points": self.sampler.grid_points,
                "support_cutoff": self.sampler.support_cutoff,
            },
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        p = d["pendulum"]
        s = d.get("sampler", {})
        return cls(
            pendulum=PendulumSpec(p["arm_length_m"], p["mass_kg"], p.get("size_m", 0.0), p.get("gravity_m_s2", 9.8)),
            level_n=d["level_n"],
            mode=d["mode"],
            observation_rate=d["observation_rate_hz"],
            duration=d["duration_s"],
            seed=d["seed"],
            report_point=d.get("report_point", ReportPoint.CENTRE_OF_MASS),
            sampler=SamplerConfig(seed=d["seed"], **{k: v for k, v in s.items() if k in ("method", "grid_points", "support_cutoff")}),
        )


@dataclass(frozen=True)
class EventSeries:
    times: np.ndarray
    positions: np.ndarray
    mode: Mode | None = None
    seed: int | None = None

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        x = np.asarray(self.positions, dtype=float)
        if t.shape != x.shape or t.ndim != 1:
            raise ValidationError("times and positions must be 1-d arrays of equal length")
        if t.size > 1 and not np.all(np.diff(t) > 0):
            raise ValidationError("times must be strictly increasing")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "positions", x)

    def __len__(self) -> int:
        return self.times.size


@dataclass(frozen=True)
class Probe:
    """Detector window centred at ``center`` with full width ``aperture`` (m)."""

    center: float
    aperture: float

    def __post_init__(self):
        if not self.aperture > 0:
            raise ValidationError("probe aperture must be positive")

    @property
    def bounds(self) -> tuple[float, float]:
        return self.center - 0.5 * self.aperture, self.center + 0.5 * self.aperture


def simulate(config: ExperimentConfig) -> EventSeries:
    spec, n = config.pendulum, config.level_n
    count = config.event_count
    times = np.arange(count) / config.observation_rate
    if config.mode is Mode.CLASSICAL:
        positions = turning_point(spec, n) * np.cos(angular_frequency(spec) * times)
    else:
        state = OscillatorState(spec.mass_M, angular_frequency(spec), n)
        sampler = SamplerConfig(
            seed=config.seed,
            method=config.sampler.method,
            grid_points=config.sampler.grid_points,
            support_cutoff=config.sampler.support_cutoff,
        )
        positions = sample_positions(state, sampler, count)
    return EventSeries(times, positions * config.report_point.scale, config.mode, int(config.seed))


def default_probes(
    spec: PendulumSpec,
    n: int,
    report_point: ReportPoint = ReportPoint.FREE_END,
    aperture: float = 1e-9,
) -> list[Probe]:
    """Probes T1 and T2 at minus and plus the turning point."""
    x = turning_point(spec, n) * ReportPoint(report_point).scale
    return [Probe(-x, aperture), Probe(x, aperture)]


def detector_counts(series: EventSeries, probes: list[Probe]) -> list[int]:
    if len(series) == 0:
        raise ValidationError("event series is empty")
    x = series.positions
    counts = []
    for probe in probes:
        lo, hi = probe.bounds
        counts.append(int(np.count_nonzero((x >= lo) & (x <= hi))))
    return counts


def autocorrelation(x, max_lag: int | None = None) -> np.ndarray:
    """Biased sample autocorrelation r_0..r_max_lag of a mean-removed series."""
    x = np.asarray(x, dtype=float)
    n = x.size
    max_lag = n - 1 if max_lag is None else min(int(max_lag), n - 1)
    y = x - x.mean()
    nfft = 1 << (2 * n - 1).bit_length()
    spec = np.fft.rfft(y, nfft)
    acov = np.fft.irfft(spec * np.conj(spec), nfft)[: max_lag + 1]
    if acov[0] <= 0:
        return np.zeros(max_lag + 1)
    return acov / acov[0]


@dataclass(frozen=True)
class PeriodResult:
    """Outcome of the autocorrelation period test.

    ``period`` is None when no autocorrelation peak clears ``threshold``.
    ``noise_band`` is 3/sqrt(N); ``band_violations`` counts lags in
    1..``noise_lags`` whose |r_k| exceeds it.
    """

    period: float | None
    score: float
    threshold: float
    noise_band: float
    noise_lags: int
    max_abs_acf: float
    band_violations: int
    lag: float | None = None

    def as_dict(self) -> dict:
        return {
            "period_s": self.period,
            "periodic": self.period is not None,
            "score": self.score,
            "threshold": self.threshold,
            "noise_band": self.noise_band,
            "noise_lags": self.noise_lags,
            "max_abs_acf": self.max_abs_acf,
            "band_violations": self.band_violations,
            "lag_samples": self.lag,
        }


def _parabolic_peak(r: np.ndarray, k: int) -> tuple[float, float]:
    y0, y1, y2 = r[k - 1], r[k], r[k + 1]
    denom = y0 - 2.0 * y1 + y2
    if denom >= 0:
        return float(k), float(y1)
    shift = 0.5 * (y0 - y2) / denom
    return k + shift, float(y1 - 0.25 * (y0 - y2) * shift)


def detect_period(
    series: EventSeries, threshold: float = 0.5, noise_lags: int | None = None
) -> PeriodResult:
    """Dominant period from the first significant autocorrelation peak.

    Peaks are searched after the first zero crossing of r_k; the first local
    maximum above ``max(threshold, 3/sqrt(N))`` wins and is refined by a
    parabola through its neighbours. ``noise_lags`` defaults to
    floor(10 log10 N), the usual lag count for white-noise diagnostics.
    """
    n = len(series)
    if n < MIN_EVENTS:
        raise TooFewSamples(f"need at least {MIN_EVENTS} events, got {n}")
    dt = np.diff(series.times)
    step = float(np.mean(dt))
    if not np.allclose(dt, step, rtol=1e-6, atol=0):
        raise ValidationError("detect_period requires uniformly sampled events")

    r = autocorrelation(series.positions, n // 2)
    band = 3.0 / math.sqrt(n)
    if noise_lags is None:
        noise_lags = int(10 * math.log10(n))
    noise_lags = max(1, min(int(noise_lags), r.size - 1))
    window = np.abs(r[1 : noise_lags + 1])
    max_abs = float(window.max())
    violations = int(np.count_nonzero(window > band))

    cutoff = max(threshold, band)
    below = np.nonzero(r[1:] < 0)[0]
    period = lag = None
    score = float(np.max(r[1:])) if r.size > 1 else 0.0
    if below.size:
        start = below[0] + 1
        tail = r[start:]
        score = float(tail.max()) if tail.size else 0.0
        for k in range(start + 1, r.size - 1):
            if r[k] >= r[k - 1] and r[k] > r[k + 1] and r[k] > cutoff:
                lag, score = _parabolic_peak(r, k)
                period = lag * step
                break
    return PeriodResult(period, score, threshold, band, noise_lags, max_abs, violations, lag)
