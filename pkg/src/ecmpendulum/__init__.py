"""Quantum-vs-classical regime criterion and the nanotube pendulum experiment."""

from .errors import NoSignChange, NumericalError, SamplerFailure, TooFewSamples, ValidationError
from .physics import (
    CONSTANTS,
    PendulumSpec,
    ThermalSystem,
    angular_frequency,
    classical_period,
    lambda_min,
    thermal_wavelength,
    turning_point,
)
from .regime import Regime, RegimeQuery, Thresholds, classify, classify_pendulum

__version__ = "0.1.0"
