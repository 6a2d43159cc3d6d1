"""Quantum-vs-classical verdict from the ratio of de Broglie wavelength to size.

A body moves quantum mechanically, and may be handled as a single point at
its centre of mass, when its wavelength is much larger than its size. "Much
larger" is made concrete by two ratio thresholds; between them the verdict
is ``crossover``. Each spatial degree of freedom is judged on its own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import ValidationError
from .physics import PendulumSpec, lambda_min

__all__ = [
    "Regime",
    "Thresholds",
    "RegimeQuery",
    "RegimeReport",
    "classify",
    "classify_pendulum",
]

_NOTES = (
    "mass alone does not decide the regime; only the wavelength/size ratio does",
)


class Regime(str, Enum):
    QUANTUM_ECM = "quantum-ecm"
    CROSSOVER = "crossover"
    CLASSICAL = "classical"


@dataclass(frozen=True)
class Thresholds:
    quantum: float = 10.0
    classical: float = 0.1

    def __post_init__(self):
        if not (self.quantum > 1.0 > self.classical > 0.0):
            raise ValidationError(
                f"thresholds must satisfy quantum > 1 > classical > 0, got {self.quantum}, {self.classical}"
            )

    @classmethod
    def parse(cls, text: str) -> "Thresholds":
        """Parse ``"q,c"`` as used on the command line."""
        try:
            q, c = (float(t) for t in text.split(","))
        except ValueError as exc:
            raise ValidationError(f"thresholds must look like 'q,c', got {text!r}") from exc
        return cls(q, c)


@dataclass(frozen=True)
class RegimeQuery:
    wavelength_lambda: float
    size_D: float
    freedom_label: str = "tangential"

    def __post_init__(self):
        if not (self.wavelength_lambda > 0 and math.isfinite(self.wavelength_lambda)):
            raise ValidationError(f"wavelength must be positive, got {self.wavelength_lambda!r}")
        if not (self.size_D >= 0 and math.isfinite(self.size_D)):
            raise ValidationError(f"size must be >= 0, got {self.size_D!r}")


@dataclass(frozen=True)
class RegimeReport:
    wavelength: float
    size: float
    freedom: str
    ratio: float
    label: Regime
    quantum_threshold: float
    classical_threshold: float
    notes: tuple[str, ...] = field(default=_NOTES)

    @property
    def quantum_margin(self) -> float:
        """ratio / quantum_threshold; >= 1 means the quantum verdict holds."""
        return self.ratio / self.quantum_threshold

    @property
    def classical_margin(self) -> float:
        """classical_threshold / ratio; >= 1 means the classical verdict holds."""
        return self.classical_threshold / self.ratio

    def as_dict(self) -> dict:
        return {
            "freedom": self.freedom,
            "wavelength_m": self.wavelength,
            "size_m": self.size,
            "ratio": self.ratio,
            "label": self.label.value,
            "quantum_threshold": self.quantum_threshold,
            "classical_threshold": self.classical_threshold,
            "quantum_margin": self.quantum_margin,
            "classical_margin": self.classical_margin,
            "notes": list(self.notes),
        }


def classify(query: RegimeQuery, thresholds: Thresholds | None = None) -> RegimeReport:
    thresholds = thresholds or Thresholds()
    lam, size = query.wavelength_lambda, query.size_D
    ratio = math.inf if size == 0 else lam / size
    if ratio >= thresholds.quantum:
        label = Regime.QUANTUM_ECM
    elif ratio <= thresholds.classical:
        label = Regime.CLASSICAL
    else:
        label = Regime.CROSSOVER
    return RegimeReport(
        wavelength=lam,
        size=size,
        freedom=query.freedom_label,
        ratio=ratio,
        label=label,
        quantum_threshold=thresholds.quantum,
        classical_threshold=thresholds.classical,
    )


def classify_pendulum(
    spec: PendulumSpec, n: int, thresholds: Thresholds | None = None
) -> RegimeReport:
    """Judge the swing (tangential) direction using the eigenstate's minimum wavelength."""
    query = RegimeQuery(lambda_min(spec, n), spec.size_D, "tangential")
    return classify(query, thresholds)
