import math

import numpy as np
import pytest
from scipy import integrate
from scipy.interpolate import CubicHermiteSpline
from scipy.special import eval_hermite

from ecmpendulum.physics import HBAR, PendulumSpec, angular_frequency

# (l [m], M [kg]) as printed
TABLE1 = [
    (1.5e-2, 2.01e-17),
    (5.5e-5, 1.84e-19),
    (9e-7, 6.04e-21),
    (7e-8, 0.70e-21),
    (1.3e-8, 0.17e-21),
]
CNT_DIAMETER = 0.4e-9


def closed_form_density(n, M, omega):
    """|psi_n|^2 from scipy's Hermite values and explicit factorials."""
    a = math.sqrt(HBAR / (M * omega))
    norm = 1.0 / math.sqrt(2.0**n * math.factorial(n) * math.sqrt(math.pi) * a)

    def f(x):
        xi = np.asarray(x, dtype=float) / a
        return (norm * np.exp(-0.5 * xi * xi) * eval_hermite(n, xi)) ** 2

    return f


def quadrature_cdf(n, M, omega, cutoff=6.0, knots=3001):
    """CDF of |psi_n|^2 from per-interval adaptive quadrature, interpolated
    by a cubic Hermite spline whose slopes are the density itself."""
    f = closed_form_density(n, M, omega)
    a = math.sqrt(HBAR / (M * omega))
    half = cutoff * math.sqrt(2 * n + 1) * a
    x = np.linspace(-half, half, knots)
    pieces = [integrate.quad(f, lo, hi, epsabs=0, epsrel=1e-13)[0] for lo, hi in zip(x[:-1], x[1:])]
    cum = np.concatenate(([0.0], np.cumsum(pieces)))
    spline = CubicHermiteSpline(x, cum, f(x))

    def cdf(xs):
        return np.clip(spline(np.clip(xs, -half, half)), 0.0, 1.0)

    return cdf


def ks_distance(samples, cdf):
    s = np.sort(np.asarray(samples))
    n = s.size
    F = cdf(s)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - F), np.max(F - (i - 1) / n)))


@pytest.fixture
def row3_state():
    from ecmpendulum.oscillator import OscillatorState

    spec = PendulumSpec(*TABLE1[2], CNT_DIAMETER)
    return OscillatorState(spec.mass_M, angular_frequency(spec), 5)


# acceptance criteria report: id -> (passed, detail)
ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")
