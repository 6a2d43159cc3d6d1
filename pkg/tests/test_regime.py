import math

import pytest
from hypothesis import given, strategies as st

from ecmpendulum.errors import ValidationError
from ecmpendulum.physics import PendulumSpec
from ecmpendulum.regime import Regime, RegimeQuery, Thresholds, classify, classify_pendulum

from conftest import CNT_DIAMETER, TABLE1

positive = st.floats(1e-30, 1e30)


def test_chain_is_quantum():
    r = classify(RegimeQuery(180e-9, 0.2e-9))
    assert r.ratio == pytest.approx(900)
    assert r.label is Regime.QUANTUM_ECM


def test_warm_atoms_are_classical():
    r = classify(RegimeQuery(0.01e-9, 0.1e-9))
    assert r.ratio == pytest.approx(0.1)
    assert r.label is Regime.CLASSICAL


def test_boundary_is_crossover():
    r = classify(RegimeQuery(1e-9, 1e-9))
    assert r.ratio == 1.0
    assert r.label is Regime.CROSSOVER


def test_zero_size_is_quantum():
    r = classify(RegimeQuery(1e-12, 0.0))
    assert r.ratio == math.inf
    assert r.label is Regime.QUANTUM_ECM


def test_rejects_bad_queries():
    with pytest.raises(ValidationError):
        RegimeQuery(0.0, 1.0)
    with pytest.raises(ValidationError):
        RegimeQuery(1.0, -1.0)


@pytest.mark.parametrize("q,c", [(1.0, 0.1), (10, 1.0), (10, 0.0), (0.5, 0.1)])
def test_threshold_ordering(q, c):
    with pytest.raises(ValidationError):
        Thresholds(q, c)


def test_threshold_parse():
    assert Thresholds.parse("3,0.2") == Thresholds(3.0, 0.2)
    with pytest.raises(ValidationError):
        Thresholds.parse("3")


def test_table_row2_threshold_dependence():
    spec = PendulumSpec(*TABLE1[1], CNT_DIAMETER)
    r = classify_pendulum(spec, 5)
    assert r.ratio == pytest.approx(1.99 / 0.4, rel=0.005)
    assert r.label is Regime.CROSSOVER
    assert classify_pendulum(spec, 5, Thresholds(3.0, 0.1)).label is Regime.QUANTUM_ECM


def test_table_row5_quantum():
    r = classify_pendulum(PendulumSpec(*TABLE1[4], CNT_DIAMETER), 5)
    assert r.ratio == pytest.approx(8.16 / 0.4, rel=0.005)
    assert r.label is Regime.QUANTUM_ECM
    assert r.freedom == "tangential"


def test_macroscopic_ball_classical():
    r = classify_pendulum(PendulumSpec(1.0, 1.0, 0.05), 0)
    assert r.label is Regime.CLASSICAL


def test_report_margins():
    r = classify(RegimeQuery(50.0, 1.0))
    assert r.quantum_margin == pytest.approx(5.0)
    assert r.classical_margin == pytest.approx(0.1 / 50)
    d = r.as_dict()
    assert d["label"] == "quantum-ecm" and d["ratio"] == 50.0


@given(positive, positive, st.floats(1e-5, 1e5))
def test_scale_invariance(lam, size, k):
    a = classify(RegimeQuery(lam, size))
    b = classify(RegimeQuery(lam * k, size * k))
    assert b.ratio == pytest.approx(a.ratio, rel=1e-12)
    # labels may only differ if rounding pushes the ratio across a threshold
    if not any(math.isclose(a.ratio, t, rel_tol=1e-12) for t in (10.0, 0.1)):
        assert a.label is b.label


_RANK = {Regime.CLASSICAL: 0, Regime.CROSSOVER: 1, Regime.QUANTUM_ECM: 2}


@given(positive, positive, st.floats(1.0, 1e6))
def test_label_monotone_in_wavelength(lam, size, k):
    a = classify(RegimeQuery(lam, size))
    b = classify(RegimeQuery(lam * k, size))
    assert _RANK[b.label] >= _RANK[a.label]


@given(st.floats(1e-9, 1.0), st.floats(1e-25, 1e-15), st.floats(1e-11, 1e-8), st.integers(0, 100))
def test_pendulum_label_monotone_in_level(l, M, D, n):
    spec = PendulumSpec(l, M, D)
    assert _RANK[classify_pendulum(spec, n + 1).label] <= _RANK[classify_pendulum(spec, n).label]
