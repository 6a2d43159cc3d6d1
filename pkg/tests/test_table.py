import math

import numpy as np
import pytest

from ecmpendulum.errors import NoSignChange, ValidationError
from ecmpendulum.physics import PendulumSpec, classical_period, lambda_min
from ecmpendulum.table import SweepSpec, build_table1, crossover_length, load_table1, sweep

from conftest import CNT_DIAMETER, TABLE1


@pytest.fixture(scope="module")
def rows():
    return build_table1()


def test_data_file_in_si():
    data = load_table1()
    assert data["level_n"] == 5 and data["diameter_m"] == 4e-10
    assert [(r["l"], r["M"]) for r in data["rows"]] == TABLE1


def test_row_invariants(rows):
    for r in rows:
        assert r.period == pytest.approx(2 * math.pi / math.sqrt(3 * 9.8 / (2 * r.l)), rel=1e-12)
        assert r.amplitude_free_end == 2 * r.amplitude_cm
        assert r.angle == pytest.approx(math.degrees(r.amplitude_free_end / r.l))


def test_deltas_definition(rows):
    for r in rows:
        for key, attr in [("lambda_min", "lambda_min"), ("period", "period"),
                          ("amplitude", "amplitude_free_end"), ("angle", "angle")]:
            printed = r.paper_values[key]
            assert r.deltas[key] == (getattr(r, attr) - printed) / printed


def test_row3_period(rows):
    assert rows[2].period == pytest.approx(1.55e-3, rel=0.005)
    assert abs(rows[2].deltas["period"]) < 0.005


def test_row4_lambda(rows):
    assert rows[3].lambda_min == pytest.approx(6.12e-9, rel=0.005)
    assert abs(rows[3].deltas["lambda_min"]) < 0.005


def test_rows_2_to_5_lambda_within_2pct(rows):
    for r in rows[1:]:
        assert abs(r.deltas["lambda_min"]) < 0.02


def test_row1_lambda_discrepancy_flagged(rows):
    r = rows[0]
    assert r.lambda_min == pytest.approx(0.776e-9, rel=0.01)
    assert r.lambda_min / r.paper_values["lambda_min"] == pytest.approx(math.pi, rel=0.02)
    assert any(f.startswith("lambda_min") for f in r.flags)


def test_row2_period_flagged(rows):
    # printed 0.01 s vs 0.01215 s from the same formula that matches the other rows
    r = rows[1]
    assert r.period == pytest.approx(0.012153, rel=1e-4)
    assert any(f.startswith("period") for f in r.flags)
    assert not any(f.startswith("period") for row in rows if row is not r for f in row.flags)


def test_custom_rows_have_no_paper_values():
    (r,) = build_table1([(1e-6, 1e-20)])
    assert r.paper_values is None and r.deltas is None and r.flags == []


def test_regime_column(rows):
    assert rows[0].regime == "crossover"
    assert rows[4].regime == "quantum-ecm"


def test_crossover_row5_on_quantum_side():
    l5, M5 = TABLE1[4]
    rho = M5 / l5
    root = crossover_length(lambda l: rho * l, D=CNT_DIAMETER, threshold=10.0)
    # with mass proportional to length the ratio falls as l grows
    assert l5 < root
    assert lambda_min(PendulumSpec(root, rho * root), 5) / CNT_DIAMETER == pytest.approx(10.0, rel=1e-8)


def test_crossover_fixed_point():
    spec = PendulumSpec(*TABLE1[2], CNT_DIAMETER)
    ratio = lambda_min(spec, 5) / CNT_DIAMETER
    root = crossover_length(spec.mass_M, D=CNT_DIAMETER, threshold=ratio)
    assert root == pytest.approx(spec.arm_length_l, rel=1e-6)


def test_crossover_matches_grid_scan():
    M = 1.84e-19
    root = crossover_length(M, D=CNT_DIAMETER, threshold=10.0)
    # dense log grid, then linear interpolation of log ratio between bracketing nodes
    grid = np.geomspace(1e-6, 1e-1, 200_001)
    ratio = np.array([lambda_min(PendulumSpec(l, M), 5) for l in grid]) / CNT_DIAMETER
    i = np.nonzero(np.diff(np.sign(ratio - 10.0)))[0][0]
    lg, lr = np.log(grid[i : i + 2]), np.log(ratio[i : i + 2])
    scan = math.exp(lg[0] + (math.log(10.0) - lr[0]) * (lg[1] - lg[0]) / (lr[1] - lr[0]))
    assert root == pytest.approx(scan, rel=1e-6)


def test_crossover_no_sign_change():
    with pytest.raises(NoSignChange):
        crossover_length(1.84e-19, D=CNT_DIAMETER, threshold=10.0, bracket=(1e-9, 1e-8))
    with pytest.raises(ValidationError):
        crossover_length(1.84e-19, D=0.0)


def test_sweep_two_points_match_direct():
    base = PendulumSpec(1e-6, 1e-20, CNT_DIAMETER)
    out = sweep(SweepSpec("length", (1e-7, 1e-5), 2, base))
    for row, l in zip(out, (1e-7, 1e-5)):
        p = PendulumSpec(l, 1e-20, CNT_DIAMETER)
        assert row["lambda_min_m"] == pytest.approx(lambda_min(p, 5), rel=1e-14)
        assert row["period_s"] == pytest.approx(classical_period(p), rel=1e-14)


def test_sweep_mass_monotone_and_single_transition():
    base = PendulumSpec(1e-6, 1e-20, CNT_DIAMETER)
    out = sweep(SweepSpec("mass", (1e-24, 1e-16), 60, base))
    lam = np.array([r["lambda_min_m"] for r in out])
    assert np.all(np.diff(lam) < 0)
    order = {"quantum-ecm": 2, "crossover": 1, "classical": 0}
    ranks = [order[r["regime"]] for r in out]
    assert all(a >= b for a, b in zip(ranks, ranks[1:]))
    assert len(set(ranks)) >= 2


def test_sweep_level():
    base = PendulumSpec(1e-6, 1e-20, CNT_DIAMETER)
    out = sweep(SweepSpec("level", (0, 20), 21, base))
    assert [r["n"] for r in out] == list(range(21))


def test_sweep_spec_validation():
    base = PendulumSpec(1e-6, 1e-20)
    with pytest.raises(ValidationError):
        SweepSpec("length", (1.0, 0.5), 5, base)
    with pytest.raises(ValidationError):
        SweepSpec("length", (0.5, 1.0), 1, base)
    with pytest.raises(ValidationError):
        SweepSpec("mass", (0.0, 1.0), 5, base)
