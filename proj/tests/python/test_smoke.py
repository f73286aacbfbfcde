import math

import numpy as np
import pytest

import nodalgauge as ng


def test_version():
    assert ng.__version__ == "0.1.0"


def test_modes_match_strong_set():
    d = ng.Domain("ring:0.5", 0.05)
    m = ng.modes(d)
    assert m.shape == (19, 2)
    assert np.array_equal(m, ng.strong_set(0.05, 0.5))


def test_table_coefficients():
    assert ng.correction_coefficient("q1:0.7") == pytest.approx(1.032, abs=5e-4)
    assert ng.correction_coefficient("q3:0.7", vertical=True) == pytest.approx(5.374, abs=5e-4)
    assert ng.analytic_measure("q1:0.7") == pytest.approx(ng.alpha_plus(0.7) ** 2)


def test_kostlan_ring_count():
    d = ng.Domain("ring:0.7", 0.01)
    count = ng.expected_zero_count(d, "h:0.7071067811865476")
    assert count == pytest.approx(1 / (2 * math.pi * 0.01), rel=0.03)
    assert ng.pattern_size(d, "s:1,0") == pytest.approx(2 * math.pi * 0.01, rel=0.03)
    deltas = ng.density(d, "h:0.5", [0.25, 0.5, 0.75])
    assert deltas.shape == (3,)
    assert deltas[0] == pytest.approx(deltas[2], rel=1e-9)


def test_grid_matches_pointwise():
    d = ng.Domain("ring:0.8", 0.05)
    g = ng.grid(d, 3, 9)
    assert g.shape == (9, 9)
    assert g[2, 5] == pytest.approx(ng.evaluate(d, 3, 2 / 8, 5 / 8), rel=1e-12, abs=1e-12)
    assert ng.sample_coefficients(d, 3) == ng.sample_coefficients(d, 3)


def test_montecarlo_deterministic():
    d = ng.Domain("q2:0.7", 0.03)
    a = ng.montecarlo(d, lines=10, realizations=3, seed=4)
    b = ng.montecarlo(d, lines=10, realizations=3, seed=4, threads=2)
    assert a["counts"] == b["counts"]
    assert a["mean"] == pytest.approx(np.mean(a["counts"]))


def test_averages():
    assert ng.birkhoff_cos2_average(1.0, 100) == 1.0
    assert ng.rational_exact(5, 1000) == pytest.approx(0.5)
    assert abs(ng.weighted_cos2_average(math.sqrt(2) - 1, 100000, 2) - 0.5) < 2e-3


def test_bad_input():
    with pytest.raises(ValueError):
        ng.Domain("disk:1", 0.1)
    with pytest.raises(ValueError):
        ng.expected_zero_count(ng.Domain("ring:0.7", 0.01), "h:0")
