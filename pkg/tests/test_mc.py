import csv
import io
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracwhittle import mc
from fracwhittle._errors import DegenerateInputError, EstimationFailedError, HarnessError, InvalidParameterError
from fracwhittle.elw import EstimatorConfig, estimate
from fracwhittle.mc import McConfig, kde, run_mc, silverman_bandwidth
from fracwhittle.simulate import SimSpec, gen_fractional

TRAPZ = getattr(np, "trapezoid", None) or np.trapz
PHI_1 = 0.24197072451914337  # standard normal density at 1


def test_single_replication_report():
    rep = run_mc(McConfig(n=500, reps=1, d_values=(0.0,), seed=3))
    d_hat = estimate(gen_fractional(SimSpec(500, 0.0, 3), 0), EstimatorConfig()).d_hat
    row = rep.row("elw", 0.0)
    assert row.bias == d_hat
    assert row.sd == 0.0
    assert row.mse == d_hat ** 2
    assert row.failures == 0


def test_mse_decomposition():
    rep = run_mc(McConfig(n=200, reps=60, d_values=(-0.7, 0.4, 1.3), estimators=("elw", "lw"), seed=4))
    for r in rep.rows:
        assert r.mse == pytest.approx(r.bias ** 2 + r.sd ** 2 * (r.reps - 1) / r.reps, rel=0, abs=1e-12)


def test_worker_count_does_not_change_results():
    base = dict(n=200, reps=60, d_values=(0.0, 1.3), estimators=("elw", "hc"), seed=5, density=True)
    one = run_mc(McConfig(workers=1, **base))
    two = run_mc(McConfig(workers=2, **base))
    np.testing.assert_array_equal(one.estimates, two.estimates)
    assert one.table_csv() == two.table_csv()
    assert one.density_csv() == two.density_csv()
    assert one.to_json() == two.to_json()


def test_common_draws_across_d():
    # the exact estimator is shift-equivariant, so its errors coincide across d
    rep = run_mc(McConfig(n=200, reps=30, d_values=(-0.5, 0.5, 2.0), seed=6, delta1=-4.0, delta2=5.0))
    err = rep.estimates[:, :, 0] - np.array([-0.5, 0.5, 2.0])
    assert np.max(np.abs(err - err[:, [0]])) < 1e-5


def _failing(count):
    calls = {"n": 0}
    real = mc.run_estimator

    def fake(name, x, cfg):
        calls["n"] += 1
        if calls["n"] <= count:
            raise EstimationFailedError("injected")
        return real(name, x, cfg)
    return fake


def test_failures_counted_and_excluded(monkeypatch):
    monkeypatch.setattr(mc, "run_estimator", _failing(1))
    rep = run_mc(McConfig(n=100, reps=100, seed=7))
    assert rep.row("elw", 0.0).failures == 1
    assert np.isnan(rep.estimates[0, 0, 0])


def test_too_many_failures_raise(monkeypatch):
    monkeypatch.setattr(mc, "run_estimator", _failing(2))
    with pytest.raises(HarnessError):
        run_mc(McConfig(n=100, reps=100, seed=7))


@pytest.mark.parametrize("kwargs", [
    dict(reps=0),
    dict(d_values=()),
    dict(d_values=(7.0,)),
    dict(estimators=("gph",)),
    dict(workers=0),
])
def test_config_invariants(kwargs):
    with pytest.raises(InvalidParameterError):
        McConfig(**kwargs)


def test_csv_and_json_agree():
    rep = run_mc(McConfig(n=200, reps=30, d_values=(0.3, 1.7), estimators=("elw", "lw", "velasco"),
                          seed=8, density=True, density_points=21))
    doc = json.loads(rep.to_json())
    rows = list(csv.DictReader(io.StringIO(rep.table_csv())))
    assert len(rows) == len(doc["rows"]) == 6
    for c, j in zip(rows, doc["rows"]):
        assert c["estimator"] == j["estimator"]
        for key in ("d", "bias", "sd", "mse"):
            assert float(c[key]) == j[key]
        assert int(c["failures"]) == j["failures"]
    dens = list(csv.DictReader(io.StringIO(rep.density_csv())))
    flat = [(c["estimator"], c["d"], x, y) for c in doc["densities"] for x, y in zip(c["x"], c["density"])]
    assert len(dens) == len(flat) == 6 * 21
    for a, b in zip(dens, flat):
        assert (a["estimator"], float(a["d"]), float(a["x"]), float(a["density"])) == b


def test_kde_two_point_example():
    assert kde([-1.0, 1.0], 1.0, [0.0])[0] == pytest.approx(PHI_1, rel=1e-15)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 300), st.integers(0, 2**32 - 1))
def test_kde_integrates_to_one(size, seed):
    s = np.random.default_rng(seed).standard_t(4, size=size)
    h = silverman_bandwidth(s)
    grid = np.linspace(s.min() - 10 * h, s.max() + 10 * h, 20_001)
    assert abs(TRAPZ(kde(s, h, grid), grid) - 1.0) <= 1e-3


def test_kde_degenerate_and_invalid():
    with pytest.raises(DegenerateInputError, match="spike"):
        kde([2.5] * 10)
    with pytest.raises(InvalidParameterError):
        kde([1.0])
    with pytest.raises(InvalidParameterError):
        kde([0.0, 1.0], bandwidth=0.0)


def test_elw_density_centred_on_truth():
    rep = run_mc(McConfig(n=500, reps=400, d_values=(1.3,), seed=9, density=True, density_points=801))
    c = rep.densities[0]
    assert c.bandwidth == pytest.approx(silverman_bandwidth(rep.estimates[:, 0, 0]))
    assert abs(c.x[int(np.argmax(c.density))] - 1.3) <= 0.05


def test_elw_white_noise_moments():
    row = run_mc(McConfig(n=500, m=56, reps=1000, d_values=(0.0,), seed=10)).row("elw", 0.0)
    assert abs(row.bias) <= 0.02
    assert 0.068 <= row.sd <= 0.090


def test_lw_bias_at_d_1_7():
    row = run_mc(McConfig(n=500, m=56, reps=1000, d_values=(1.7,), estimators=("lw",), seed=11)).row("lw", 1.7)
    assert -0.70 <= row.bias <= -0.56


def test_fmt_round_trips():
    for v in (0.1, -1.2647, math.pi, 1e-300, 5e-324):
        assert float(mc.fmt(v)) == v
