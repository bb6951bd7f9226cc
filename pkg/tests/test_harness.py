import numpy as np
import pytest

from eganverify import harness
from eganverify.errors import ConfigError
from eganverify.euclid import EuclideanSimplex, egan_report, regular_simplex
from eganverify.harness import (
    NEAR_DEGENERATE_BAND,
    TrialConfig,
    extremal_search,
    falsify_scan,
    gen_euclidean,
    gen_spherical,
)
from eganverify.kernel import degeneracy_measure
from eganverify.spherical import PolarPair


def test_generation_deterministic():
    cfg = TrialConfig(dim=4, seed=42)
    a = gen_euclidean(cfg, 0).vertices
    b = gen_euclidean(cfg, 0).vertices
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, gen_euclidean(cfg, 1).vertices)
    assert not np.array_equal(a, gen_euclidean(TrialConfig(dim=4, seed=43), 0).vertices)


def test_spherical_generation_deterministic():
    cfg = TrialConfig(dim=5, seed=42, geometry="spherical")
    np.testing.assert_array_equal(gen_spherical(cfg, 3).vertices, gen_spherical(cfg, 3).vertices)


@pytest.mark.parametrize("dim", [2, 3, 5, 8, 16])
def test_near_degenerate_band(dim):
    cfg = TrialConfig(dim=dim, seed=5, generator="near_degenerate")
    lo, hi = NEAR_DEGENERATE_BAND
    for i in range(20):
        meas = degeneracy_measure(gen_euclidean(cfg, i).vertices)
        assert lo <= meas <= hi


@pytest.mark.parametrize(
    "kwargs",
    [
        {"dim": 1},
        {"dim": 17},
        {"dim": 2, "geometry": "spherical"},
        {"dim": 3, "trials": 0},
        {"dim": 3, "seed": -1},
        {"dim": 3, "generator": "uniform"},
        {"dim": 3, "rtol": 0.0},
        {"dim": 3, "geometry": "hyperbolic"},
    ],
)
def test_config_rejected(kwargs):
    with pytest.raises(ConfigError):
        TrialConfig(**kwargs)


def test_wrong_geometry_for_generator():
    with pytest.raises(ConfigError):
        gen_spherical(TrialConfig(dim=3), 0)
    with pytest.raises(ConfigError):
        gen_euclidean(TrialConfig(dim=3, geometry="spherical"), 0)


def test_scan_triangles_are_equalities():
    rep = falsify_scan(TrialConfig(dim=2, trials=10_000, seed=1))
    assert rep.violations == 0
    assert abs(rep.min_relative_slack) <= 1e-9
    assert abs(rep.quantiles["0.5"]) <= 1e-9


def test_scan_dim4():
    rep = falsify_scan(TrialConfig(dim=4, trials=20_000, seed=2))
    assert rep.violations == 0
    assert rep.min_relative_slack >= -1e-9
    assert rep.trials_run == 20_000
    # argmin is regenerated from its index
    assert egan_report(rep.argmin).relative_slack == pytest.approx(rep.min_relative_slack, rel=1e-6, abs=1e-12)


def test_scan_near_degenerate():
    rep = falsify_scan(TrialConfig(dim=3, trials=300, seed=3, generator="near_degenerate"))
    assert rep.violations == 0


def test_regular_perturbed_continuity():
    mins = []
    for eps in (1e-2, 1e-3, 1e-4):
        rep = falsify_scan(TrialConfig(dim=3, trials=200, seed=4, generator="regular_perturbed", perturbation=eps))
        assert rep.violations == 0
        assert rep.min_relative_slack > 0
        mins.append(rep.quantiles["0.5"])
    assert mins[0] > mins[1] > mins[2]
    assert mins[2] < 1e-6


def test_scan_independent_of_threads(monkeypatch):
    cfg = TrialConfig(dim=3, trials=9000, seed=6)
    monkeypatch.setattr(harness, "CHUNK", 1000)
    monkeypatch.setenv("EGAN_VERIFY_THREADS", "1")
    a = falsify_scan(cfg).to_dict()
    monkeypatch.setenv("EGAN_VERIFY_THREADS", "4")
    monkeypatch.setattr(harness.os, "cpu_count", lambda: 4)
    b = falsify_scan(cfg).to_dict()
    assert a == b


def test_spherical_scan():
    rep = falsify_scan(TrialConfig(dim=4, trials=200, seed=7, geometry="spherical"))
    assert rep.violations == 0
    assert rep.min_slack >= -1e-9
    near = falsify_scan(TrialConfig(dim=3, trials=100, seed=7, geometry="spherical", generator="near_degenerate"))
    assert near.violations == 0


def test_spherical_generators_make_polar_pairs():
    for gen in ("gaussian", "near_degenerate", "regular_perturbed"):
        cfg = TrialConfig(dim=5, seed=8, geometry="spherical", generator=gen)
        for i in range(10):
            PolarPair.of(gen_spherical(cfg, i))


def test_extremal_reaches_equality():
    res = extremal_search(TrialConfig(dim=3, seed=9), iterations=2000)
    assert res.slack < 1e-6
    assert np.all(np.diff(res.trace) <= 0)
    assert res.iterations <= 2000


def test_extremal_from_regular_stays():
    start = EuclideanSimplex(regular_simplex(3))
    res = extremal_search(TrialConfig(dim=3, seed=0), iterations=200, start=start)
    assert abs(res.slack) <= 1e-12
    assert np.all(np.diff(res.trace) <= 0)


def test_extremal_rejects_spherical():
    with pytest.raises(ConfigError):
        extremal_search(TrialConfig(dim=3, geometry="spherical"))
