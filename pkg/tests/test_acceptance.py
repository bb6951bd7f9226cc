"""Acceptance run: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""
import time
from functools import lru_cache

import numpy as np
import pytest
from scipy.linalg import null_space

from eganverify.certificate import run_certificate, spherical_euler_residual
from eganverify.errors import NotAdmissible
from eganverify.euclid import EuclideanSimplex, egan_batch, egan_report, regular_simplex
from eganverify.harness import TrialConfig, extremal_search, falsify_scan, gen_euclidean, gen_spherical
from eganverify.kernel import angle_between
from eganverify.limit import convergence_table
from eganverify.lorentz import compose, hyperbolic_rotation, jmatrix, lorentz_admissible, lorentz_svd
from eganverify.spherical import PolarPair, circum_cap, inscribed_cap, polar_simplex

SEED = 20240601


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {number:2d}] {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return emit


def test_criterion_01_euler_identity(report):
    t0 = time.perf_counter()
    cfg = TrialConfig(dim=2, trials=10_000, seed=SEED)
    verts = np.stack([gen_euclidean(cfg, i).vertices for i in range(cfg.trials)])
    R, r, d, _ = egan_batch(verts)
    worst = float(np.max(np.abs(R * R - 2 * R * r - d * d) / (R * R)))
    elapsed = time.perf_counter() - t0
    report(1, worst <= 1e-9 and elapsed < 5.0, f"max |R^2-2Rr-d^2|/R^2 = {worst:.2e} over 1e4 triangles in {elapsed:.2f} s")


def test_criterion_02_egan_inequality(report):
    t0 = time.perf_counter()
    lines, total = [], 0
    for dim in range(2, 9):
        rep = falsify_scan(TrialConfig(dim=dim, trials=100_000, seed=SEED))
        total += rep.violations
        lines.append(f"d={dim}: min {rep.min_relative_slack:+.2e}, q0.001 {rep.quantiles['0.001']:.2e}")
    elapsed = time.perf_counter() - t0
    report(2, total == 0 and elapsed < 120.0, f"{total} violations in 7x1e5 trials, {elapsed:.1f} s; min slack/R^2: " + "; ".join(lines))


def test_criterion_03_equality_cases(report):
    worst_slack = worst_ratio = 0.0
    for n in range(2, 11):
        rep = egan_report(EuclideanSimplex(regular_simplex(n)))
        worst_slack = max(worst_slack, abs(rep.slack))
        worst_ratio = max(worst_ratio, abs(rep.R / rep.r - n))
    tri = egan_report(EuclideanSimplex([[0, 0], [3, 0], [0, 4]]))
    tri_err = max(abs(tri.R - 2.5), abs(tri.r - 1.0), abs(tri.d_centers**2 - 1.25))
    ok = worst_slack <= 1e-10 and worst_ratio <= 1e-10 and tri_err <= 1e-12
    report(3, ok, f"regular: max|slack| {worst_slack:.1e}, max|R/r-n| {worst_ratio:.1e}; 3-4-5 max error {tri_err:.1e}")


@lru_cache(maxsize=None)
def certificate_runs(m, trials=10_000):
    cfg = TrialConfig(dim=m, trials=trials, seed=SEED, geometry="spherical")
    reps = [run_certificate(PolarPair.of(gen_spherical(cfg, i))) for i in range(trials)]
    margin = np.array([r.margin for r in reps])
    trace = np.array([r.trace_JD for r in reps])
    residual = np.array([r.trace_lemma_residual for r in reps])
    return margin, trace, residual


def test_criterion_04_margin(report):
    ok, parts = True, []
    for m in range(3, 9):
        margin, trace, _ = certificate_runs(m)
        agree = float(np.max(np.abs(margin - trace)))
        ok &= margin.min() >= -1e-9 and agree <= 1e-9
        if m == 3:
            ok &= float(np.max(np.abs(margin))) <= 1e-8
            parts.append(f"m=3 max|margin| {np.max(np.abs(margin)):.1e}")
        parts.append(f"m={m} min {margin.min():+.1e} agree {agree:.1e}")
    report(4, ok, "; ".join(parts))


def test_criterion_05_spherical_euler(report):
    cfg = TrialConfig(dim=3, trials=10_000, seed=SEED, geometry="spherical")
    worst = max(abs(spherical_euler_residual(gen_spherical(cfg, i))) for i in range(cfg.trials))
    report(5, worst <= 1e-9, f"max residual {worst:.2e} over 1e4 spherical triangles")


def facet_distance_radius(s, point):
    """Largest and smallest angular distance from ``point`` to the facet great spheres of ``s``."""
    dists = []
    for i in range(s.m):
        nv = null_space(np.delete(s.vertices, i, axis=0))[:, 0]
        if nv @ s.vertices[i] < 0:
            nv = -nv
        dists.append(np.pi / 2 - angle_between(point, nv))
    return min(dists), max(dists)


def test_criterion_06_duality(report):
    worst_center = worst_sum = worst_oracle = 0.0
    for m in range(3, 9):
        cfg = TrialConfig(dim=m, trials=1000, seed=SEED, geometry="spherical")
        for i in range(cfg.trials):
            s = gen_spherical(cfg, i)
            v = polar_simplex(s)
            cc, ic = circum_cap(s), inscribed_cap(v)
            worst_center = max(worst_center, angle_between(cc.center, ic.center))
            worst_sum = max(worst_sum, abs(cc.angular_radius + ic.angular_radius - np.pi / 2))
            lo, hi = facet_distance_radius(v, cc.center)
            worst_oracle = max(worst_oracle, abs(lo - ic.angular_radius), abs(hi - ic.angular_radius))
    ok = max(worst_center, worst_sum, worst_oracle) <= 1e-9
    report(6, ok, f"center distance {worst_center:.1e}, |beta+B-pi/2| {worst_sum:.1e}, facet oracle {worst_oracle:.1e}")


def test_criterion_07_lorentz(report):
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(10_000):
        L = rng.uniform(0.1, 5.0)
        K = L / rng.uniform(0.05, 0.95)
        t, s = rng.uniform(-2.0, 2.0, 2)
        mat = compose(K, L, t, s)
        f = lorentz_svd(mat)
        worst = max(worst, float(np.max(np.abs(f.compose() - mat)) / np.max(np.abs(mat))))
    rejected = not lorentz_admissible([[0, 1], [1, 0]])
    try:
        lorentz_svd([[0, 1], [1, 0]])
        rejected = False
    except NotAdmissible:
        pass
    j = jmatrix(2)
    jerr = max(float(np.max(np.abs(hyperbolic_rotation(x) @ j @ hyperbolic_rotation(x) - j))) for x in rng.uniform(-3, 3, 100))
    ok = worst <= 1e-10 and rejected and jerr <= 1e-12
    report(7, ok, f"reconstruction {worst:.1e}, swap matrix rejected: {rejected}, max|RJR-J| {jerr:.1e}")


def test_criterion_08_trace_lemma(report):
    worst = max(float(certificate_runs(m)[2].max()) for m in range(3, 9))
    report(8, worst <= 1e-9, f"max trace-lemma residual {worst:.2e} over 6x1e4 certificate runs")


def test_criterion_09_limit(report):
    rng = np.random.default_rng(SEED)
    cases = {
        "3-4-5": EuclideanSimplex([[0, 0], [3, 0], [0, 4]]),
        "tetrahedron": EuclideanSimplex(rng.standard_normal((4, 3))),
    }
    ok, parts = True, []
    for name, s in cases.items():
        table = convergence_table(s)
        ratios = table.error_ratios()[1:]
        ok &= table.is_converging() and bool(np.all((ratios >= 0.005) & (ratios <= 0.02)))
        parts.append(f"{name}: errors {', '.join(f'{e:.1e}' for e in table.errors)}; ratios {', '.join(f'{x:.4f}' for x in ratios)}")
    report(9, ok, " | ".join(parts))


def test_criterion_10_extremal(report):
    ok, best = True, []
    for seed in range(10):
        res = extremal_search(TrialConfig(dim=3, seed=SEED + seed), iterations=2000)
        monotone = bool(np.all(np.diff(res.trace) <= 0))
        ok &= res.slack < 1e-6 and monotone and res.iterations <= 2000
        best.append(res.slack)
    report(10, ok, f"best slack/R^2 over 10 starts: max {max(best):.1e}, min {min(best):.1e}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
