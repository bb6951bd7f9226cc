"""Seeded simplex generators, falsification scans and extremal search.

Every trial draws from its own PCG64 stream seeded by
``SeedSequence(entropy=seed, spawn_key=(index,))``, so trial ``i`` is
reproducible on its own and a scan gives the same answer however it is
split across threads.
"""
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .certificate import run_certificate
from .errors import ConfigError, Degenerate, GenerationExhausted
from .euclid import EuclideanSimplex, egan_batch, egan_report, regular_simplex
from .kernel import DEGENERACY_THRESHOLD, NEAR_DEGENERATE_THRESHOLD, RTOL, degeneracy_measure
from .spherical import PolarPair, SphericalSimplex, circum_cap

GENERATORS = ("gaussian", "near_degenerate", "regular_perturbed")
GEOMETRIES = ("euclidean", "spherical")
DIM_RANGE = {"euclidean": (2, 16), "spherical": (3, 16)}
MAX_RETRIES = 100

# near_degenerate targets an edge-normalized Gram determinant in this band
NEAR_DEGENERATE_BAND = (1e-12, 1e-6)
# cos of the circumradius of a generated spherical simplex and of its polar
# stays above this; closer to a hemisphere the tangents blow up and the margin
# loses more than 1e-9 to rounding of the angles alone
SPHERICAL_COS_FLOOR = 0.05
# minimum normalized Gram spectrum of a near_degenerate spherical simplex's
# shape before it is shrunk onto the pole
SHAPE_FLOOR = 1e-2

CHUNK = 4096


@dataclass(frozen=True)
class TrialConfig:
    dim: int
    trials: int = 1000
    seed: int = 0
    generator: str = "gaussian"
    rtol: float = RTOL
    geometry: str = "euclidean"
    perturbation: float = 1e-3

    def __post_init__(self):
        if self.geometry not in GEOMETRIES:
            raise ConfigError(f"geometry must be one of {GEOMETRIES}, got {self.geometry!r}")
        lo, hi = DIM_RANGE[self.geometry]
        if not lo <= self.dim <= hi:
            raise ConfigError(f"{self.geometry} dim must be in {lo}..{hi}, got {self.dim}")
        if self.trials < 1:
            raise ConfigError(f"trials must be positive, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.generator not in GENERATORS:
            raise ConfigError(f"generator must be one of {GENERATORS}, got {self.generator!r}")
        if not self.rtol > 0:
            raise ConfigError(f"rtol must be positive, got {self.rtol}")


def trial_rng(seed, index):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=(index,))))


def random_rotation(dim, rng):
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return q * np.sign(np.diag(r))


def _squash(v, direction, factor):
    c = v.mean(axis=0)
    x = v - c
    return c + x - (1.0 - factor) * np.outer(x @ direction, direction)


def _draw_near_degenerate(dim, rng):
    v = rng.standard_normal((dim + 1, dim))
    direction = rng.standard_normal(dim)
    direction /= np.linalg.norm(direction)
    target = 10.0 ** rng.uniform(-11.0, -7.0)
    base = degeneracy_measure(v)
    factor = np.sqrt(target / base)
    # the measure also depends on the longest edge, which squashing shortens
    for _ in range(4):
        meas = degeneracy_measure(_squash(v, direction, factor))
        if not meas > 0:
            break
        factor = min(max(factor * np.sqrt(target / meas), 1e-12), 1.0)
    return _squash(v, direction, factor)


def _draw_euclidean(cfg, rng):
    if cfg.generator == "gaussian":
        return rng.standard_normal((cfg.dim + 1, cfg.dim))
    if cfg.generator == "near_degenerate":
        return _draw_near_degenerate(cfg.dim, rng)
    base = regular_simplex(cfg.dim) @ random_rotation(cfg.dim, rng).T
    return base + cfg.perturbation * rng.standard_normal(base.shape)


def _euclidean_ok(cfg, v):
    meas = degeneracy_measure(v)
    if cfg.generator == "near_degenerate":
        lo, hi = NEAR_DEGENERATE_BAND
        return lo <= meas <= hi and meas > DEGENERACY_THRESHOLD
    return meas > DEGENERACY_THRESHOLD


def gen_euclidean(cfg, index):
    """Deterministic simplex for ``(cfg.seed, index)``; redraws on degeneracy."""
    if cfg.geometry != "euclidean":
        raise ConfigError("gen_euclidean needs a euclidean config")
    rng = trial_rng(cfg.seed, index)
    for _ in range(MAX_RETRIES):
        v = _draw_euclidean(cfg, rng)
        if _euclidean_ok(cfg, v):
            return EuclideanSimplex(v)
    raise GenerationExhausted(f"no acceptable simplex after {MAX_RETRIES} draws (seed={cfg.seed}, index={index})")


def _draw_spherical(cfg, rng):
    m = cfg.dim
    if cfg.generator == "gaussian":
        v = rng.standard_normal((m, m))
    elif cfg.generator == "near_degenerate":
        # vertices pushed together around a pole: a tiny, nearly flat simplex
        # whose shape in the tangent plane is kept reasonable, so that its
        # smallness rather than a needle shape drives the conditioning
        q = random_rotation(m, rng)
        for _ in range(MAX_RETRIES):
            shape = rng.standard_normal((m, m - 1))
            if degeneracy_measure(shape) >= SHAPE_FLOOR:
                break
        v = q[:, 0] + 10.0 ** rng.uniform(-2.5, -1.0) * shape @ q[:, 1:].T
    else:
        v = random_rotation(m, rng) + cfg.perturbation * rng.standard_normal((m, m))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def gen_spherical(cfg, index):
    """Deterministic spherical simplex whose polar exists and is well conditioned."""
    if cfg.geometry != "spherical":
        raise ConfigError("gen_spherical needs a spherical config")
    rng = trial_rng(cfg.seed, index)
    for _ in range(MAX_RETRIES):
        v = _draw_spherical(cfg, rng)
        try:
            pair = PolarPair.of(SphericalSimplex(v))
        except Degenerate:
            continue
        # a tiny simplex always has a polar close to a hemisphere; only its
        # own cap is held away from one
        caps = (pair.U,) if cfg.generator == "near_degenerate" else (pair.U, pair.V)
        if min(np.cos(circum_cap(c).angular_radius) for c in caps) >= SPHERICAL_COS_FLOOR:
            return pair.U
    raise GenerationExhausted(f"no acceptable spherical simplex after {MAX_RETRIES} draws (seed={cfg.seed}, index={index})")


def generate(cfg, index):
    return gen_euclidean(cfg, index) if cfg.geometry == "euclidean" else gen_spherical(cfg, index)


def thread_count():
    cap = os.environ.get("EGAN_VERIFY_THREADS")
    n = os.cpu_count() or 1
    if cap:
        n = min(n, max(1, int(cap)))
    return n


@dataclass(frozen=True)
class ScanReport:
    """Outcome of a falsification scan.

    ``min_slack`` is the smallest raw slack (Euclidean) or certificate margin
    (spherical); ``min_relative_slack`` divides the Euclidean slack by R^2.
    ``argmin`` is the simplex attaining the smallest relative value.
    """

    geometry: str
    dim: int
    trials_run: int
    violations: int
    min_slack: float
    min_relative_slack: float
    argmin_index: int
    argmin: object
    quantiles: dict
    violation_indices: tuple = ()
    elapsed: float = field(default=0.0, compare=False)

    def to_dict(self):
        """JSON view; leaves out ``elapsed`` so artifacts are reproducible byte for byte."""
        return {
            "geometry": self.geometry,
            "dim": self.dim,
            "trials_run": self.trials_run,
            "violations": self.violations,
            "violation_indices": list(self.violation_indices),
            "min_slack": self.min_slack,
            "min_relative_slack": self.min_relative_slack,
            "argmin_index": self.argmin_index,
            "argmin": self.argmin.vertices.tolist(),
            "quantiles": self.quantiles,
        }


def _euclid_chunk(cfg, start, stop):
    """Raw and R^2-relative slack for trials ``start..stop-1``."""
    if cfg.generator == "gaussian":
        verts = np.stack([trial_rng(cfg.seed, i).standard_normal((cfg.dim + 1, cfg.dim)) for i in range(start, stop)])
        # redo anything close to the threshold through the authoritative path
        for j in np.flatnonzero(degeneracy_measure(verts) < NEAR_DEGENERATE_THRESHOLD):
            verts[j] = gen_euclidean(cfg, start + j).vertices
    else:
        verts = np.stack([gen_euclidean(cfg, i).vertices for i in range(start, stop)])
    R, _, _, slack = egan_batch(verts)
    return slack, slack / R**2


def _spherical_chunk(cfg, start, stop):
    margins = np.array([run_certificate(PolarPair.of(gen_spherical(cfg, i)), rtol=cfg.rtol).margin for i in range(start, stop)])
    return margins, margins


def falsify_scan(cfg):
    """Evaluate the inequality on ``cfg.trials`` generated simplices.

    Euclidean: violation when ``slack < -rtol R^2``.  Spherical: violation when
    the certificate margin is below ``-rtol``.
    """
    t0 = time.perf_counter()
    bounds = [(a, min(a + CHUNK, cfg.trials)) for a in range(0, cfg.trials, CHUNK)]
    work = _euclid_chunk if cfg.geometry == "euclidean" else _spherical_chunk
    threads = min(thread_count(), len(bounds))
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda b: work(cfg, *b), bounds))
    else:
        parts = [work(cfg, *b) for b in bounds]
    raw = np.concatenate([p[0] for p in parts])
    rel = np.concatenate([p[1] for p in parts])
    bad = np.flatnonzero(rel < -cfg.rtol)
    k = int(np.argmin(rel))
    qs = (0.0, 0.001, 0.01, 0.5)
    return ScanReport(
        geometry=cfg.geometry,
        dim=cfg.dim,
        trials_run=cfg.trials,
        violations=int(bad.size),
        min_slack=float(raw.min()),
        min_relative_slack=float(rel[k]),
        argmin_index=k,
        argmin=generate(cfg, k),
        quantiles={str(q): float(np.quantile(rel, q)) for q in qs},
        violation_indices=tuple(int(i) for i in bad),
        elapsed=time.perf_counter() - t0,
    )


@dataclass(frozen=True)
class ExtremalResult:
    simplex: EuclideanSimplex
    slack: float  # relative, slack / R^2
    trace: np.ndarray  # best relative slack after each iteration
    iterations: int

    def to_dict(self):
        return {
            "slack": self.slack,
            "iterations": self.iterations,
            "trace": self.trace.tolist(),
            "simplex": {"kind": "euclidean", "dim": self.simplex.dim, "vertices": self.simplex.vertices.tolist()},
        }


# objective value for simplices inside the degeneracy barrier; relative slack
# never exceeds 1
BARRIER = 10.0


def relative_slack_objective(dim):
    shape = (dim + 1, dim)

    def f(x):
        v = x.reshape(shape)
        if not degeneracy_measure(v) > NEAR_DEGENERATE_THRESHOLD:
            return BARRIER
        R, _, _, slack = egan_batch(v[None])
        return float(slack[0] / R[0] ** 2)

    return f


def extremal_search(cfg, iterations=2000, start=None):
    """Nelder-Mead descent of ``slack / R^2`` over vertex coordinates.

    Scaling by R^2 keeps the objective from shrinking the simplex to a point.
    The trace records the best value after every iteration.
    """
    if cfg.geometry != "euclidean":
        raise ConfigError("extremal search runs on euclidean simplices")
    s0 = gen_euclidean(cfg, 0) if start is None else start
    f = relative_slack_objective(cfg.dim)
    x0 = s0.vertices.ravel()
    trace = []

    def record(intermediate_result):
        trace.append(float(intermediate_result.fun))

    res = minimize(
        f,
        x0,
        method="Nelder-Mead",
        callback=record,
        options={"maxiter": iterations, "maxfev": 50 * iterations, "xatol": 1e-10, "fatol": 1e-15, "adaptive": True},
    )
    best = EuclideanSimplex(res.x.reshape(cfg.dim + 1, cfg.dim))
    return ExtremalResult(best, egan_report(best).relative_slack, np.array(trace), int(res.nit))
