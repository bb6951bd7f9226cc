"""Spherical simplices on the unit sphere, their caps, and polar duality.

A spherical simplex with m vertices lives on S^(m-1) in R^m.  Vertices are
stored one per row; the column convention used in matrix arguments is
available as ``SphericalSimplex.matrix``.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import Degenerate, DimensionMismatch
from .euclid import affine_circumcenter
from .kernel import (
    ATOL,
    COND_LIMIT,
    DEGENERACY_THRESHOLD,
    RTOL,
    angle_between,
    as_mat,
    degeneracy_measure,
)

POLARITY_ATOL = 1e-9


@dataclass(frozen=True)
class SphericalSimplex:
    vertices: np.ndarray
    degeneracy: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        v = as_mat(self.vertices).copy()
        m, dim = v.shape
        if m < 3:
            raise ValueError(f"a spherical simplex needs at least 3 vertices, got {m}")
        if dim != m:
            raise ValueError(f"{m} vertices must live in R^{m}, got dimension {dim}")
        norms = np.linalg.norm(v, axis=1)
        if np.any(np.abs(norms - 1.0) > RTOL):
            raise ValueError(f"vertices must be unit vectors (norms {norms})")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        # affinely independent points whose hyperplane misses the origin are
        # exactly the linearly independent ones
        meas = degeneracy_measure(v)
        if not meas > DEGENERACY_THRESHOLD:
            raise Degenerate(f"vertices nearly affinely dependent (measure {meas:.3g})")
        foot, _ = affine_circumcenter(v)
        if np.linalg.norm(foot) <= ATOL:
            raise Degenerate("vertex hyperplane passes through the origin (linearly dependent vertices)")
        object.__setattr__(self, "degeneracy", meas)

    @classmethod
    def from_vectors(cls, vectors):
        """Normalize arbitrary nonzero vectors onto the sphere."""
        v = np.asarray(vectors, dtype=float)
        return cls(v / np.linalg.norm(v, axis=1, keepdims=True))

    @property
    def m(self):
        return self.vertices.shape[0]

    @property
    def matrix(self):
        """Vertices as columns."""
        return self.vertices.T


@dataclass(frozen=True)
class SphericalCap:
    """Cap of angular radius ``angular_radius`` around a unit ``center``.

    ``cos_radius`` and ``sin_radius`` default to the cosine and sine of the
    radius; constructors pass the values they computed directly, which keep
    full relative precision near pi/2 where the angle itself cannot.
    """

    center: np.ndarray
    angular_radius: float
    cos_radius: float = None
    sin_radius: float = None

    def __post_init__(self):
        if self.cos_radius is None:
            object.__setattr__(self, "cos_radius", float(np.cos(self.angular_radius)))
        if self.sin_radius is None:
            object.__setattr__(self, "sin_radius", float(np.sin(self.angular_radius)))

    @property
    def tan(self):
        return self.sin_radius / self.cos_radius


@dataclass(frozen=True)
class PolarPair:
    U: SphericalSimplex
    V: SphericalSimplex

    def __post_init__(self):
        ok, off = verify_polarity(self.U, self.V)
        if not ok:
            raise Degenerate(f"simplices are not mutually polar (max off-diagonal {off:.3g})")

    @classmethod
    def of(cls, s):
        return cls(s, polar_simplex(s))


# below this cos-radius the center comes from the linear solve instead
WIDE_CAP = 0.5


def _circum_parts(s):
    """(unit center, cos-part h, sin-part rho) with radius = atan2(rho, h).

    The unit vertices lie on the affine hyperplane ``{x : x . t = h}``; the
    foot of the perpendicular from the origin is their Euclidean circumcenter,
    at distance rho from every vertex.  The foot is a small difference of unit
    quantities when the cap is close to a hemisphere, so h then comes out with
    relative error eps / h^2.  For wide caps solve ``u_i . x = 1`` instead:
    ``t = x / |x|`` and ``h = 1 / |x|`` keep full relative precision.
    """
    foot, rho = affine_circumcenter(s.vertices)
    h = float(np.linalg.norm(foot))
    if h <= ATOL:
        raise Degenerate("vertex hyperplane passes through the origin (linearly dependent vertices)")
    if h >= WIDE_CAP:
        return foot / h, h, rho
    x = np.linalg.solve(s.vertices, np.ones(s.m))
    nx = float(np.linalg.norm(x))
    return x / nx, 1.0 / nx, float(np.sqrt((nx - 1.0) * (nx + 1.0))) / nx


def circum_cap(s):
    center, h, rho = _circum_parts(s)
    norm = np.hypot(h, rho)
    return SphericalCap(center, float(np.arctan2(rho, h)), float(h / norm), float(rho / norm))


def _dual_rows(s):
    """Rows g_j of ``U^{-T}``: ``u_i . g_j = delta_ij``."""
    u = s.vertices
    cond = np.linalg.cond(u)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise Degenerate(f"vertex matrix condition number {cond:.3g} exceeds {COND_LIMIT:g}")
    return np.linalg.inv(u).T


def polar_simplex(s):
    """Polar simplex: column j of ``U^{-T}`` normalized, so ``u_i . v_j = 0`` for i != j."""
    w = _dual_rows(s)
    # u_j . g_j = 1 > 0, so no sign correction is needed
    w /= np.linalg.norm(w, axis=1, keepdims=True)
    return SphericalSimplex(w)


def verify_polarity(u, v, atol=POLARITY_ATOL):
    """Return ``(is_polar, max |u_i . v_j|, i != j)``."""
    if u.m != v.m:
        raise DimensionMismatch(f"m = {u.m} vs m = {v.m}")
    g = u.vertices @ v.vertices.T
    off = g - np.diag(np.diag(g))
    max_off = float(np.max(np.abs(off)))
    ok = max_off <= atol and bool(np.all(np.diag(g) > atol))
    return ok, max_off


def inscribed_cap(s):
    """Inscribed cap through polar duality.

    The center is the polar simplex's circumcenter t and the radius is
    ``pi/2 - gamma`` for the polar circumradius gamma.  With polar vertices
    ``w_j = g_j / |g_j|``, the equations ``w_j . x = 1`` are solved by
    ``x = sum_j |g_j| u_j``, so ``t = x / |x|`` and ``sin(pi/2 - gamma) = 1/|x|``.
    This positive combination of the vertices stays accurate for the tiny
    simplices produced by large-sphere embeddings, where the polar's own
    hyperplane passes within rounding distance of the origin.
    """
    weights = np.linalg.norm(_dual_rows(s), axis=1)
    x = weights @ s.vertices
    nx = np.linalg.norm(x)
    c = np.sqrt((nx - 1.0) * (nx + 1.0))
    return SphericalCap(x / nx, float(np.arctan2(1.0, c)), float(c / nx), float(1.0 / nx))


def cap_distance(a, b):
    """Angular distance between the centers of two caps."""
    return angle_between(a.center, b.center)
