"""Circumsphere, insphere and the Egan slack of Euclidean simplices."""
from dataclasses import dataclass, field

import numpy as np

from .errors import Degenerate, SingularMatrix
from .kernel import (
    DEGENERACY_THRESHOLD,
    NEAR_DEGENERATE_THRESHOLD,
    as_mat,
    degeneracy_measure,
    edge_matrix,
    gram_volume,
    solve_linear,
)


@dataclass(frozen=True)
class EuclideanSimplex:
    """``dim + 1`` affinely independent vertices in ``R**dim``, one per row."""

    vertices: np.ndarray
    degeneracy: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        v = as_mat(self.vertices).copy()
        n_vert, dim = v.shape
        if dim < 2:
            raise ValueError(f"dimension must be at least 2, got {dim}")
        if n_vert != dim + 1:
            raise ValueError(f"a {dim}-simplex needs {dim + 1} vertices, got {n_vert}")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        meas = degeneracy_measure(v)
        if not meas > DEGENERACY_THRESHOLD:
            raise Degenerate(f"edge-normalized Gram determinant {meas:.3g} below {DEGENERACY_THRESHOLD:g}")
        object.__setattr__(self, "degeneracy", meas)

    @property
    def dim(self):
        return self.vertices.shape[1]

    @property
    def near_degenerate(self):
        return self.degeneracy < NEAR_DEGENERATE_THRESHOLD

    def facet(self, i):
        """Vertices of the facet opposite vertex ``i``."""
        return np.delete(self.vertices, i, axis=0)

    def volume(self):
        return gram_volume(self.vertices, self.dim)


@dataclass(frozen=True)
class Sphere:
    center: np.ndarray
    radius: float


@dataclass(frozen=True)
class EganReport:
    n: int
    R: float
    r: float
    d_centers: float
    slack: float
    near_degenerate: bool = False

    @property
    def relative_slack(self):
        return self.slack / self.R**2

    def to_dict(self):
        return {
            "n": self.n,
            "R": self.R,
            "r": self.r,
            "d_centers": self.d_centers,
            "slack": self.slack,
            "relative_slack": self.relative_slack,
            "near_degenerate": self.near_degenerate,
        }


def egan_slack_value(n, R, r, d):
    return (R - n * r) * (R + (n - 2) * r) - d * d


def affine_circumcenter(points):
    """Circumcenter of ``k + 1`` points within their own affine hull.

    The ambient dimension may exceed k.  With ``E^T = QR`` the center is
    ``p0 + Q z`` where ``R^T z = |e_i|**2 / 2``.
    """
    p = np.asarray(points, dtype=float)
    e = edge_matrix(p)
    q, rr = np.linalg.qr(e.T)
    rhs = 0.5 * np.einsum("ij,ij->i", e, e)
    try:
        z = solve_linear(rr.T, rhs)
    except SingularMatrix as exc:
        raise Degenerate(f"circumcenter system is singular: {exc}") from exc
    offset = q @ z
    return p[0] + offset, float(np.linalg.norm(offset))


def circumsphere(s):
    center, radius = affine_circumcenter(s.vertices)
    return Sphere(center, radius)


def facet_volumes(vertices):
    """(k-1)-volumes of the facets opposite each vertex; stacked input allowed."""
    v = np.asarray(vertices, dtype=float)
    k1 = v.shape[-2]
    idx = np.array([[j for j in range(k1) if j != i] for i in range(k1)])
    return gram_volume(v[..., idx, :], k1 - 2)


def insphere(s):
    """Incenter as the facet-volume weighted mean of vertices; ``r = n Vol / sum V_i``."""
    weights = facet_volumes(s.vertices)
    total = weights.sum()
    center = weights @ s.vertices / total
    radius = s.dim * s.volume() / total
    return Sphere(center, float(radius))


def facet_distances(s, point):
    """Signed distances from ``point`` to each facet hyperplane.

    Entry i is positive on the side of vertex i.  Uses barycentric
    coordinates: ``dist_i = lambda_i(point) * height_i``.
    """
    v = s.vertices
    n = s.dim
    aug = np.vstack([v.T, np.ones(n + 1)])
    lam = np.linalg.solve(aug, np.append(np.asarray(point, dtype=float), 1.0))
    heights = n * s.volume() / facet_volumes(v)
    return lam * heights


def egan_report(s):
    cs = circumsphere(s)
    ins = insphere(s)
    d = float(np.linalg.norm(cs.center - ins.center))
    return EganReport(
        n=s.dim,
        R=cs.radius,
        r=ins.radius,
        d_centers=d,
        slack=float(egan_slack_value(s.dim, cs.radius, ins.radius, d)),
        near_degenerate=s.near_degenerate,
    )


def egan_batch(vertices):
    """Vectorized (R, r, d, slack) for a stack of full-dimensional simplices.

    ``vertices`` has shape ``(N, n + 1, n)``.  No degeneracy policing; callers
    filter with ``degeneracy_measure`` first.
    """
    v = np.asarray(vertices, dtype=float)
    n = v.shape[-1]
    e = edge_matrix(v)
    rhs = 0.5 * np.einsum("...ij,...ij->...i", e, e)
    offset = np.linalg.solve(e, rhs[..., None])[..., 0]
    R = np.linalg.norm(offset, axis=-1)
    circ = v[..., 0, :] + offset
    weights = facet_volumes(v)
    total = weights.sum(axis=-1)
    inc = np.einsum("...i,...ij->...j", weights, v) / total[..., None]
    r = n * gram_volume(v, n) / total
    d = np.linalg.norm(circ - inc, axis=-1)
    return R, r, d, egan_slack_value(n, R, r, d)


def regular_simplex(n, edge=1.0):
    """Regular n-simplex in ``R**n`` with its centroid at the origin."""
    # project the standard basis of R^(n+1) onto the hyperplane sum(x) = 0
    pts = np.eye(n + 1) - 1.0 / (n + 1)
    q, _ = np.linalg.qr(pts.T[:, :n] if n > 0 else pts)
    coords = pts @ q
    return coords * (edge / np.sqrt(2.0))
