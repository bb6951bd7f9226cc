"""Dense vector/matrix primitives and determinant-based volumes.

Vectors and matrices are plain float64 numpy arrays.  Vertex sets are stored
row-per-vertex, shape ``(k + 1, dim)``.
"""
from math import factorial

import numpy as np

from .errors import InvalidMetric, NotUnit, SingularMatrix

RTOL = 1e-9
ATOL = 1e-12

# Edge-normalized Gram determinant below which a simplex is degenerate, and
# the band above it in which it is accepted but flagged.
DEGENERACY_THRESHOLD = 1e-12
NEAR_DEGENERATE_THRESHOLD = 1e-9

# solve_linear refuses systems whose 2-norm condition number exceeds this.
COND_LIMIT = 1e12


def as_vec(x):
    v = np.asarray(x, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise ValueError(f"expected a non-empty 1-d vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector has non-finite coordinates")
    return v


def as_mat(x):
    m = np.asarray(x, dtype=float)
    if m.ndim != 2 or m.size == 0:
        raise ValueError(f"expected a non-empty 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def solve_linear(m, b):
    """Solve ``m @ x = b`` for square ``m``.

    Raises SingularMatrix when the condition number exceeds ``COND_LIMIT``.
    """
    m = as_mat(m)
    b = as_vec(b)
    if m.shape[0] != m.shape[1] or m.shape[0] != b.shape[0]:
        raise ValueError(f"shape mismatch: {m.shape} vs {b.shape}")
    cond = np.linalg.cond(m)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise SingularMatrix(f"condition number {cond:.3g} exceeds {COND_LIMIT:g}")
    return np.linalg.solve(m, b)


def edge_matrix(vertices):
    """Edge vectors ``v_i - v_0``, shape ``(..., k, dim)``."""
    v = np.asarray(vertices, dtype=float)
    return v[..., 1:, :] - v[..., :1, :]


def gram_volume(vertices, k):
    """k-dimensional volume of the simplex spanned by ``k + 1`` vertices.

    Equal to ``sqrt(det(E E^T)) / k!`` for the edge matrix E; evaluated through
    a QR factorization of ``E^T`` so that ``det = prod(diag(R))**2`` without
    squaring the conditioning.  Accepts stacked input ``(..., k + 1, dim)``.
    """
    v = np.asarray(vertices, dtype=float)
    if v.shape[-2] != k + 1:
        raise ValueError(f"need {k + 1} vertices for a {k}-volume, got {v.shape[-2]}")
    if v.shape[-1] < k:
        raise ValueError(f"vertices of dim {v.shape[-1]} cannot span {k} dimensions")
    if k == 0:
        return np.ones(v.shape[:-2]) if v.ndim > 2 else 1.0
    e = edge_matrix(v)
    r = np.linalg.qr(np.swapaxes(e, -1, -2), mode="r")
    vol = np.abs(np.prod(np.diagonal(r, axis1=-2, axis2=-1), axis=-1)) / factorial(k)
    return float(vol) if np.ndim(vol) == 0 else vol


def max_edge_length(vertices):
    v = np.asarray(vertices, dtype=float)
    diff = v[..., :, None, :] - v[..., None, :, :]
    return np.sqrt(np.max(np.sum(diff * diff, axis=-1), axis=(-1, -2)))


def degeneracy_measure(vertices):
    """Normalized Gram spectrum ``(sigma_k / sigma_1)**2`` of the centered vertices.

    The ratio of the extreme nonzero eigenvalues of the Gram matrix of the
    vertices minus their centroid.  Invariant under rigid motion, scaling and
    vertex relabelling; 1 for a regular simplex, and multiplied by lambda**2
    when the simplex is squashed by lambda along one direction.  Unlike the
    plain normalized determinant it does not decay with dimension.  Accepts
    stacked input.
    """
    v = np.asarray(vertices, dtype=float)
    k = v.shape[-2] - 1
    if v.shape[-1] < k:
        raise ValueError(f"{k + 1} vertices of dim {v.shape[-1]} cannot span {k} dimensions")
    x = v - v.mean(axis=-2, keepdims=True)
    sv = np.linalg.svd(x, compute_uv=False)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(sv[..., 0] > 0, (sv[..., k - 1] / np.where(sv[..., 0] > 0, sv[..., 0], 1.0)) ** 2, 0.0)
    return float(out) if np.ndim(out) == 0 else out


def cayley_menger_volume(pairwise_sq_dists, k):
    """k-volume from a matrix of squared pairwise distances.

    Uses ``(-1)**(k+1) 2**k (k!)**2 V**2 = det(CM)``.  Raises InvalidMetric if
    the input is not a valid distance table or the determinant has the sign
    of a non-Euclidean configuration.
    """
    d = np.asarray(pairwise_sq_dists, dtype=float)
    if d.shape != (k + 1, k + 1):
        raise InvalidMetric(f"expected a {(k + 1, k + 1)} table, got {d.shape}")
    if not np.all(np.isfinite(d)) or np.any(d < 0):
        raise InvalidMetric("squared distances must be finite and nonnegative")
    if not np.allclose(d, d.T, rtol=RTOL, atol=0.0) or np.any(np.diag(d) != 0):
        raise InvalidMetric("distance table must be symmetric with zero diagonal")
    cm = np.ones((k + 2, k + 2))
    cm[0, 0] = 0.0
    cm[1:, 1:] = d
    scale = d.max()
    if scale == 0:
        return 0.0
    # normalize before the determinant so the tolerance is dimensionless
    cm[1:, 1:] /= scale
    vol2 = (-1) ** (k + 1) * np.linalg.det(cm) / (2**k * factorial(k) ** 2)
    if vol2 < -RTOL:
        raise InvalidMetric(f"distances admit no Euclidean embedding (V^2 = {vol2 * scale**k:.3g})")
    return float(np.sqrt(max(vol2, 0.0)) * scale ** (k / 2))


def check_unit(u, rtol=RTOL):
    u = as_vec(u)
    n = np.linalg.norm(u)
    if abs(n - 1.0) > rtol:
        raise NotUnit(f"norm {n!r} deviates from 1 by more than {rtol:g}")
    return u


def angle_between(u, v, rtol=RTOL):
    """Angle in ``[0, pi]`` between two unit vectors.

    Evaluated as ``2 atan2(|u - v|, |u + v|)``, which agrees with the clamped
    ``arccos(u . v)`` but keeps full relative precision for tiny and
    near-straight angles.
    """
    u = check_unit(u, rtol)
    v = check_unit(v, rtol)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    return float(2.0 * np.arctan2(np.linalg.norm(u - v), np.linalg.norm(u + v)))


def unit(x):
    x = np.asarray(x, dtype=float)
    return x / np.linalg.norm(x)
