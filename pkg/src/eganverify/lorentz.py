"""2x2 Lorentz singular value decomposition and hyperbolic rotations.

A real 2x2 matrix ``[[X, Y], [Z, T]]`` is factored as ``R_t diag(K, L) R_s``
with ``R_x = [[cosh x, sinh x], [sinh x, cosh x]]``.
"""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NotAdmissible

# K - L below this fraction of the entry scale is treated as the boundary
KML_FLOOR = 1e-14


class Mat2(NamedTuple):
    X: float
    Y: float
    Z: float
    T: float

    @classmethod
    def from_array(cls, a):
        a = np.asarray(a, dtype=float)
        if a.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {a.shape}")
        return cls(a[0, 0], a[0, 1], a[1, 0], a[1, 1])

    def as_array(self):
        return np.array([[self.X, self.Y], [self.Z, self.T]])


@dataclass(frozen=True)
class LorentzFactors:
    K: float
    L: float
    t: float
    s: float

    def compose(self):
        return compose(self.K, self.L, self.t, self.s)


def _as_mat2(m):
    return m if isinstance(m, Mat2) else Mat2.from_array(m)


def hyperbolic_rotation(x, n=2):
    """n x n identity with ``[[cosh x, sinh x], [sinh x, cosh x]]`` in the top-left."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    r = np.eye(n)
    r[0, 0] = r[1, 1] = np.cosh(x)
    r[0, 1] = r[1, 0] = np.sinh(x)
    return r


def jmatrix(n):
    """``diag(1, -1, ..., -1)``."""
    j = -np.eye(n)
    j[0, 0] = 1.0
    return j


def compose(K, L, t, s):
    return hyperbolic_rotation(t) @ np.diag([K, L]) @ hyperbolic_rotation(s)


def lorentz_admissible(m):
    """Whether ``m`` satisfies X-T > |Z-Y|, X+T > |Z+Y| and XT - ZY > 0.

    The strict positivity of ``|Z - Y|`` and ``|Z + Y|`` is not required:
    the factorization extends continuously to ``Z = +-Y``.
    """
    X, Y, Z, T = _as_mat2(m)
    return bool(X - T > abs(Z - Y) and X + T > abs(Z + Y) and X * T - Z * Y > 0)


def _hyp_norm(a, b):
    # sqrt(a^2 - b^2) for a > |b| without cancellation
    b = abs(b)
    return np.sqrt((a - b) * (a + b))


def lorentz_svd(m):
    """Factors (K, L, t, s) with K > L > 0 and ``m = R_t diag(K, L) R_s``.

    ``K + L = sqrt((X+T)^2 - (Z+Y)^2)``, ``K - L = sqrt((X-T)^2 - (Z-Y)^2)``,
    ``t + s = asinh((Z+Y)/(K+L))`` and ``t - s = asinh((Z-Y)/(K-L))``.
    """
    X, Y, Z, T = _as_mat2(m)
    if not lorentz_admissible(Mat2(X, Y, Z, T)):
        raise NotAdmissible(f"[[{X}, {Y}], [{Z}, {T}]] has no Lorentz SVD")
    kpl = _hyp_norm(X + T, Z + Y)
    kml = _hyp_norm(X - T, Z - Y)
    scale = max(abs(X), abs(Y), abs(Z), abs(T))
    if kml <= KML_FLOOR * scale:
        raise NotAdmissible(f"K - L = {kml:.3g} is at the admissibility boundary")
    tps = np.arcsinh((Z + Y) / kpl)
    tms = np.arcsinh((Z - Y) / kml)
    K = 0.5 * (kpl + kml)
    # (K+L)^2 - (K-L)^2 = 4 det, so L = 2 det / (kpl + kml) avoids cancelling
    L = 2.0 * (X * T - Z * Y) / (kpl + kml)
    return LorentzFactors(float(K), float(L), float(0.5 * (tps + tms)), float(0.5 * (tps - tms)))
