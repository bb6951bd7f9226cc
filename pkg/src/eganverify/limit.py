"""Lifting a Euclidean simplex onto spheres of growing radius.

The simplex, centered at its circumcenter O, is placed in the hyperplane at
height H below a pole P.  Its vertices then lie on the sphere of radius
``sqrt(H^2 + R^2)`` around P; normalized, they form a spherical simplex whose
tangent-scaled radii and center distance converge to the Euclidean R, r, d as
``O(1/H^2)``.
"""
from dataclasses import dataclass

import numpy as np

from .certificate import spherical_tangents
from .errors import CertificateViolation, ConfigError, NonPositiveHeight
from .euclid import circumsphere, egan_report, egan_slack_value, insphere
from .kernel import angle_between
from .spherical import SphericalSimplex, circum_cap, inscribed_cap

MAX_HEIGHT_RATIO = 1e6
DEFAULT_HEIGHT_RATIOS = (1e1, 1e2, 1e3, 1e4)


@dataclass(frozen=True)
class EmbeddingRow:
    H: float
    n: int
    beta_H: float
    Gamma_H: float
    alpha_H: float
    scaled_R: float
    scaled_r: float
    scaled_d: float
    spherical_slack: float
    euclid_slack: float
    center_gap: float  # |O_H O|
    center_chord: float  # |O_H I_H|
    incenter_gap: float  # |proj(I_H) - I|

    @property
    def scaled_slack(self):
        """Spherical slack times ``H^2 + R^2``, i.e. the slack of the scaled tangents."""
        return float(egan_slack_value(self.n, self.scaled_R, self.scaled_r, self.scaled_d))

    @property
    def slack_error(self):
        return abs(self.scaled_slack - self.euclid_slack)


@dataclass(frozen=True)
class ConvergenceTable:
    rows: tuple
    limits: tuple  # Euclidean (R, r, d)

    @property
    def errors(self):
        return np.array([row.slack_error for row in self.rows])

    def error_ratios(self):
        e = self.errors
        with np.errstate(divide="ignore", invalid="ignore"):
            return e[1:] / e[:-1]

    def is_converging(self):
        return bool(np.all(np.diff(self.errors) < 0))


def _lift(s, H):
    if not H > 0:
        raise NonPositiveHeight(f"height must be positive, got {H}")
    cs = circumsphere(s)
    if H > MAX_HEIGHT_RATIO * cs.radius:
        raise ConfigError(f"H = {H:g} exceeds {MAX_HEIGHT_RATIO:g} R; sqrt(H^2 + R^2) - H would lose all digits")
    rel = s.vertices - cs.center
    lifted = np.hstack([rel, np.full((s.dim + 1, 1), -float(H))])
    return cs, lifted


def embed_on_sphere(s, H):
    """Unit vectors ``(u_i - O, -H) / sqrt(H^2 + R^2)`` on S^n."""
    _, lifted = _lift(s, H)
    return SphericalSimplex(lifted / np.linalg.norm(lifted, axis=1, keepdims=True))


def embedding_metrics(s, H):
    cs, _ = _lift(s, H)
    sph = embed_on_sphere(s, H)
    R = cs.radius
    rho = np.hypot(H, R)
    cc, ic = circum_cap(sph), inscribed_cap(sph)
    alpha = angle_between(cc.center, ic.center)
    tR, tr, td = spherical_tangents(sph)
    n = s.dim
    # incenter on S_H, radially projected from the pole back to the hyperplane
    ihat = ic.center
    proj = ihat[:-1] * (H / -ihat[-1]) + cs.center
    return EmbeddingRow(
        H=float(H),
        n=n,
        beta_H=cc.angular_radius,
        Gamma_H=ic.angular_radius,
        alpha_H=alpha,
        scaled_R=tR * rho,
        scaled_r=tr * rho,
        scaled_d=td * rho,
        spherical_slack=float(egan_slack_value(n, tR, tr, td)),
        euclid_slack=egan_report(s).slack,
        center_gap=R * R / (rho + H),
        center_chord=2.0 * rho * np.sin(alpha / 2.0),
        incenter_gap=float(np.linalg.norm(proj - insphere(s).center)),
    )


def default_heights(s):
    R = circumsphere(s).radius
    return [f * R for f in DEFAULT_HEIGHT_RATIOS]


def convergence_table(s, heights=None):
    """Embedding rows at increasing heights plus the Euclidean limits.

    Raises CertificateViolation if a row breaks ``d_H sqrt(H^2 + R^2) >= |O_H I_H|``.
    """
    heights = default_heights(s) if heights is None else [float(h) for h in heights]
    if len(heights) < 2 or np.any(np.diff(heights) <= 0):
        raise ConfigError("heights must be strictly increasing with at least two entries")
    rows = tuple(embedding_metrics(s, H) for H in heights)
    for row in rows:
        if row.scaled_d < row.center_chord * (1 - 1e-12):
            raise CertificateViolation(
                f"scaled center distance {row.scaled_d!r} below chord {row.center_chord!r} at H = {row.H}"
            )
    rep = egan_report(s)
    return ConvergenceTable(rows, (rep.R, rep.r, rep.d_centers))
