"""Matrix certificate of the spherical circumradius inequality.

For a mutually polar pair (U, V) on S^(m-1) with circumradii beta, gamma and
circumcenter distance alpha, the pipeline aligns both simplices to a common
basis, factors the top-left 2x2 block of ``C A B`` with the Lorentz SVD, and
rewrites both simplices so that the trace of ``J D`` equals the margin

    sqrt((bc - 1)^2 cos^2 alpha - (b + c)^2 sin^2 alpha) - (m - 2)

with ``b = tan beta`` and ``c = tan gamma``.  Every intermediate identity is
checked numerically and recorded in a CertificateReport.
"""
from dataclasses import asdict, dataclass

import numpy as np

from .errors import CertificateViolation, Degenerate, DimensionMismatch, NotAdmissible, NotPolar
from .kernel import RTOL, angle_between
from .lorentz import hyperbolic_rotation, jmatrix, lorentz_svd
from .spherical import PolarPair, circum_cap, inscribed_cap

# sqrt arguments this far below zero (relative) are clamped to zero
SQRT_CLAMP = 1e-12


@dataclass(frozen=True)
class AlignedPair:
    basis: np.ndarray  # columns e_1..e_m
    Umat: np.ndarray  # vertex columns of U in the basis
    Vmat: np.ndarray  # vertex columns of V in the rotated basis
    A: np.ndarray
    alpha: float
    beta: float
    gamma: float
    b: float  # tan(beta), from the cap's cos and sin
    c: float  # tan(gamma)


@dataclass(frozen=True)
class CertificateReport:
    m: int
    alpha: float
    beta: float
    gamma: float
    b: float
    c: float
    K: float
    L: float
    t: float
    s: float
    margin: float
    trace_JD: float
    trace_lemma_residual: float
    max_offdiag_UtV: float
    max_diag_JB2U: float
    max_diag_JC2V: float
    semispace_ok: bool

    def to_dict(self):
        return asdict(self)


def margin_formula(m, alpha, beta, gamma):
    """Margin of the inequality evaluated from the three angles alone.

    ``sqrt((bc - 1)^2 cos^2(a) - (b + c)^2 sin^2(a)) - (m - 2)`` with
    ``b = tan(beta)``, ``c = tan(gamma)``.  The radicand equals
    ``cos(beta + gamma + a) cos(beta + gamma - a) / (cos(beta) cos(gamma))^2``,
    which avoids cancelling two terms of size ``(bc)^2`` when the caps are
    wide.
    """
    cb, cg = np.cos(beta), np.cos(gamma)
    arg = np.cos(beta + gamma + alpha) * np.cos(beta + gamma - alpha) / (cb * cg) ** 2
    if arg < 0:
        x = (np.tan(beta) * np.tan(gamma) - 1.0) * np.cos(alpha)
        if arg < -SQRT_CLAMP * x * x:
            raise Degenerate(f"negative radicand {arg:.3g}: angle lemma violated")
        arg = 0.0
    return float(np.sqrt(arg) - (m - 2))


def _complete_basis(e1, e2):
    m = e1.shape[0]
    q, r = np.linalg.qr(np.column_stack([e1, e2, np.eye(m)]))
    q = q * np.sign(np.where(np.diag(r) == 0, 1.0, np.diag(r)))
    q[:, 0], q[:, 1] = e1, e2
    return q


def align_pair(p):
    """Orthonormal basis with ``e1 = O_u`` and ``O_v = cos(alpha) e1 + sin(alpha) e2``.

    When the circumcenters coincide, e2 is the Gram-Schmidt completion of the
    first canonical vector not parallel to e1.
    """
    if not isinstance(p, PolarPair):
        p = PolarPair(*p)
    cu, cv = circum_cap(p.U), circum_cap(p.V)
    e1, ov = cu.center, cv.center
    m = e1.shape[0]
    w = ov - (ov @ e1) * e1
    wn = np.linalg.norm(w)
    if wn > 1e-15:
        alpha = angle_between(e1, ov)
        e2 = w / wn
    else:
        alpha = 0.0
        k = int(np.argmin(np.abs(e1)))
        e2 = np.eye(m)[k] - e1[k] * e1
        e2 /= np.linalg.norm(e2)
    basis = _complete_basis(e1, e2)
    A = np.eye(m)
    ca, sa = np.cos(alpha), np.sin(alpha)
    A[:2, :2] = [[ca, sa], [-sa, ca]]
    Umat = basis.T @ p.U.matrix
    # columns of A^{-1} = A^T in the e-basis are the rotated basis vectors
    Vmat = A @ basis.T @ p.V.matrix
    return AlignedPair(basis, Umat, Vmat, A, alpha, cu.angular_radius, cv.angular_radius, cu.tan, cv.tan)


def trace_identity_check(U, V, m_diag, rtol=RTOL):
    """``|Tr M - sum_i M(u_i, v_i) / (u_i . v_i)|`` for columns u_i, v_i.

    ``U^T V`` must be diagonal with positive entries.  When the columns are
    M-isotropic the Cauchy-Schwarz step ``M(u_i, v_i) >= 0`` is enforced too.
    """
    U = np.asarray(U, dtype=float)
    V = np.asarray(V, dtype=float)
    md = np.asarray(m_diag, dtype=float)
    g = U.T @ V
    scale = np.linalg.norm(U, axis=0)[:, None] * np.linalg.norm(V, axis=0)[None, :]
    off = np.abs(g - np.diag(np.diag(g))) / scale
    if off.max() > rtol or np.any(np.diag(g) <= 0):
        raise NotPolar(f"U^T V is not positive diagonal (max scaled off-diagonal {off.max():.3g})")
    mix = np.einsum("ki,k,ki->i", U, md, V)
    terms = mix / np.diag(g)
    residual = abs(md.sum() - terms.sum())

    iso_u = np.einsum("ki,k,ki->i", U, md, U)
    iso_v = np.einsum("ki,k,ki->i", V, md, V)
    norms_u = np.einsum("ki,k,ki->i", U, np.abs(md), U)
    norms_v = np.einsum("ki,k,ki->i", V, np.abs(md), V)
    isotropic = (np.abs(iso_u) <= rtol * norms_u) & (np.abs(iso_v) <= rtol * norms_v)
    bound = rtol * np.sqrt(norms_u * norms_v)
    if np.any(isotropic & (mix < -bound)):
        raise CertificateViolation("M(u_i, v_i) < 0 for M-isotropic columns")
    return float(residual)


def run_certificate(p, rtol=RTOL):
    """Run every step of the certificate and return its report.

    Raises CertificateViolation if a structural identity fails beyond
    tolerance; on valid input that would indicate a bug.
    """
    ap = align_pair(p)
    m = ap.Umat.shape[0]
    b, c = ap.b, ap.c
    B = np.eye(m)
    B[0, 0] = b
    C = np.eye(m)
    C[0, 0] = c
    J = jmatrix(m)

    cab = C @ ap.A @ B
    try:
        f = lorentz_svd(cab[:2, :2])
    except NotAdmissible as exc:
        raise CertificateViolation(f"C A B corner fails Lorentz admissibility: {exc}") from exc
    D = np.eye(m)
    D[0, 0], D[1, 1] = f.K, f.L
    sqrt_dinv = np.diag(1.0 / np.sqrt(np.diag(D)))
    Up = sqrt_dinv @ hyperbolic_rotation(-f.s, m) @ B @ ap.Umat
    Vp = sqrt_dinv @ hyperbolic_rotation(-f.t, m) @ C @ ap.Vmat
    JD = J @ D

    # rounding in U', V' is bounded entrywise by eps times these magnitudes,
    # which carry the cosh growth of the hyperbolic rotations
    wu = np.abs(sqrt_dinv) @ np.abs(hyperbolic_rotation(-f.s, m)) @ np.abs(B) @ np.abs(ap.Umat)
    wv = np.abs(sqrt_dinv) @ np.abs(hyperbolic_rotation(-f.t, m)) @ np.abs(C) @ np.abs(ap.Vmat)
    absjd = np.abs(np.diag(JD))[:, None]
    g = Up.T @ Vp
    max_off = float(np.max(np.abs(g - np.diag(np.diag(g))) / (wu.T @ wv)))
    diag_u = float(np.max(np.abs(np.diag(Up.T @ JD @ Up)) / np.sum(absjd * wu * wu, axis=0)))
    diag_v = float(np.max(np.abs(np.diag(Vp.T @ JD @ Vp)) / np.sum(absjd * wv * wv, axis=0)))
    semispace = bool(np.all(Up[0] > 0) and np.all(Vp[0] > 0))

    problems = []
    if max_off > rtol or np.any(np.diag(g) <= 0):
        problems.append(f"U'^T V' not positive diagonal ({max_off:.3g})")
    if diag_u > rtol or diag_v > rtol:
        problems.append(f"JD-diagonals not zero ({diag_u:.3g}, {diag_v:.3g})")
    if not semispace:
        problems.append("top rows of U', V' not strictly positive")
    if problems:
        raise CertificateViolation("; ".join(problems))

    residual = trace_identity_check(Up, Vp, np.diag(JD), rtol=rtol * max(1.0, f.K))
    return CertificateReport(
        m=m,
        alpha=ap.alpha,
        beta=ap.beta,
        gamma=ap.gamma,
        b=b,
        c=c,
        K=f.K,
        L=f.L,
        t=f.t,
        s=f.s,
        margin=margin_formula(m, ap.alpha, ap.beta, ap.gamma),
        trace_JD=float(np.trace(JD)),
        trace_lemma_residual=residual,
        max_offdiag_UtV=max_off,
        max_diag_JB2U=diag_u,
        max_diag_JC2V=diag_v,
        semispace_ok=semispace,
    )


def angle_lemma_margin(p):
    """``beta + gamma - alpha - pi/2``; positive for every polar pair."""
    if not isinstance(p, PolarPair):
        p = PolarPair(*p)
    cu, cv = circum_cap(p.U), circum_cap(p.V)
    alpha = angle_between(cu.center, cv.center)
    return float(cu.angular_radius + cv.angular_radius - alpha - np.pi / 2)


def spherical_tangents(s):
    """(tan circumradius, tan inradius, tan center distance) of a spherical simplex."""
    cc, ic = circum_cap(s), inscribed_cap(s)
    alpha = angle_between(cc.center, ic.center)
    return cc.tan, ic.tan, float(np.tan(alpha))


def spherical_gd_slack(s):
    """``(R - n r)(R + (n - 2) r) - d^2`` in tangents, with ``n = m - 1``.

    Nonnegative; exactly zero for the regular spherical simplex, where the
    circumcenter and incenter coincide.
    """
    R, r, d = spherical_tangents(s)
    n = s.m - 1
    return float((R - n * r) * (R + (n - 2) * r) - d * d)


def spherical_euler_residual(s):
    """``sin^2(R - r) - sin^2(r) cos^2(R) - sin^2(d)`` for a spherical triangle."""
    if s.m != 3:
        raise DimensionMismatch(f"the spherical Euler relation needs m = 3, got m = {s.m}")
    cc, ic = circum_cap(s), inscribed_cap(s)
    R, r = cc.angular_radius, ic.angular_radius
    d = angle_between(cc.center, ic.center)
    return float(np.sin(R - r) ** 2 - np.sin(r) ** 2 * np.cos(R) ** 2 - np.sin(d) ** 2)
