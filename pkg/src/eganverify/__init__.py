"""Numerical verification of the inequality (R - n r)(R + (n - 2) r) >= d^2
between the circumradius R, inradius r and center distance d of an
n-dimensional simplex, together with its spherical counterpart."""

from .certificate import (
    CertificateReport,
    align_pair,
    angle_lemma_margin,
    margin_formula,
    run_certificate,
    spherical_euler_residual,
    spherical_gd_slack,
    trace_identity_check,
)
from .errors import (
    CertificateViolation,
    ConfigError,
    Degenerate,
    DimensionMismatch,
    EganError,
    GenerationExhausted,
    InvalidMetric,
    NonPositiveHeight,
    NotAdmissible,
    NotPolar,
    NotUnit,
    SingularMatrix,
)
from .euclid import EganReport, EuclideanSimplex, Sphere, circumsphere, egan_report, insphere, regular_simplex
from .harness import TrialConfig, extremal_search, falsify_scan, gen_euclidean, gen_spherical
from .kernel import angle_between, cayley_menger_volume, gram_volume, solve_linear
from .limit import convergence_table, embed_on_sphere, embedding_metrics
from .lorentz import LorentzFactors, Mat2, hyperbolic_rotation, lorentz_admissible, lorentz_svd
from .spherical import (
    PolarPair,
    SphericalCap,
    SphericalSimplex,
    circum_cap,
    inscribed_cap,
    polar_simplex,
    verify_polarity,
)

__version__ = "0.1.0"
