"""Circumradius, inradius and center distance of Euclidean simplices.

Every triangle sits exactly on R^2 - 2Rr = d^2, and in higher dimensions
(R - n r)(R + (n - 2) r) - d^2 is nonnegative, vanishing for the regular
simplex.
"""
# %%
import numpy as np

from eganverify import EuclideanSimplex, egan_report, regular_simplex
from eganverify.euclid import egan_batch

# %% The 3-4-5 triangle: R = 2.5, r = 1, and the centers are sqrt(1.25) apart
rep = egan_report(EuclideanSimplex([[0, 0], [3, 0], [0, 4]]))
print(f"R = {rep.R}, r = {rep.r}, d^2 = {rep.d_centers**2:.15f}, slack = {rep.slack:.1e}")

# %% Regular simplices have R = n r and coincident centers
for n in (2, 3, 5, 10):
    rep = egan_report(EuclideanSimplex(regular_simplex(n)))
    print(f"n = {n:2d}: R/r = {rep.R / rep.r:.12f}, d = {rep.d_centers:.1e}, slack = {rep.slack:+.1e}")

# %% Random triangles all sit on the equality surface
rng = np.random.default_rng(1)
R, r, d, slack = egan_batch(rng.standard_normal((10_000, 3, 2)))
print("triangles: max |slack| / R^2 =", np.max(np.abs(slack) / R**2))

# %% Random tetrahedra and 6-simplices stay strictly inside
for n in (3, 6):
    R, r, d, slack = egan_batch(rng.standard_normal((10_000, n + 1, n)))
    rel = slack / R**2
    print(f"n = {n}: min slack/R^2 = {rel.min():.3e}, median = {np.median(rel):.3e}")
