"""Recovering the Euclidean inequality from spheres of growing radius.

The simplex is lifted to height H below its circumcenter and projected onto
the unit sphere.  Scaled by sqrt(H^2 + R^2), the spherical tangents converge
to R, r and d with error O(1/H^2).
"""
# %%
import numpy as np

from eganverify import EuclideanSimplex, convergence_table, egan_report
from eganverify.io import table_to_csv

rng = np.random.default_rng(3)
s = EuclideanSimplex(rng.standard_normal((4, 3)))
rep = egan_report(s)
print(f"Euclidean: R = {rep.R:.6f}, r = {rep.r:.6f}, d = {rep.d_centers:.6f}, slack = {rep.slack:.6f}")

# %% Heights 10, 100, 1000, 10000 times R
table = convergence_table(s)
for row in table.rows:
    print(f"H/R = {row.H / rep.R:7.0f}: scaled R {row.scaled_R:.9f}  r {row.scaled_r:.9f}  d {row.scaled_d:.9f}  slack error {row.slack_error:.2e}")
print("consecutive error ratios:", table.error_ratios())

# %% The same table as round-trip CSV
print(table_to_csv(table))
