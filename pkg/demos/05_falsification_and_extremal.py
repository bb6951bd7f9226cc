"""Looking for counterexamples, and driving the slack to zero.

Seeded scans draw many random simplices per dimension.  A local search over
vertex coordinates then minimizes slack / R^2.  It always reaches slack 0, but
not always at the regular simplex: some starts end on other tetrahedra with
zero slack, others on slivers pressed against the degeneracy barrier, where
slack / R^2 also tends to 0.
"""
# %%
from eganverify import TrialConfig, extremal_search, falsify_scan
from eganverify.euclid import egan_report

for dim in (2, 3, 5, 8):
    rep = falsify_scan(TrialConfig(dim=dim, trials=20_000, seed=1))
    print(f"dim {dim}: {rep.violations} violations, min slack/R^2 {rep.min_relative_slack:+.2e}, median {rep.quantiles['0.5']:.3f}")

# %% Nearly flat simplices are the hardest cases
rep = falsify_scan(TrialConfig(dim=4, trials=2000, seed=1, generator="near_degenerate"))
print(f"near_degenerate: {rep.violations} violations, min slack/R^2 {rep.min_relative_slack:+.2e}")

# %% Spherical pairs: certificate margins
rep = falsify_scan(TrialConfig(dim=5, trials=500, seed=1, geometry="spherical"))
print(f"spherical m = 5: {rep.violations} violations, min margin {rep.min_slack:.4f}")

# %% Extremal search from a few starts near the regular tetrahedron
for seed in range(4):
    cfg = TrialConfig(dim=3, seed=seed, generator="regular_perturbed", perturbation=0.2)
    res = extremal_search(cfg, iterations=2000)
    best = egan_report(res.simplex)
    print(f"start {seed}: {res.iterations} iterations, slack/R^2 = {res.slack:+.1e}, R/r = {best.R / best.r:.4g}")

# %% From a Gaussian start the search can run into the flat boundary instead
res = extremal_search(TrialConfig(dim=3, seed=4), iterations=2000)
best = egan_report(res.simplex)
print(f"gaussian start: slack/R^2 = {res.slack:.1e}, R/r = {best.R / best.r:.3g}, near_degenerate = {res.simplex.near_degenerate}")
print("trace samples:", res.trace[[0, 10, 100, -1]])
