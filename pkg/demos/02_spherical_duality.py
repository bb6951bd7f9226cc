"""Spherical simplices, their caps, and polar duality.

The circumscribed cap of a simplex and the inscribed cap of its polar share a
center, and their radii add up to pi/2.
"""
# %%
import numpy as np

from eganverify import SphericalSimplex, circum_cap, inscribed_cap, polar_simplex, verify_polarity
from eganverify.kernel import angle_between

# %% The coordinate simplex e1, e2, e3 is its own polar
s = SphericalSimplex(np.eye(3))
cc, ic = circum_cap(s), inscribed_cap(s)
print("circumradius", cc.angular_radius, "= arccos(1/sqrt 3)")
print("inradius    ", ic.angular_radius, "= pi/2 - circumradius")

# %% A random simplex on S^4 and its polar
rng = np.random.default_rng(7)
u = SphericalSimplex.from_vectors(rng.standard_normal((5, 5)) + 2.0)
v = polar_simplex(u)
ok, off = verify_polarity(u, v)
print(f"polar: {ok}, largest |u_i . v_j| (i != j) = {off:.1e}")

# %% Swapping roles: the circumcenter of u is the incenter of v
cu, iv = circum_cap(u), inscribed_cap(v)
print("center gap  ", angle_between(cu.center, iv.center))
print("radius sum  ", cu.angular_radius + iv.angular_radius, "vs pi/2 =", np.pi / 2)

# %% Polarity is an involution
print("max |polar(polar(u)) - u| =", np.abs(polar_simplex(v).vertices - u.vertices).max())
