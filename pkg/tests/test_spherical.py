import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.linalg import null_space

from eganverify import TrialConfig, gen_spherical
from eganverify.errors import Degenerate, DimensionMismatch
from eganverify.kernel import angle_between
from eganverify.spherical import (
    PolarPair,
    SphericalSimplex,
    cap_distance,
    circum_cap,
    inscribed_cap,
    polar_simplex,
    verify_polarity,
)


def random_simplex(m, seed, index=0):
    return gen_spherical(TrialConfig(dim=m, seed=seed, geometry="spherical"), index)


def facet_oracle_radii(s, point):
    """Angular distance from ``point`` to each facet's great sphere, via null_space normals."""
    out = []
    for i in range(s.m):
        others = np.delete(s.vertices, i, axis=0)
        nv = null_space(others)[:, 0]
        if nv @ s.vertices[i] < 0:
            nv = -nv
        out.append(np.pi / 2 - angle_between(point, nv))
    return np.array(out)


def test_circum_cap_identity():
    c = circum_cap(SphericalSimplex(np.eye(3)))
    np.testing.assert_allclose(c.center, np.ones(3) / np.sqrt(3), atol=1e-15)
    assert c.angular_radius == pytest.approx(0.9553166, abs=1e-7)
    assert circum_cap(SphericalSimplex(np.eye(4))).angular_radius == pytest.approx(1.0471976, abs=1e-7)


def test_dependent_vertices_degenerate():
    v = np.array([[1, 0, 0], [0, 1, 0], [1 / np.sqrt(2), 1 / np.sqrt(2), 0]])
    with pytest.raises(Degenerate):
        SphericalSimplex(v)


def test_non_unit_rejected():
    with pytest.raises(ValueError):
        SphericalSimplex(2 * np.eye(3))
    with pytest.raises(ValueError):
        SphericalSimplex(np.eye(2))


def test_polar_examples(rng):
    np.testing.assert_allclose(polar_simplex(SphericalSimplex(np.eye(3))).vertices, np.eye(3), atol=1e-15)
    q, _ = np.linalg.qr(rng.standard_normal((5, 5)))
    np.testing.assert_allclose(polar_simplex(SphericalSimplex(q.T)).vertices, q.T, atol=1e-13)
    for m in (3, 4, 6):
        s = random_simplex(m, seed=3)
        v = polar_simplex(s)
        g = s.vertices @ v.vertices.T
        assert np.max(np.abs(g - np.diag(np.diag(g)))) < 1e-12
        assert np.all(np.diag(g) > 0)


def test_verify_polarity_examples():
    i3 = SphericalSimplex(np.eye(3))
    assert verify_polarity(i3, i3) == (True, 0.0)
    flipped = np.eye(3)
    flipped[0] = -flipped[0]
    ok, off = verify_polarity(i3, SphericalSimplex(flipped))
    assert not ok and off == 0.0
    with pytest.raises(DimensionMismatch):
        verify_polarity(i3, SphericalSimplex(np.eye(4)))
    with pytest.raises(Degenerate):
        PolarPair(i3, SphericalSimplex(flipped))


def test_polar_involution():
    for m in range(3, 9):
        s = random_simplex(m, seed=11)
        back = polar_simplex(polar_simplex(s))
        np.testing.assert_allclose(back.vertices, s.vertices, atol=1e-10)


def test_inscribed_identity():
    c = inscribed_cap(SphericalSimplex(np.eye(3)))
    np.testing.assert_allclose(c.center, np.ones(3) / np.sqrt(3), atol=1e-15)
    assert c.angular_radius == pytest.approx(np.pi / 2 - 0.9553166, abs=1e-7)
    assert c.angular_radius == pytest.approx(0.6154797, abs=1e-7)


@pytest.mark.parametrize("m", range(3, 9))
def test_inscribed_matches_facet_oracle(m):
    for i in range(20):
        s = random_simplex(m, seed=5, index=i)
        c = inscribed_cap(s)
        np.testing.assert_allclose(facet_oracle_radii(s, c.center), c.angular_radius, atol=1e-9)


@pytest.mark.parametrize("m", range(3, 9))
def test_polar_swaps_caps(m):
    # circumcenter of s is the incenter of its polar; radii are complementary
    for i in range(20):
        s = random_simplex(m, seed=6, index=i)
        v = polar_simplex(s)
        cc, ic = circum_cap(s), inscribed_cap(v)
        assert cap_distance(cc, ic) <= 1e-9
        assert cc.angular_radius + ic.angular_radius == pytest.approx(np.pi / 2, abs=1e-9)


@pytest.mark.parametrize("m", range(3, 9))
def test_inscribed_inside_circumscribed(m):
    for i in range(20):
        s = random_simplex(m, seed=8, index=i)
        cc, ic = circum_cap(s), inscribed_cap(s)
        # the inscribed cap lies in the circumscribed one
        assert ic.angular_radius + cap_distance(cc, ic) <= cc.angular_radius + 1e-12
        # every vertex sits on the circumscribed cap boundary
        for u in s.vertices:
            assert angle_between(cc.center, u) == pytest.approx(cc.angular_radius, abs=1e-10)


def test_tiny_simplex_inscribed_cap():
    # vertices crowded near a pole: incenter stays accurate
    base = np.array([[0.0, 0.0], [1.0, 0.0], [0.3, 0.8]]) * 1e-5
    pts = np.hstack([base, -np.ones((3, 1))])
    s = SphericalSimplex.from_vectors(pts)
    c = inscribed_cap(s)
    np.testing.assert_allclose(facet_oracle_radii(s, c.center), c.angular_radius, rtol=1e-6)


@given(st.integers(0, 2**32 - 1), st.integers(3, 7))
def test_rotation_equivariance(seed, m):
    g = np.random.default_rng(seed)
    s = random_simplex(m, seed=seed % 1000)
    q, _ = np.linalg.qr(g.standard_normal((m, m)))
    t = SphericalSimplex(s.vertices @ q.T)
    np.testing.assert_allclose(circum_cap(t).center, q @ circum_cap(s).center, atol=1e-10)
    assert inscribed_cap(t).angular_radius == pytest.approx(inscribed_cap(s).angular_radius, abs=1e-10)
