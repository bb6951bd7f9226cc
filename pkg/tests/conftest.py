import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240531)


def regular_tetrahedron():
    # unit edge
    return np.array(
        [
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.5, np.sqrt(3) / 2, 0.0],
            [0.5, np.sqrt(3) / 6, np.sqrt(2.0 / 3.0)],
        ]
    )


def random_polar_pair(m, seed, index=0):
    from eganverify import PolarPair, TrialConfig, gen_spherical

    cfg = TrialConfig(dim=m, seed=seed, geometry="spherical")
    return PolarPair.of(gen_spherical(cfg, index))
