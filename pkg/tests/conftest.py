import numpy as np
import pytest
from hypothesis import HealthCheck, settings

import lapgeo as lg

settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
    deadline=None,
)
settings.load_profile("ci")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)


@pytest.fixture
def circle_decomposition():
    """Graph-Laplacian decomposition of a seeded 30-point circle sample."""
    cloud = lg.sample_uniform_circle(30, seed=5)
    cfg = lg.ManifoldConfig(1, 2 * np.pi, 0.5 * 30 ** -0.25)
    return lg.eigendecompose(lg.build_laplacian(cloud, cfg)), cloud


def random_decomposition(rng, n=None, ambient=3):
    """Decomposition of a random small-cloud Laplacian plus its cloud."""
    if n is None:
        n = int(rng.integers(6, 16))
    cloud = lg.PointCloud(rng.normal(size=(n, ambient)))
    cfg = lg.ManifoldConfig(2, 3.0, float(rng.uniform(0.5, 1.5)))
    return lg.eigendecompose(lg.build_laplacian(cloud, cfg)), cloud
