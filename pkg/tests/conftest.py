import os

import hypothesis
import pytest
from loguru import logger

from domains.geometry.ellipsoid import Ellipsoid
from domains.geometry.quadrature import QuadratureGrid
from domains.patches.patches import GammaConfig, choose_gammas

hypothesis.settings.register_profile("fast", max_examples=25, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "fast"))


@pytest.fixture
def E23() -> Ellipsoid:
    return Ellipsoid(2.0, 3.0)


@pytest.fixture
def sphere() -> Ellipsoid:
    return Ellipsoid(1.0, 1.0)


@pytest.fixture
def gammas23(E23: Ellipsoid) -> GammaConfig:
    return choose_gammas(E23)


@pytest.fixture
def small_grid() -> QuadratureGrid:
    """Exact for the Leray density on patch boxes, cheap enough for every layer."""
    return QuadratureGrid(n_r=6, n_t1=4, n_t2=4)


@pytest.fixture(autouse=True)
def _reset_loguru():
    yield
    # CliRunner swaps sys.stderr; drop sinks bound to a closed stream
    logger.remove()
