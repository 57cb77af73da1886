import os

import hypothesis
import numpy as np
import pytest

from app.schemas.state import IntegrationSettings
from app.services.config_service import ConfigService

np.seterr(all="warn")

hypothesis.settings.register_profile("dev", max_examples=50, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=300, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))


def preset_config(name: str):
    return ConfigService.build({"preset": name, "mode": "sweep"})


@pytest.fixture
def fig1_params():
    return preset_config("fig1").params


@pytest.fixture
def fig3_params():
    return preset_config("fig3").params


@pytest.fixture
def fig4_params():
    return preset_config("fig4").params


@pytest.fixture
def fig3_fast_spec():
    return preset_config("fig3").sweep_spec().model_copy(update={"solver": "fixed_point"})


@pytest.fixture
def fig4_fast_spec():
    return preset_config("fig4").sweep_spec().model_copy(update={"solver": "fixed_point"})


@pytest.fixture
def default_settings():
    return IntegrationSettings()


@pytest.fixture
def quick_params(fig1_params):
    """fig1 with faster emitter damping; time integration settles within a few thousand 1/ω."""
    return fig1_params.with_updates(gamma_eg=5e-3, gamma_ee=1e-2)
