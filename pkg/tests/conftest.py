import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HOLOVAR_HYPOTHESIS", "default"))


@pytest.fixture(scope="session")
def approximants():
    from holovar.integrability.pipelines import default_approximants
    return default_approximants(100, Fraction(1, 10 ** 5))
