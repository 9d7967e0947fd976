import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hopflab import make_spec
from hopflab.sampling import ARG_DENOMINATORS, BASE_MODULI

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def exact_eigenvalue(draw):
    base = draw(st.sampled_from(BASE_MODULI))
    power = draw(st.integers(1, 3))
    d = draw(st.sampled_from(ARG_DENOMINATORS))
    a = Fraction(draw(st.integers(-d + 1, d)), d)
    return (base ** power, a)


def exact_specs(min_n=1, max_n=4):
    return st.lists(exact_eigenvalue(), min_size=min_n, max_size=max_n).map(make_spec)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def classical():
    return make_spec([2, 2])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
