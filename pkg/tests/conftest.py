import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_entries = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


@st.composite
def complex_matrices(draw, min_n=1, max_n=5, square=True, real=False):
    n = draw(st.integers(min_n, max_n))
    m = n if square else draw(st.integers(min_n, max_n))
    re = draw(arrays(np.float64, (n, m), elements=_entries))
    if real:
        return re.astype(complex)
    im = draw(arrays(np.float64, (n, m), elements=_entries))
    return re + 1j * im


@st.composite
def matrix_pairs(draw, min_n=1, max_n=5, real=False):
    a = draw(complex_matrices(min_n, max_n, real=real))
    n = a.shape[0]
    re = draw(arrays(np.float64, (n, n), elements=_entries))
    im = np.zeros((n, n)) if real else draw(arrays(np.float64, (n, n), elements=_entries))
    return a, re + 1j * im


seeds = st.integers(min_value=0, max_value=2**32 - 1)
