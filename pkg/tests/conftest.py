import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from ifmchannel import IfmParams

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def params(n_max=10, a_max=0.95, q_min=0.0, q_max=1.0):
    return st.builds(
        IfmParams,
        st.integers(1, n_max),
        st.floats(0.0, a_max),
        st.floats(q_min, q_max),
    )


@st.composite
def pure_states(draw, dim=2):
    re = draw(st.lists(st.floats(-1, 1), min_size=dim, max_size=dim))
    im = draw(st.lists(st.floats(-1, 1), min_size=dim, max_size=dim))
    v = np.array(re) + 1j * np.array(im)
    n = np.linalg.norm(v)
    if n < 1e-3:
        v = np.zeros(dim, dtype=complex)
        v[0] = 1.0
        return v
    return v / n


# criterion number -> "PASS"/"FAIL" line, filled by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
