import math

import numpy as np
import pytest
from hypothesis import strategies as st

from nsbell.beamsplitter import make_beam_splitter
from nsbell.states import JonesVector

SQ06 = math.sqrt(0.6)
SQ04 = math.sqrt(0.4)


@st.composite
def jones_vectors(draw):
    theta = draw(st.floats(0, math.pi / 2))
    phi_v = draw(st.floats(-math.pi, math.pi))
    phi_h = draw(st.floats(-math.pi, math.pi))
    return JonesVector(math.cos(theta) * np.exp(1j * phi_v), math.sin(theta) * np.exp(1j * phi_h))


@st.composite
def splitters(draw):
    r_v = draw(st.floats(0, 1))
    r_h = draw(st.floats(0, 1))
    sign = draw(st.sampled_from([1, -1]))
    return make_beam_splitter(r_v, r_h, sign)


@st.composite
def unitaries(draw):
    """U(2) from Euler angles, covering the whole group."""
    a, b, c, d = (draw(st.floats(-math.pi, math.pi)) for _ in range(4))
    th = draw(st.floats(0, math.pi / 2))
    return np.exp(1j * a) * np.array(
        [
            [np.exp(1j * b) * math.cos(th), np.exp(1j * c) * math.sin(th)],
            [-np.exp(-1j * c) * math.sin(th), np.exp(-1j * b) * math.cos(th)],
        ]
    )


@pytest.fixture
def bs06():
    return make_beam_splitter(SQ06, SQ06)


_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and rep.when == "call":
        detail = dict(item.user_properties).get("measured", "")
        _ACCEPTANCE.append((marker.args[0], rep.passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, passed, detail in sorted(_ACCEPTANCE):
        suffix = f" [{detail}]" if detail else ""
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} {name}{suffix}")
