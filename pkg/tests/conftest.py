import pytest

from ysyslab.cluster.seed import make_pair

FIRST = ["A1", "A2", "A3", "A4", "A5", "D4", "D5", "E6"]
SECOND = ["A1", "A2", "A3", "A4", "A5", "D4"]


def pairs_up_to(max_rr):
    out = []
    for a in FIRST:
        for b in SECOND:
            P = make_pair(f"{a}x{b}")
            if P.r * P.rp <= max_rr:
                out.append(str(P))
    return out


ACCEPTANCE_PAIRS = pairs_up_to(16)
SYMBOLIC_PAIRS = pairs_up_to(6)

# lines printed at the end of the run by test_acceptance
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(12345)
