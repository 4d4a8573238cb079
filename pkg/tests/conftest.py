import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import ProtocolOracle  # noqa: E402


@pytest.fixture(scope="session")
def oracle():
    return ProtocolOracle(r_max=2)


def as_oracle_terms(state):
    """SparseState with ``(a, b)`` registers (or none) to ``{(a, r, x, y, b): float}``."""
    out = {}
    for lab, amp in state:
        res = lab.res
        key = (res.r, res.x.value, res.y.value)
        if len(lab.regs) == 2:
            key = (lab.regs[0],) + key + (lab.regs[1],)
        out[key] = float(complex(amp).real)
    return out


def close_terms(got, want, tol=1e-12):
    keys = set(got) | set(want)
    return all(abs(got.get(k, 0.0) - want.get(k, 0.0)) < tol for k in keys)


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
