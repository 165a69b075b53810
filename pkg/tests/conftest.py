import numpy as np
import pytest
from hypothesis import strategies as st

ACCEPTANCE_LINES = []


def record_criterion(label, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f" -- {detail}" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


finite = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)
scalars = st.builds(complex, finite, finite)


def cvectors(min_size=1, max_size=8):
    return st.lists(scalars, min_size=min_size, max_size=max_size).map(lambda v: np.array(v, dtype=np.complex128))


def random_unit_l1(rng, n, field_mode="complex"):
    v = rng.normal(size=n) + (1j * rng.normal(size=n) if field_mode == "complex" else 0)
    return v / np.sum(np.abs(v))
