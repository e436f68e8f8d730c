from fractions import Fraction

import pytest
from hypothesis import strategies as st

from supercone import MaxMatrix, MaxVector

WEIGHTS = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(4)]


def M(rows):
    return MaxMatrix.of(rows)


def V(*coords):
    return MaxVector.of(coords)


@st.composite
def matrices(draw, min_n=1, max_n=4, weights=WEIGHTS):
    n = draw(st.integers(min_n, max_n))
    rows = draw(
        st.lists(st.lists(st.sampled_from(weights), min_size=n, max_size=n), min_size=n, max_size=n)
    )
    return M(rows)


# eleven nodes whose labels skip 10
GAPPED_LABELS = [1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 12]
GAPPED_EDGES = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1), (8, 7), (9, 7), (7, 3), (12, 11), (11, 2)]


@pytest.fixture
def gapped():
    idx = {lab: t for t, lab in enumerate(GAPPED_LABELS)}
    rows = [[0] * 11 for _ in range(11)]
    for a, b in GAPPED_EDGES:
        rows[idx[a]][idx[b]] = 1
    return M(rows), idx


# criterion number -> (passed, summary line); filled by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, line = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {line}")
