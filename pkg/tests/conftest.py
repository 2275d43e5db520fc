import pytest

from flipproduct.matroid import from_matrix, graphic

GLUED_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (1, 4), (4, 5), (5, 2)]
MOVED_EDGES = [(0, 1), (0, 3), (1, 2), (1, 3), (2, 3), (1, 4), (4, 5), (2, 5), (2, 4)]
BINARY7_ROWS = [[1, 1, 1, 0, 0, 0, 0],
             [1, 0, 0, 1, 1, 0, 0],
             [0, 1, 0, 1, 0, 1, 0],
             [1, 1, 0, 1, 0, 0, 1]]


@pytest.fixture(scope="session")
def glued():
    """K4 on 0..3 glued to the 4-cycle 1-4-5-2 along edge 1-2."""
    return graphic(6, GLUED_EDGES)


@pytest.fixture(scope="session")
def moved():
    """Same graph with the K4 diagonal 0-2 moved to 2-4."""
    return graphic(6, MOVED_EDGES)


@pytest.fixture(scope="session")
def binary7():
    return from_matrix(BINARY7_ROWS, field="F2")


# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:>2}: {'PASS' if passed else 'FAIL'}  {detail}")
