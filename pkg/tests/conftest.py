import pytest

from knotcolor.knotdb import KNOTS, lookup

# the parameters each knot is studied at, paired with its m-determinant
STUDIED_CASES = [
    ("3_1", 3, 2),
    ("8_7", 23, 2),
    ("6_2", 19, 3),
    ("6_2", 101, 4),
    ("6_3", 7, 2),
    ("6_1", 5, 3),
    ("7_2", 5, 2),
    ("9_12", 11, 3),
]

TREFOIL_ATLAS = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"
KINK = "X[1,1,2,2]"
HOPF = "X[1,4,2,3] X[3,2,4,1]"
SPLIT_UNLINK = "X[1,2,2,1] X[3,4,4,3]"

_ACCEPTANCE: list[str] = []


@pytest.fixture
def record():
    """Collect one PASS/FAIL line per acceptance criterion for the summary."""

    def _record(label, ok, detail=""):
        _ACCEPTANCE.append(f"{'PASS' if ok else 'FAIL'}  criterion {label}: {detail}")
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)


@pytest.fixture(params=sorted(KNOTS))
def table_knot(request):
    return lookup(request.param)
