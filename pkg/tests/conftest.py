import pytest

from negehrhart.constructions import reeve
from negehrhart.counting import KERNELS
from negehrhart.polytope import Box, HRep, Simplex


@pytest.fixture(params=sorted(KERNELS))
def kernel(request):
    return request.param


UNIT_SEGMENT = Box(((0, 1),))
UNIT_SQUARE = Box(((0, 1), (0, 1)))
UNIT_TRIANGLE = Simplex(((0, 0), (1, 0), (0, 1)))
UNIT_TETRAHEDRON = Simplex(((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)))
# triangle x, y >= 0, x + y <= 2
HREP_TRIANGLE = HRep(2, (((-1, 0), 0), ((0, -1), 0), ((1, 1), 2)), ((0, 2), (0, 2)))

CORPUS = {
    "segment": UNIT_SEGMENT,
    "square": UNIT_SQUARE,
    "triangle": UNIT_TRIANGLE,
    "tetrahedron": UNIT_TETRAHEDRON,
    "hrep_triangle": HREP_TRIANGLE,
    "box_2x3": Box(((0, 2), (-1, 2))),
    "reeve1": reeve(1),
    "reeve5": reeve(5),
    "reeve13": reeve(13),
}


ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
