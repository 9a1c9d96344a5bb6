import pytest

from twotorsion.complex import from_facets, simplex_boundary
from twotorsion.construction import build_p2


@pytest.fixture
def p2():
    return build_p2().complex


@pytest.fixture
def triangle_boundary():
    return simplex_boundary([1, 2, 3])


@pytest.fixture
def tetra_boundary():
    return simplex_boundary([1, 2, 3, 4])


@pytest.fixture
def cylinder():
    # annulus between the empty triangles 123 and 456
    return from_facets([[1, 2, 4], [2, 4, 5], [2, 3, 5], [3, 5, 6], [1, 3, 6], [1, 4, 6]])


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
