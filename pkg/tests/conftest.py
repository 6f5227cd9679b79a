import pytest

from torsiongrowth import chambers, coloring, pipeline, polytope
from torsiongrowth.racg import presentation


@pytest.fixture(scope="session")
def dodeca():
    return polytope.build_builtin("dodecahedron")


@pytest.fixture(scope="session")
def colouring(dodeca):
    return coloring.search_admissible(dodeca, 0, polytope.opposite_facet(dodeca, 0))


@pytest.fixture(scope="session")
def pres(dodeca):
    return presentation(dodeca)


@pytest.fixture(scope="session")
def complex_(dodeca, colouring):
    return chambers.build(dodeca, colouring)


@pytest.fixture(scope="session")
def base(dodeca, colouring):
    return pipeline.make_base(dodeca, colouring, 0, polytope.opposite_facet(dodeca, 0))


@pytest.fixture(scope="session")
def s_wall(complex_):
    return chambers.wall_of(complex_, 0, 0)


@pytest.fixture(scope="session")
def s_prime_wall(complex_, dodeca):
    return chambers.wall_of(complex_, 0, polytope.opposite_facet(dodeca, 0))


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.RESULTS, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
