import pytest

from grwalk.catalog import standard_sweep


@pytest.fixture(scope="session")
def catalog_sweep():
    """Exact stationary data for every connected graph on 2..5 vertices
    and every boundary pair, computed once and shared by the property
    suites (the reductions dominate the runtime)."""
    data = {}
    for n in range(2, 6):
        data[n] = list(standard_sweep(n))
    return data
