import pytest

from isochart.ext import minimal_resolution


@pytest.fixture(scope="session")
def res_6_12():
    return minimal_resolution(6, 12)


@pytest.fixture(scope="session")
def chart_6_12(res_6_12):
    return res_6_12.chart()
