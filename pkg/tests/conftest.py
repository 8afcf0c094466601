import pytest

from symsets.gfcore import field_of_order


@pytest.fixture(params=[2, 3, 4])
def small_field(request):
    return field_of_order(request.param)


@pytest.fixture
def gf2():
    return field_of_order(2)


@pytest.fixture
def gf3():
    return field_of_order(3)


@pytest.fixture
def gf4():
    return field_of_order(4)
