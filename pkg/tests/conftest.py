import pytest

from walgebra.catalog import BUILTIN_NAMES, builtin_datum


@pytest.fixture(params=BUILTIN_NAMES)
def datum(request):
    return builtin_datum(request.param)


@pytest.fixture
def sl2():
    return builtin_datum("sl2-principal")


@pytest.fixture
def sl3min():
    return builtin_datum("sl3-minimal")
