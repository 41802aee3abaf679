import pytest

import discrete_cs as dcs


@pytest.fixture(scope="session")
def H():
    return dcs.harmonic()


@pytest.fixture(scope="session")
def hyd():
    return dcs.hydrogen1d()


@pytest.fixture(params=["harmonic", "hydrogen1d"], scope="session")
def builtin(request):
    return dcs.harmonic() if request.param == "harmonic" else dcs.hydrogen1d()
