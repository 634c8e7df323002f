import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dekohere import OneOverF, OrnsteinUhlenbeck, SpinBoson


@pytest.fixture
def ou():
    return OrnsteinUhlenbeck(tau=0.5)


@pytest.fixture
def ohmic():
    return SpinBoson(p=1, lambda_uv=20.0)


@pytest.fixture
def supra():
    return SpinBoson(p=3, lambda_uv=20.0)


@pytest.fixture
def one_over_f():
    return OneOverF(lambda_uv=20.0, lambda_ir=0.01)


@pytest.fixture
def all_models(ou, ohmic, supra, one_over_f):
    return [ou, ohmic, supra, one_over_f]
