import json
import os

import pytest

HERE = os.path.dirname(__file__)


@pytest.fixture(scope="session")
def expected():
    with open(os.path.join(HERE, "data", "expected.json")) as fh:
        return json.load(fh)
