import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))


# Building a structure means enumerating every rank-capped extension pair, so
# the presets are expensive enough to share across test modules.


@pytest.fixture(scope="session")
def vec2():
    from excat.genstruct import preset_structure

    return preset_structure("vec2")


@pytest.fixture(scope="session")
def moda2():
    from excat.genstruct import preset_structure

    return preset_structure("moda2")


@pytest.fixture(scope="session")
def frobmod():
    from excat.genstruct import preset_structure

    return preset_structure("frobmod")


@pytest.fixture(scope="session")
def stmod2():
    from excat.genstruct import preset_structure

    return preset_structure("stmod2")
