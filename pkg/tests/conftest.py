from pathlib import Path

import pytest

from gsolve import gallery

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES_DIR


@pytest.fixture
def spd3():
    return gallery.spd_3x3()


@pytest.fixture
def lmat3():
    return gallery.l_3x3()


@pytest.fixture
def spd4():
    return gallery.spd_4x4()
