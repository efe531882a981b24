import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(Path(__file__).resolve().parent))

from neuralcodes.families import registry  # noqa: E402
from neuralcodes.geometry import load_realization  # noqa: E402


@pytest.fixture(scope="session")
def ex23():
    return registry("example2.3").code


@pytest.fixture(scope="session")
def wheel():
    return registry("wheel").code


@pytest.fixture(scope="session")
def p1_open():
    return load_realization(ROOT / "fixtures" / "p1_open.json")


@pytest.fixture(scope="session")
def fixtures_dir():
    return ROOT / "fixtures"


def words(code, text):
    """``"13 1235 125"`` -> list of codeword bitsets."""
    return [code.codeword(t) for t in text.split()]
