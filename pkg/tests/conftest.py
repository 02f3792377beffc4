import pytest

from tame_llc.characters import CharacterSystem
from tame_llc.ring_model import build_model
from tame_llc.tame_galois import params_from_q


@pytest.fixture(scope="session")
def sys_ramified():
    """Character system for the ramified quadratic tuple (q=3, e=2, f=1, r=4)."""
    return CharacterSystem(build_model(params_from_q(3, 2, 1, 0, 4)))


@pytest.fixture(scope="session")
def sys_unramified():
    """Character system for the unramified quadratic tuple (q=3, e=1, f=2, r=3)."""
    return CharacterSystem(build_model(params_from_q(3, 1, 2, 0, 3)))
