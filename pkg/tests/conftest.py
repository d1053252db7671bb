from pathlib import Path

import pytest

from conformal_forge.constants import SEED_ENV_VAR
from conformal_forge.families import FamilyParams, make_conformal, make_gd, parse_window
from conformal_forge.scalars import DeltaGroup, Scalar
from conformal_forge.tables import load_table

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(autouse=True)
def _no_env_seed(monkeypatch):
    monkeypatch.delenv(SEED_ENV_VAR, raising=False)


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def ideal2():
    return load_table(str(DATA_DIR / "ideal2.json"))


@pytest.fixture
def sl2_params():
    return FamilyParams("Cur", table=load_table(str(DATA_DIR / "sl2.json")))


@pytest.fixture
def a1():
    return make_gd(FamilyParams("A1"))


@pytest.fixture
def vir():
    return make_conformal(FamilyParams("Vir"))


@pytest.fixture
def a2_half():
    """A2 on Δ = Z with b = 1/2, so −2b = −1 lies in Δ."""
    return FamilyParams("A2", delta=DeltaGroup.parse("1"), b=Scalar(1) / 2)


def window(text: str, p: FamilyParams):
    return parse_window(text, p)
