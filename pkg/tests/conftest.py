from __future__ import annotations

import random
from pathlib import Path

import pytest

from effpushout.config import ENV_LIMIT, ENV_SAMPLE, ENV_SEED, VerificationSettings

DATA = Path(__file__).parent / "data"


@pytest.fixture(autouse=True)
def clean_env(monkeypatch: pytest.MonkeyPatch) -> None:
    for var in (ENV_LIMIT, ENV_SAMPLE, ENV_SEED):
        monkeypatch.delenv(var, raising=False)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


@pytest.fixture
def settings() -> VerificationSettings:
    return VerificationSettings()


@pytest.fixture
def data_dir() -> Path:
    return DATA
