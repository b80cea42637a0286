import random
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
MODELS = ROOT / "models"


@pytest.fixture
def models_dir():
    return MODELS


@pytest.fixture
def rng():
    return random.Random(20240611)
