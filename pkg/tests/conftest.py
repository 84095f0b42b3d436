import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from chanfit.synthetic import dataset_path, manifest_path, registry_path  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def synthetic_csv():
    return Path(str(dataset_path()))


@pytest.fixture
def synthetic_manifest():
    return Path(str(manifest_path()))


@pytest.fixture
def registry_csv():
    return Path(str(registry_path()))


@pytest.fixture
def fixtures():
    return FIXTURES
