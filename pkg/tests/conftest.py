import os
from pathlib import Path

import pytest

from pcasmote.dataset import impute_missing, load_uci_lung_cancer

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_FILE = REPO_ROOT / "data" / "lung-cancer.data"
DEFAULT_CONFIG = REPO_ROOT / "configs" / "default.cfg"


@pytest.fixture(scope="session", autouse=True)
def _run_from_repo_root():
    # the default config refers to data/ relative to the repo root
    old = os.getcwd()
    os.chdir(REPO_ROOT)
    yield
    os.chdir(old)


@pytest.fixture(scope="session")
def data_file() -> Path:
    assert DATA_FILE.exists(), "bundled data file missing"
    return DATA_FILE


@pytest.fixture(scope="session")
def lung_raw(data_file):
    return load_uci_lung_cancer(data_file)


@pytest.fixture(scope="session")
def lung(lung_raw):
    return impute_missing(lung_raw, "mode")


@pytest.fixture(scope="session")
def default_config() -> Path:
    assert DEFAULT_CONFIG.exists(), "default config missing"
    return DEFAULT_CONFIG
