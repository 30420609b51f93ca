import json
from pathlib import Path

import pytest
from hypothesis import settings

from pivotal.io_format import parse_problem

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")

TESTS_DIR = Path(__file__).parent
DATA_DIR = TESTS_DIR / "data"
FIXTURES_DIR = TESTS_DIR.parent / "fixtures"

FIXTURE_NAMES = ("asteroid", "portfolio", "pandemic", "entrepreneur")


def fixture_path(name: str) -> Path:
    return FIXTURES_DIR / f"{name}.dproblem.json"


@pytest.fixture(scope="session")
def fixture_texts() -> dict[str, str]:
    return {name: fixture_path(name).read_text(encoding="utf-8") for name in FIXTURE_NAMES}


@pytest.fixture()
def asteroid_problem(fixture_texts):
    return parse_problem(fixture_texts["asteroid"])


@pytest.fixture()
def entrepreneur_problem(fixture_texts):
    return parse_problem(fixture_texts["entrepreneur"])


@pytest.fixture(scope="session")
def catalog_fixture() -> dict:
    return json.loads((DATA_DIR / "property_catalog.json").read_text(encoding="utf-8"))
