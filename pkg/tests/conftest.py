import pytest

from singlish.config import EngineConfig, packaged_data
from singlish.engine import Engine
from singlish.rules import load_rules


@pytest.fixture(scope="session")
def engine():
    """One fully built engine for the whole run; treat it as read-only."""
    return Engine()


@pytest.fixture(scope="session")
def forward_rules():
    return load_rules(packaged_data("rules", "forward_standard.tsv"))


@pytest.fixture(scope="session")
def reverse_rules():
    return load_rules(packaged_data("rules", "reverse_standard.tsv"))


@pytest.fixture(scope="session")
def adhoc_rules():
    return load_rules(packaged_data("rules", "adhoc_profile.tsv"))


@pytest.fixture(scope="session")
def seed_path():
    return packaged_data("seed_words.txt")


@pytest.fixture(scope="session")
def rule_engine():
    """Engine without corpus or models: rule mode only."""
    return Engine(EngineConfig(corpus=None))
