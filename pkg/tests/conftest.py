import pytest

from locxtract.gazetteer import Gazetteer, GazetteerEntry, Level, load_gazetteer
from locxtract.gazetteer import bundled_burkina_path
from locxtract.pipeline import PipelineConfig
from locxtract.recognizer import FuzzyIndex


def make_gazetteer(*names: str, aliases: dict = None) -> Gazetteer:
    """Gazetteer from bare names; aliases maps canonical -> list of aliases."""
    aliases = aliases or {}
    entries = [
        GazetteerEntry(name, Level.UNKNOWN, aliases=tuple(aliases.get(name, ())))
        for name in names
    ]
    return Gazetteer(entries)


@pytest.fixture(scope="session")
def burkina():
    gazetteer, errors = load_gazetteer(bundled_burkina_path())
    assert not errors
    return gazetteer


@pytest.fixture(scope="session")
def burkina_index(burkina):
    return FuzzyIndex(burkina)


@pytest.fixture(scope="session")
def default_cfg():
    return PipelineConfig()
