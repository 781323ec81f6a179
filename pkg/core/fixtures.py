"""Registry of the Turtle datasets shipped under fixtures/."""
import os
from dataclasses import dataclass
from typing import Tuple

from core.errors import UnknownFixtureError
from core.turtle import load_turtle

FIXTURE_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")


@dataclass(frozen=True)
class Fixture:
    name: str
    path: str
    description: str
    expected_conforms: bool
    # Finding codes validation must produce, and nothing else
    expected_codes: Tuple[str, ...] = ()


def _fixture(name, description, expected_conforms=True, expected_codes=()):
    return Fixture(name, os.path.join(FIXTURE_DIR, f"{name}.ttl"), description, expected_conforms,
                   tuple(expected_codes))


FIXTURES = {
    f.name: f for f in (
        _fixture("wop", "Workshop on Ontology Design and Patterns: three editions, factors, current name"),
        _fixture("wop-described", "WOP with the description layer (topic/chair concepts, series description)"),
        _fixture("arctic-tern", "Annual Arctic tern migration with its north-south and south-north sub-series"),
        _fixture("cross-series-bad", "Member of one series linked as next to a member of another",
                 False, ["RSS-CROSS-SERIES"]),
        _fixture("zero-members", "Series that was never instantiated"),
        _fixture("sequence-bad", "Numbering gap, misplaced last flag, cycle and branching",
                 False, ["RSS-IMMEDIATE-BRANCH", "RSS-SEQ-CYCLE", "RSS-SEQ-LAST", "RSS-SEQ-ORDER"]),
    )
}


def get_fixture(name):
    if name not in FIXTURES:
        raise UnknownFixtureError(f"Unknown fixture {name!r}; choose from {', '.join(sorted(FIXTURES))}")
    return FIXTURES[name]


def load_fixture(name):
    """Parse the named fixture into a Graph."""
    return load_turtle(get_fixture(name).path)
