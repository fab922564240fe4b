import pytest

from catalog import NAMED, recording, round_trips, unique


@pytest.fixture(scope="session", autouse=True)
def every_diagram_round_trips():
    """Every diagram built anywhere in the run must survive serialize/parse."""
    with recording() as seen:
        yield
    pending = unique(list(NAMED.values()) + seen)
    bad = [d for d in pending if not round_trips(d)]
    assert not bad, f"{len(bad)} diagrams fail to round-trip, first: {bad[0]}"
