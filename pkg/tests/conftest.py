import json
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures" / "reference_values.json"


@pytest.fixture(scope="session")
def reference():
    """Frozen oracle values, keyed by name; each has value, uncertainty, provenance."""
    with open(FIXTURES) as fh:
        data = json.load(fh)
    assert data["schema_version"] == 1
    return data["values"]
