import json
import os

import pytest

from table_ideals.tables import generalised_from_json, table_from_json

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def load_fixture(name: str):
    with open(os.path.join(FIXTURES, name), "r", encoding="utf-8") as f:
        return json.load(f)


@pytest.fixture(scope="session")
def equivalent_tables():
    raw = load_fixture("equivalent_tables.json")
    return {
        "T_1": table_from_json(raw["T_1"]),
        "T_2": table_from_json(raw["T_2"]),
        "T_3": table_from_json(raw["T_3"]),
        "ideal": raw["ideal"],
        "union_of_tables": generalised_from_json(raw["union_of_tables"]),
    }


@pytest.fixture(scope="session")
def worked_examples():
    return load_fixture("worked_examples.json")


@pytest.fixture
def one_three_table():
    """The (1,3)-table generating (x1^4, x2^3, x3^3, x1x2, x1x3)."""
    return table_from_json({"labels": [0, 1, 2], "entries": [[4, 3, 3], [3, 2, 2]]})
