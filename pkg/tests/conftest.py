import pytest

from qkdroute.network import validate_network
from qkdroute.planning import Contract

EXAMPLE_EDGES = [
    ("Q1", "Q2", 2),
    ("Q1", "Q3", 2),
    ("Q2", "Q1", 1),
    ("Q2", "Q3", 3),
    ("Q3", "Q1", 3),
    ("Q3", "Q2", 2),
]


@pytest.fixture
def example_net():
    return validate_network(["Q1", "Q2", "Q3"], EXAMPLE_EDGES)


@pytest.fixture
def example_contracts():
    # the malformed 5-tuple in the source is read as (Q2, Q1, 3, 10)
    return [Contract("Q1", "Q2", 2, 1), Contract("Q2", "Q1", 3, 10), Contract("Q2", "Q3", 2, 100)]
