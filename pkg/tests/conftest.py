from __future__ import annotations

import pytest

from lap_perturb.examples_data import example_graph


@pytest.fixture(scope="session")
def e1():
    return example_graph("e1")


@pytest.fixture(scope="session")
def e2():
    return example_graph("e2")


@pytest.fixture(scope="session")
def e3():
    return example_graph("e3")
