"""Shared builders for the test suite."""

import pytest

from stablecurves.projline import ProjPoint, pp
from stablecurves.trees import make_decorated, make_tree, one_vertex_tree


@pytest.fixture
def smooth5():
    """One component, markings 1..5 at (0, 1, inf, 2, 3)."""
    return one_vertex_tree({1: pp(0), 2: pp(1), 3: pp("inf"), 4: pp(2), 5: pp(3)})


@pytest.fixture
def two_vertex_23():
    """Markings {1,2} | {3,4,5} joined at one node, fully decorated."""
    return make_decorated(
        [
            {1: pp(0), 2: pp(1)},
            {3: pp(0), 4: pp(1), 5: pp("inf")},
        ],
        [(0, 1, pp("inf"), pp(7))],
    )


@pytest.fixture
def bare_two_vertex_23():
    return make_tree([{1, 2}, {3, 4, 5}], [(0, 1)])


@pytest.fixture
def bare_two_vertex_22():
    return make_tree([{1, 2}, {3, 4}], [(0, 1)])
