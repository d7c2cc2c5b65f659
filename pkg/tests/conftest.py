import logging

import numpy as np
import pytest

from mixedsimplex.models.automaton import Mfsa
from mixedsimplex.models.rng import RngState
from mixedsimplex.models.simplex import FaceSet
from tests.helpers import fs


@pytest.fixture(autouse=True)
def _isolate_console_handler():
    """Drop the package console handler after each test.

    setup_logging() binds it to the current sys.stderr, which pytest's
    capture replaces (and closes) per test.
    """
    yield
    root = logging.getLogger()
    for h in list(root.handlers):
        if getattr(h, "_mixedsimplex_console", False):
            root.removeHandler(h)


@pytest.fixture
def rng() -> RngState:
    return RngState(seed=12345)


@pytest.fixture
def np_rng() -> np.random.Generator:
    return np.random.default_rng(2024)


@pytest.fixture
def example_automaton() -> Mfsa:
    """Accepts a . b . {a,b}-mixed . a over K=2 (edges {1}, {2}, {1,2}, {1})."""
    return Mfsa.boolean(
        2,
        5,
        initial=[0],
        final=[4],
        edges=[
            (0, 1, fs(2, (1,))),
            (1, 2, fs(2, (2,))),
            (2, 3, fs(2, (1, 2))),
            (3, 4, fs(2, (1,))),
        ],
    )


@pytest.fixture
def ends_with_vertex() -> Mfsa:
    """Nondeterministic K=2 automaton: strings whose last symbol is a vertex."""
    return Mfsa.boolean(
        2,
        2,
        initial=[0],
        final=[1],
        edges=[
            (0, 0, FaceSet.full(2)),
            (0, 1, FaceSet.vertices(2)),
        ],
    )
