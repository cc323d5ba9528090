import random

import pytest

from gridmovie.grid import GridDiagram
from gridmovie.moves import Commute, Stab, Transfer

UNKNOT = GridDiagram((0, 1), (1, 0))
TREFOIL = GridDiagram((4, 0, 1, 2, 3), (1, 2, 3, 4, 0))
HOPF_FREE = GridDiagram((1, 0, 3, 2), (0, 1, 2, 3))  # two split unknots
P_BEFORE = GridDiagram((2, 1, 0, 3), (0, 2, 3, 1))
P_AFTER = GridDiagram((2, 0, 1, 3), (0, 3, 2, 1))
R2_PAIR = GridDiagram((3, 1, 0, 2), (0, 2, 3, 1))
R3_GRID = GridDiagram((2, 1, 0, 3, 4), (1, 3, 4, 0, 2))

# a kink stabilization followed by a transfer; found by exhaustive search on 4x4 grids
TRANSFER_BASE = GridDiagram((1, 3, 2, 0), (2, 0, 1, 3))
TRANSFER_STAB = Stab("X", (0, 1), "NW")
TRANSFER = Transfer(Commute("cols", 3), Commute("rows", 3), (2, 3))


def random_diagram(rng, n_max, n_min=2):
    """Uniform pair of permutations with no coincident column."""
    n = rng.randint(n_min, n_max)
    while True:
        xs = list(range(n))
        os = list(range(n))
        rng.shuffle(xs)
        rng.shuffle(os)
        if all(x != o for x, o in zip(xs, os)):
            return GridDiagram(tuple(xs), tuple(os))


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
