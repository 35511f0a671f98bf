import numpy as np
import pytest

from ratio_shapley.games import new_game, sqrt_demo_game


@pytest.fixture
def g2():
    return new_game(2, [0, 1, 2, 4])


@pytest.fixture
def sqrt7():
    return sqrt_demo_game()


@pytest.fixture
def zero3():
    return new_game(3, np.zeros(8))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
