import hypothesis.strategies as st
import pytest

from paritysim import ParityGame
from paritysim.generate import random_game, random_partial_ktree


@st.composite
def games(draw, max_n=6, max_d=4):
    n = draw(st.integers(1, max_n))
    owner = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    priority = draw(st.lists(st.integers(0, max_d), min_size=n, max_size=n))
    succ = [tuple(sorted(draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=min(n, 3)))))
            for _ in range(n)]
    return ParityGame(tuple(owner), tuple(priority), tuple(succ))


@st.composite
def ktree_games(draw, max_n=8, k=2, d=4):
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 10**6))
    return random_partial_ktree(n, k, d, seed)


@pytest.fixture
def two_cycle():
    # 0 (pri 2, Even) <-> 1 (pri 1, Odd)
    return ParityGame.from_edges([0, 1], [2, 1], [(0, 1), (1, 0)])


@pytest.fixture
def small_games():
    return [random_game(1 + seed % 6, 4, seed) for seed in range(40)]


_CRITERIA: dict[int, str] = {}


@pytest.fixture(scope="session")
def criteria():
    """Acceptance results, printed one line per criterion at the end of the run."""
    def record(number, ok, detail):
        _CRITERIA[number] = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[number])
