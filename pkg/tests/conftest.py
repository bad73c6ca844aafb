import random

import pytest
from hypothesis import strategies as st

from itsp.instances import metric_closure
from itsp.temperature import Instance, ProfileKind, ProfilePair


def random_instance(
    rng: random.Random,
    n: int | None = None,
    p_range=(1, 6),
    d_range=(1, 10),
    profile: ProfileKind | str | None = None,
    B=None,
) -> Instance:
    n = n if n is not None else rng.randint(1, 6)
    kind = ProfileKind(profile) if profile is not None else rng.choice(list(ProfileKind))
    p = [rng.randint(*p_range) for _ in range(n)]
    d = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d[i][j] = d[j][i] = rng.randint(*d_range)
    if B is None:
        B = {
            ProfileKind.LINEAR: rng.randint(1, 6),
            ProfileKind.QUADRATIC: rng.randint(1, 30),
            ProfileKind.EXPONENTIAL: rng.randint(3, 60),
        }[kind]
    return Instance(p, metric_closure(d), B, ProfilePair.same(kind))


@st.composite
def instances(draw, max_n=6, max_p=8):
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    n = draw(st.integers(min_value=1, max_value=max_n))
    return random_instance(random.Random(seed), n=n, p_range=(1, max_p))


@pytest.fixture
def worked_network():
    """Three jobs p=(5,6,2), Linear, B=3; distances are placeholders."""
    d = [[0, 4, 5], [4, 0, 3], [5, 3, 0]]
    return Instance([5, 6, 2], d, 3, ProfilePair.same("L"))


# PASS/FAIL lines from the acceptance suite, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
