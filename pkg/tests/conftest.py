import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from graphqcc.graph import Graph, complete_bipartite_graph, complete_graph, cycle_graph, petersen_graph

settings.register_profile("repro", derandomize=True, deadline=None, database=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repro")

# lines printed in the terminal summary by the acceptance tests
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])


def random_valid_graph(rng: random.Random, n: int, extra: int, bipartite: bool = False) -> Graph:
    """Connected graph, min degree >= 2, roughly ``extra`` edges beyond a spanning tree."""
    if bipartite:
        color = [k % 2 for k in range(n)]
        rng.shuffle(color)
        if min(color.count(0), color.count(1)) < 2:
            color = [k % 2 for k in range(n)]
    else:
        color = None

    def allowed(a, b):
        return a != b and (color is None or color[a] != color[b])

    order = list(range(n))
    rng.shuffle(order)
    if color is not None:
        # start with one vertex of each color so every later vertex can attach
        first = order[0]
        other = next(v for v in order if color[v] != color[first])
        order.remove(other)
        order.insert(1, other)
    edges = set()
    for k in range(1, n):
        a = order[k]
        b = rng.choice([v for v in order[:k] if allowed(a, v)])
        edges.add((min(a, b), max(a, b)))
    deg = [0] * n
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    target = n - 1 + extra
    while min(deg) < 2 or len(edges) < target:
        low = [v for v in range(n) if deg[v] < 2]
        a = rng.choice(low) if low else rng.randrange(n)
        opts = [b for b in range(n) if allowed(a, b) and (min(a, b), max(a, b)) not in edges]
        if not opts:
            if not low:
                break
            continue
        b = rng.choice(opts)
        edges.add((min(a, b), max(a, b)))
        deg[a] += 1
        deg[b] += 1
    return Graph.from_edges(sorted(edges), name=f"rand{n}")


def random_rational(rng: random.Random, nonzero=True, exclude=()) -> Fraction:
    while True:
        u = Fraction(rng.randint(-12, 12), rng.randint(1, 9))
        if (u or not nonzero) and u not in exclude:
            return u


@pytest.fixture
def triangle():
    return cycle_graph(3)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def k33():
    return complete_bipartite_graph(3, 3)


@pytest.fixture
def petersen():
    return petersen_graph()
