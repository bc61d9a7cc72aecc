import itertools

import pytest

from cwcodes.core import ConstantWeightCode

GOLDEN_Q5_ROWS = [
    (1, 1, 1, 0, 0),
    (2, 2, 0, 1, 0),
    (3, 3, 0, 0, 1),
    (3, 0, 2, 2, 0),
    (4, 0, 3, 0, 2),
    (1, 0, 0, 3, 3),
    (0, 3, 3, 3, 0),
    (0, 4, 4, 0, 3),
    (0, 1, 0, 4, 4),
    (0, 0, 1, 1, 1),
]

M5_ROWS = [
    (1, 1, 1, 0, 0),
    (1, 1, 0, 1, 0),
    (1, 1, 0, 0, 1),
    (1, 0, 1, 1, 0),
    (1, 0, 1, 0, 1),
    (1, 0, 0, 1, 1),
    (0, 1, 1, 1, 0),
    (0, 1, 1, 0, 1),
    (0, 1, 0, 1, 1),
    (0, 0, 1, 1, 1),
]


@pytest.fixture
def golden_q5_code():
    return ConstantWeightCode.from_rows(GOLDEN_Q5_ROWS, n=5, q=5, w=3, d=4)


def brute_min_distance(rows):
    """Plain double loop over all pairs; no prefilter."""
    best = None
    for u, v in itertools.combinations(rows, 2):
        d = sum(a != b for a, b in zip(u, v))
        best = d if best is None else min(best, d)
    return best


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


def networkx_max_code(n, q):
    """Maximum (n,4,3)_q code size via networkx's clique solver (independent route)."""
    import networkx as nx

    words = [
        tuple(vals[supp.index(j)] if j in supp else 0 for j in range(n))
        for supp in itertools.combinations(range(n), 3)
        for vals in itertools.product(range(1, q), repeat=3)
    ]
    g = nx.Graph()
    g.add_nodes_from(range(len(words)))
    for i, j in itertools.combinations(range(len(words)), 2):
        if sum(a != b for a, b in zip(words[i], words[j])) >= 4:
            g.add_edge(i, j)
    clique, size = nx.max_weight_clique(g, weight=None)
    return size
