import itertools
import random
import sys
from fractions import Fraction
from pathlib import Path

import networkx as nx
import pytest

from entac.cost import connection_cost
from entac.network import EntangledConnection, NetworkDefaults, NetworkGraph, NodeState
from entac.profiles import EvolutionProfile, TimeWindow

SCENARIOS = Path(__file__).resolve().parent.parent / "src" / "entac" / "scenarios"
P = EvolutionProfile.constant
S = NodeState


def edge(x, y, level=1, px=(0.0, 0.0), py=(0.0, 0.0), sx=(0.9, 0.99), sy=(0.9, 0.99), **kw):
    return EntangledConnection(x, y, level, S(*sx), S(*sy), P(*px), P(*py), **kw)


def graph(edges, nodes=None, **defaults):
    if nodes is None:
        nodes = sorted({n for e in edges for n in (e.x, e.y)})
    return NetworkGraph(nodes, edges, NetworkDefaults(**defaults))


def diamond_graph():
    return graph([edge("A", "R1"), edge("R1", "B"), edge("A", "R2"), edge("R2", "B")])


def bridge_graph():
    # two triangles joined by the single connection M1-M2
    return graph([
        edge("A", "L"), edge("A", "M1"), edge("L", "M1"),
        edge("M1", "M2"),
        edge("M2", "R"), edge("M2", "B"), edge("R", "B"),
    ])


def random_graph(rng: random.Random, n_max=8):
    """Random multigraph on up to ``n_max`` nodes with random constant drifts."""
    n = rng.randint(2, n_max)
    nodes = [f"N{i}" for i in range(n)]
    edges = []
    seen = set()
    for a, b in itertools.combinations(nodes, 2):
        for level in (1, 2):
            if level == 2 and rng.random() > 0.15:
                continue
            if rng.random() < 0.45 and (a, b, level) not in seen:
                seen.add((a, b, level))
                # coarse drift grid so equal-cost ties actually occur
                px = (rng.choice([0.0, 0.001, 0.002, 0.003]), rng.choice([0.0, -0.001]))
                py = (rng.choice([0.0, 0.001]), rng.choice([0.0, 0.001, -0.002]))
                x, y = (a, b) if rng.random() < 0.5 else (b, a)
                edges.append(edge(x, y, level, px, py))
    return graph(edges, nodes)


def simple_paths(network, source, target):
    """Every simple source-target path as a list of connections (brute force)."""
    out = []

    def walk(node, visited, edges):
        if node == target:
            out.append(list(edges))
            return
        for c in network.connections:
            if node not in (c.x, c.y):
                continue
            nxt = c.y if node == c.x else c.x
            if nxt in visited:
                continue
            visited.add(nxt)
            edges.append(c)
            walk(nxt, visited, edges)
            edges.pop()
            visited.discard(nxt)

    walk(source, {source}, [])
    return out


def path_label(source, edges, window):
    nodes = [source]
    for c in edges:
        nodes.append(c.y if nodes[-1] == c.x else c.x)
    cost = sum((Fraction(connection_cost(c, window)) for c in edges), Fraction(0))
    return cost, len(edges), tuple(nodes), tuple(c.level for c in edges)


def brute_force_cheapest(network, source, target, window):
    paths = simple_paths(network, source, target)
    if not paths:
        return None
    return min(path_label(source, p, window) for p in paths)


def brute_force_max_disjoint(network, source, target, k):
    """True iff some k pairwise connection-disjoint simple paths exist."""
    paths = [frozenset(c.key for c in p) for p in simple_paths(network, source, target)]

    def search(start, used, need):
        if need == 0:
            return True
        for i in range(start, len(paths)):
            if not (paths[i] & used) and search(i + 1, used | paths[i], need - 1):
                return True
        return False

    return search(0, frozenset(), k)


@pytest.fixture
def window():
    return TimeWindow(0.0, 5.0)


def nx_supply(network, source, target):
    """Independent max-flow oracle: unit capacity per connection, both directions."""
    g = nx.DiGraph()
    g.add_nodes_from(network.nodes)
    for c in network.connections:
        for u, v in ((c.x, c.y), (c.y, c.x)):
            cap = g[u][v]["capacity"] + 1 if g.has_edge(u, v) else 1
            g.add_edge(u, v, capacity=cap)
    return int(nx.maximum_flow_value(g, source, target))


def pytest_terminal_summary(terminalreporter):
    lines = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
