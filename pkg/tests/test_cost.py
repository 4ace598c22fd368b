import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from entac.cost import connection_cost, path_cost
from entac.paths import EntangledPath
from entac.profiles import Constant, EvolutionProfile, Linear, TimeWindow

from conftest import edge


def test_identical_profiles_cost_nothing():
    e = edge("A", "B", px=(0.02, -0.01), py=(0.02, -0.01))
    for w in (TimeWindow(0, 1), TimeWindow(-3, 40)):
        assert connection_cost(e, w) == 0


def test_three_four_five():
    # chi_x = (0.05, -0.01), chi_y = (0.02, 0.03) over dt = 5
    e = edge("A", "B", px=(0.01, -0.002), py=(0.004, 0.006))
    assert connection_cost(e, TimeWindow(0, 5)) == pytest.approx(0.05, abs=1e-15)


def test_empty_window_costs_nothing():
    e = edge("A", "B", px=(0.3, 0.1), py=(-0.2, 0.0))
    assert connection_cost(e, TimeWindow(2, 0)) == 0


def test_path_cost_sums_edges(window):
    e1 = edge("A", "R", px=(0.01, -0.002), py=(0.004, 0.006))
    e2 = edge("R", "B", px=(0.004, 0.006), py=(0.01, -0.002))
    assert path_cost(EntangledPath("A", "R", (e1,)), window) == connection_cost(e1, window)
    assert path_cost(EntangledPath("A", "B", (e1, e2)), window) == pytest.approx(0.10, abs=1e-15)


def test_three_edge_chain_hand_computed(window):
    # each edge is a scaled 3-4-5 triangle: gaps (0.03k, 0.04k) over dt = 5
    edges = []
    chain = ["A", "R1", "R2", "B"]
    for k, (x, y) in enumerate(zip(chain, chain[1:]), start=1):
        edges.append(edge(x, y, px=(0.006 * k, 0.0), py=(0.0, 0.008 * k)))
    expected = sum(0.05 * k for k in (1, 2, 3))
    assert path_cost(EntangledPath("A", "B", tuple(edges)), window) == pytest.approx(expected, abs=1e-14)


rates = st.floats(-0.1, 0.1)


@given(a=rates, b=rates, c=rates, d=rates, dt=st.floats(0, 20))
def test_cost_symmetric_under_endpoint_swap(a, b, c, d, dt):
    w = TimeWindow(0.0, dt)
    e = edge("A", "B", px=(a, b), py=(c, d))
    swapped = edge("B", "A", px=(c, d), py=(a, b))
    assert connection_cost(e, w) == connection_cost(swapped, w)


@given(costs=st.lists(st.tuples(rates, rates), min_size=2, max_size=8), cut=st.integers(1, 7))
def test_path_cost_additive(costs, cut):
    w = TimeWindow(0.0, 3.0)
    names = [f"N{i}" for i in range(len(costs) + 1)]
    edges = tuple(edge(x, y, px=r) for (x, y), r in zip(zip(names, names[1:]), costs))
    cut = 1 + cut % (len(edges) - 1) if len(edges) > 1 else 1
    whole = EntangledPath(names[0], names[-1], edges)
    head = EntangledPath(names[0], names[cut], edges[:cut])
    tail = EntangledPath(names[cut], names[-1], edges[cut:])
    assert head.concat(tail) == whole
    # fsum rounds once per path, so the split can differ by one ulp at most
    assert math.isclose(path_cost(whole, w), path_cost(head, w) + path_cost(tail, w),
                        rel_tol=4e-16, abs_tol=1e-18)


def test_zero_drift_network_has_zero_cost(window):
    e = edge("A", "B")
    assert connection_cost(e, window) == 0


def test_cost_uses_time_varying_profiles():
    e = edge("A", "B")
    e = type(e)(e.x, e.y, 1, e.state_x, e.state_y,
                EvolutionProfile(Linear(0, 0.002), Constant()), EvolutionProfile())
    assert connection_cost(e, TimeWindow(0, 10)) == pytest.approx(0.1, abs=1e-15)
