import pytest

from entac.errors import UnknownNodeError
from entac.network import NetworkGraph, hop_distance, neighbors, validate

from conftest import diamond_graph, edge, graph


@pytest.mark.parametrize("level, hops", [(1, 1), (2, 2), (3, 4), (4, 8)])
def test_hop_distance(level, hops):
    assert hop_distance(edge("A", "B", level)) == hops


def test_hop_distance_strictly_monotone():
    values = [hop_distance(edge("A", "B", l)) for l in range(1, 12)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_validate_clean_chain():
    net = graph([edge("A", "R"), edge("R", "B")])
    assert validate(net) == []
    assert validate(net).ok


def test_validate_dangling_endpoint():
    net = NetworkGraph(["A", "B"], [edge("A", "B"), edge("A", "Z")])
    report = validate(net)
    assert report.kinds() == ["dangling-endpoint"]
    assert "'Z'" in report[0].message


def test_validate_fidelity_out_of_range():
    net = graph([edge("A", "B", sy=(0.9, 1.3))])
    report = validate(net)
    assert report.kinds() == ["range"]
    assert "fidelity=1.3" in report[0].message and "'B'" in report[0].message


def test_validate_duplicate_triple_either_orientation():
    net = graph([edge("A", "B", 1), edge("B", "A", 1), edge("A", "B", 2)])
    assert validate(net).kinds() == ["duplicate"]


def test_validate_collects_every_violation():
    net = NetworkGraph(["A", "B"], [
        edge("A", "A"), edge("A", "B", 0), edge("A", "Q", sx=(-0.1, 0.5)),
    ])
    assert sorted(validate(net).kinds()) == ["dangling-endpoint", "level", "range", "self-loop"]


def test_neighbors_isolated():
    net = NetworkGraph(["A", "B", "C"], [edge("B", "C")])
    assert neighbors(net, "A") == []


def test_neighbors_triangle_order():
    ab, ac, bc = edge("A", "B"), edge("C", "A"), edge("B", "C")
    net = graph([bc, ac, ab])
    assert neighbors(net, "A") == [("B", ab), ("C", ac)]


def test_neighbors_parallel_levels():
    l2, l1 = edge("A", "B", 2), edge("B", "A", 1)
    net = graph([l2, l1])
    assert neighbors(net, "A") == [("B", l1), ("B", l2)]


def test_neighbors_unknown_node():
    with pytest.raises(UnknownNodeError):
        neighbors(diamond_graph(), "nope")


def test_neighbors_symmetric():
    net = diamond_graph()
    for x in net.nodes:
        for y, e in neighbors(net, x):
            assert (x, e) in neighbors(net, y)


def test_gamma_max_resolution():
    net = graph([edge("A", "B"), edge("B", "C", gamma_max=0.5)], gamma_max=0.03)
    a, b = net.connections
    assert net.resolve_gamma_max(a) == 0.03
    assert net.resolve_gamma_max(b) == 0.5
