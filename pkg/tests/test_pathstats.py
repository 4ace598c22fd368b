import math

import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from entac.density import Exponential, Tabulated, TruncatedNormal, Uniform, density_from_dict
from entac.errors import ContractError, DomainError
from entac.paths import EntangledPath, PathSet
from entac.pathstats import (
    FIDELITY_ONLY,
    INTEGRATED,
    cdf,
    multipath_probability,
    path_probability,
    pathset_probability,
    single_path_probability,
    single_path_probability_iid,
)
from entac.profiles import TimeWindow

from conftest import edge, graph

DENSITIES = [
    Exponential(100.0),
    Uniform(0.0, 0.05),
    Uniform(0.01, 0.03),
    TruncatedNormal(0.01, 0.008, 0.0, 0.05),
    Tabulated([[0.0, 2.0], [0.01, 5.0], [0.03, 1.0], [0.06, 0.0]]),
]


# -- cdf


@pytest.mark.parametrize("d", DENSITIES, ids=lambda d: d.kind)
def test_cdf_zero_bound(d):
    assert cdf(d, 0.0) == 0.0


def test_cdf_uniform_proportional():
    assert cdf(Uniform(0, 0.05), 0.02) == pytest.approx(0.4, abs=1e-15)


def test_cdf_exponential_closed_form_vs_quadrature():
    expected = quad(lambda z: 100 * math.exp(-100 * z), 0, 0.02, epsabs=1e-14)[0]
    assert expected == pytest.approx(1 - math.exp(-2), abs=1e-14)
    assert cdf(Exponential(100), 0.02) == pytest.approx(expected, abs=1e-12)
    assert cdf(Exponential(100), 0.02) == pytest.approx(0.864665, abs=1e-6)


@pytest.mark.parametrize("lam", [50, 100, 200])
@pytest.mark.parametrize("bound", [0.005, 0.02, 0.05])
def test_exponential_closed_form_agrees_with_quadrature(lam, bound):
    d = Exponential(lam)
    oracle = quad(d.pdf, 0, bound, epsabs=1e-14)[0]
    assert abs(cdf(d, bound) - oracle) <= 1e-9


@pytest.mark.parametrize("d", DENSITIES[3:], ids=lambda d: d.kind)
@pytest.mark.parametrize("bound", [0.004, 0.01, 0.0237, 0.049])
def test_numeric_cdfs_match_scipy(d, bound):
    lo, hi = d.support
    pts = [z for z, _ in getattr(d, "points", []) if lo < z < min(bound, hi)] or None
    oracle = quad(d.pdf, lo, min(bound, hi), points=pts, epsabs=1e-13)[0]
    assert cdf(d, bound) == pytest.approx(oracle, abs=1e-9)


@pytest.mark.parametrize("d", DENSITIES, ids=lambda d: d.kind)
def test_cdf_monotone_and_reaches_one(d):
    hi = d.support[1] if math.isfinite(d.support[1]) else 1.0
    grid = [hi * k / 50 for k in range(51)]
    values = [cdf(d, b) for b in grid]
    assert all(b >= a for a, b in zip(values, values[1:]))
    assert values[-1] == pytest.approx(1.0, abs=1e-6)


def test_tabulated_renormalized():
    d = Tabulated([[0.0, 10.0], [1.0, 10.0]])
    assert d.pdf(0.5) == pytest.approx(1.0)
    assert cdf(d, 0.25) == pytest.approx(0.25, abs=1e-12)
    assert d.to_dict()["points"] == [[0.0, 10.0], [1.0, 10.0]]


def test_truncated_normal_integrates_to_one():
    d = DENSITIES[3]
    assert quad(d.pdf, *d.support, epsabs=1e-12)[0] == pytest.approx(1.0, abs=1e-6)


def test_cdf_negative_bound():
    with pytest.raises(DomainError):
        cdf(Exponential(10), -0.1)


@pytest.mark.parametrize("doc", [
    {"kind": "exponential", "lambda": -1},
    {"kind": "uniform", "a": 0.2, "b": 0.1},
    {"kind": "tabulated", "points": [[0.1, 1.0]]},
    {"kind": "gamma", "k": 2},
    {"kind": "exponential"},
])
def test_bad_density_documents(doc):
    with pytest.raises(DomainError):
        density_from_dict(doc)


@pytest.mark.parametrize("d", DENSITIES, ids=lambda d: d.kind)
def test_density_round_trip(d):
    assert density_from_dict(d.to_dict()) == d


# -- single / multipath


def test_single_path_examples():
    assert single_path_probability([]) == 1.0
    assert single_path_probability([0.5, 0.5]) == 0.25
    per_edge = 0.4171 ** (1 / 10)
    assert per_edge == pytest.approx(0.916271, abs=1e-6)
    assert single_path_probability([per_edge] * 10) == pytest.approx(0.4171, abs=1e-4)
    with pytest.raises(DomainError):
        single_path_probability([0.5, 1.5])


def test_single_path_iid_examples():
    d = Exponential(200)
    assert single_path_probability_iid(d, 0.02, 0) == 1.0
    oracle = quad(d.pdf, 0, 0.02, epsabs=1e-14)[0]
    assert single_path_probability_iid(d, 0.02, 1) == pytest.approx(oracle, abs=1e-12)
    assert single_path_probability_iid(d, 0.02, 1) == pytest.approx(0.981684, abs=1e-6)
    repeated = 1.0
    for _ in range(10):
        repeated *= oracle
    assert single_path_probability_iid(d, 0.02, 10) == pytest.approx(repeated, abs=1e-12)
    # (1 - e^-4)^10 = 0.8312252...
    assert single_path_probability_iid(d, 0.02, 10) == pytest.approx(0.831225, abs=1e-6)


def test_multipath_examples():
    assert multipath_probability([0.37]) == 0.37
    assert multipath_probability([0.5, 0.5]) == 0.75
    assert multipath_probability([0.4171] * 5) == pytest.approx(1 - 0.5829 ** 5, abs=1e-12)
    # 1 - 0.5829^5 = 0.9327069...
    assert multipath_probability([0.4171] * 5) == pytest.approx(0.932707, abs=1e-6)
    with pytest.raises(DomainError):
        multipath_probability([-0.1])


unit = st.floats(0, 1)


@given(ps=st.lists(unit, min_size=1, max_size=8), i=st.integers(0, 7), bump=unit, extra=unit)
def test_multipath_monotone(ps, i, bump, extra):
    base = multipath_probability(ps)
    i %= len(ps)
    raised = list(ps)
    raised[i] = max(raised[i], bump)
    assert multipath_probability(raised) >= base
    assert multipath_probability(ps + [extra]) >= base


@given(p=unit, m=st.integers(1, 20))
def test_multipath_identical_copies(p, m):
    assert abs(multipath_probability([p] * m) - (1 - (1 - p) ** m)) <= 1e-12


@given(p=st.floats(0, 0.999), g=st.integers(0, 30))
def test_single_path_nonincreasing_in_g(p, g):
    assert single_path_probability([p] * (g + 1)) <= single_path_probability([p] * g)


# -- path sets


def _path(source, target, edges):
    return EntangledPath(source, target, tuple(edges))


def test_pathset_certain_edges(window):
    net = graph([edge("A", "R"), edge("R", "B")], density=Uniform(0, 0.01), gamma_max=0.02)
    p = _path("A", "B", net.connections)
    assert pathset_probability(PathSet([p]), net, window) == 1.0


def test_pathset_two_single_edge_paths(window):
    e1 = edge("A", "B", 1, density=Uniform(0, 0.02 / 0.9))
    e2 = edge("A", "B", 2, density=Uniform(0, 0.02 / 0.8))
    net = graph([e1, e2], gamma_max=0.02)
    paths = [_path("A", "B", [e1]), _path("A", "B", [e2])]
    assert pathset_probability(paths, net, window) == pytest.approx(0.98, abs=1e-12)


def test_pathset_is_composition(window):
    # fig3-like: 5 disjoint 10-edge chains
    lam = -math.log1p(-(0.4171 ** 0.1)) / 0.02
    edges, paths = [], []
    for k in range(5):
        chain = ["A"] + [f"R{k}{j}" for j in range(9)] + ["B"]
        es = [edge(x, y) for x, y in zip(chain, chain[1:])]
        edges += es
        paths.append(_path("A", "B", es))
    net = graph(edges, density=Exponential(lam), gamma_max=0.02, f_delta_max=0.02)
    per_path = [single_path_probability([cdf(Exponential(lam), 0.02)] * p.g) for p in paths]
    for mode in (INTEGRATED, FIDELITY_ONLY):
        assert pathset_probability(paths, net, window, mode) == multipath_probability(per_path)
    assert per_path[0] == pytest.approx(0.4171, abs=1e-4)


def test_pathset_rejects_shared_edges(window):
    e = edge("A", "B")
    net = graph([e])
    with pytest.raises(ContractError):
        pathset_probability([_path("A", "B", [e]), _path("A", "B", [e])], net, window)
    with pytest.raises(ContractError):
        PathSet([_path("A", "B", [e]), _path("A", "B", [e])])


def test_pathset_empty(window):
    assert pathset_probability([], graph([edge("A", "B")]), window) == 0.0


def test_modes_use_their_own_bound():
    e = edge("A", "B", gamma_max=0.04)
    net = graph([e], density=Uniform(0, 0.1), f_delta_max=0.02, gamma_max=0.01)
    p = _path("A", "B", [e])
    assert path_probability(net, p, FIDELITY_ONLY) == pytest.approx(0.2)
    assert path_probability(net, p, INTEGRATED) == pytest.approx(0.4)
