"""Entanglement access control: disjoint path discovery and adaptation of m.

Path discovery is the centralized equivalent of the neighbour-by-neighbour
construction: repeatedly take the cheapest source-target path and remove its
connections. When that greedy pass blocks itself and returns fewer paths than
the network supports, a unit-capacity min-cost flow extracts the full set.
"""

from __future__ import annotations

import heapq
import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .cost import connection_cost, path_cost
from .dynamics import evolve_connection
from .errors import DomainError
from .network import EntangledConnection, NetworkGraph, NodeId
from .paths import EntangledPath, PathSet
from .pathstats import INTEGRATED, pathset_probability
from .profiles import TimeWindow

log = logging.getLogger(__name__)

SATISFIED = "satisfied"
SATURATED = "saturated"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class PriorityClass:
    name: str
    m_initial: int = 1
    m_max: int = 1

    def __post_init__(self):
        if not 1 <= self.m_initial <= self.m_max:
            raise DomainError(
                f"priority class {self.name!r} needs 1 <= m_initial <= m_max, "
                f"got m_initial={self.m_initial}, m_max={self.m_max}"
            )


@dataclass(frozen=True)
class UserDemand:
    user: str
    demand_id: str
    source: NodeId
    target: NodeId
    priority: PriorityClass
    pr_min: float = 0.0
    pr_max: float = 1.0

    def __post_init__(self):
        if self.source == self.target:
            raise DomainError(f"demand {self.demand_id!r}: source and target must differ")
        if not 0.0 <= self.pr_min < self.pr_max <= 1.0:
            raise DomainError(
                f"demand {self.demand_id!r}: need 0 <= pr_min < pr_max <= 1, "
                f"got pr_min={self.pr_min}, pr_max={self.pr_max}"
            )


@dataclass(frozen=True)
class AccessResult:
    user: str
    demand_id: str
    paths: PathSet
    path_costs: tuple[float, ...]
    probability: float
    m_final: int
    status: str
    supply: int = 0
    note: str = ""


# --------------------------------------------------------------------------
# eligibility and costs


def eligible_network(network: NetworkGraph, window: TimeWindow) -> NetworkGraph:
    """Drop connections whose evolved endpoint fidelity falls below ``f_crit``."""
    f_crit = network.defaults.f_crit
    if f_crit <= 0:
        return network

    def keep(c: EntangledConnection) -> bool:
        ev = evolve_connection(c, window)
        return ev.state_x.fidelity >= f_crit and ev.state_y.fidelity >= f_crit

    return network.restricted(keep)


def _cost_table(network: NetworkGraph, window: TimeWindow) -> dict[tuple, Fraction]:
    # exact rationals so that tie-breaking never depends on summation order
    return {c.key: Fraction(connection_cost(c, window)) for c in network.connections}


# --------------------------------------------------------------------------
# shortest path


def cheapest_path(
    network: NetworkGraph,
    source: NodeId,
    target: NodeId,
    cost: Callable[[EntangledConnection], Fraction],
) -> Optional[EntangledPath]:
    """Minimum-cost path, ties broken by fewer edges, then node sequence, then levels.

    Labels ``(cost, hops, nodes, levels)`` are totally ordered and extending two
    labels by the same connection preserves their order, so plain Dijkstra over
    labels returns the lexicographically smallest path.
    """
    network.require(source)
    network.require(target)
    start = (Fraction(0), 0, (source,), (), ())
    heap = [start]
    settled: set[NodeId] = set()
    while heap:
        c, hops, seq, levels, edges = heapq.heappop(heap)
        node = seq[-1]
        if node in settled:
            continue
        settled.add(node)
        if node == target:
            return EntangledPath(source, target, edges)
        for nbr, conn in network.neighbors(node):
            if nbr in settled:
                continue
            heapq.heappush(
                heap, (c + cost(conn), hops + 1, seq + (nbr,), levels + (conn.level,), edges + (conn,))
            )
    return None


def _path_key(path: EntangledPath, cost: Callable[[EntangledConnection], Fraction]):
    return (sum((cost(e) for e in path.edges), Fraction(0)), path.g, path.node_sequence, path.levels)


# --------------------------------------------------------------------------
# unit-capacity flows on the undirected multigraph
#
# Each connection i carries a signed flow f[i] in {-1, 0, 1}; positive means
# x -> y. Residual capacity is 1 - f[i] forwards and 1 + f[i] backwards.


def _residual_arcs(network: NetworkGraph, flow: list[int], index: dict[tuple, int], node: NodeId):
    for nbr, conn in network.neighbors(node):
        i = index[conn.key]
        sign = 1 if node == conn.x else -1
        if 1 - sign * flow[i] > 0:
            yield nbr, i, sign


def _max_flow(network: NetworkGraph, source: NodeId, target: NodeId, limit: int | None = None):
    index = {c.key: i for i, c in enumerate(network.connections)}
    flow = [0] * len(network.connections)
    value = 0
    while limit is None or value < limit:
        prev: dict[NodeId, tuple[NodeId, int, int]] = {source: None}
        queue = deque([source])
        while queue and target not in prev:
            u = queue.popleft()
            for v, i, sign in _residual_arcs(network, flow, index, u):
                if v not in prev:
                    prev[v] = (u, i, sign)
                    queue.append(v)
        if target not in prev:
            break
        v = target
        while v != source:
            u, i, sign = prev[v]
            flow[i] += sign
            v = u
        value += 1
    return value, flow


def max_disjoint_supply(network: NetworkGraph, source: NodeId, target: NodeId) -> int:
    """Maximum number of connection-disjoint source-target paths."""
    network.require(source)
    network.require(target)
    if source == target:
        raise DomainError("source and target must differ")
    return _max_flow(network, source, target)[0]


def _min_cost_flow(
    network: NetworkGraph,
    source: NodeId,
    target: NodeId,
    k: int,
    cost: Callable[[EntangledConnection], Fraction],
) -> list[int]:
    """Successive shortest augmenting paths (Bellman-Ford on the residual graph)."""
    conns = network.connections
    index = {c.key: i for i, c in enumerate(conns)}
    flow = [0] * len(conns)
    nodes = network.nodes
    for _ in range(k):
        dist: dict[NodeId, tuple[Fraction, int]] = {source: (Fraction(0), 0)}
        prev: dict[NodeId, tuple[NodeId, int, int]] = {}
        for _round in range(len(nodes)):
            changed = False
            for u in nodes:
                if u not in dist:
                    continue
                du, hu = dist[u]
                for v, i, sign in _residual_arcs(network, flow, index, u):
                    # cancelling existing flow refunds its cost
                    step = cost(conns[i]) if sign * flow[i] >= 0 else -cost(conns[i])
                    cand = (du + step, hu + 1)
                    if v not in dist or cand < dist[v]:
                        dist[v] = cand
                        prev[v] = (u, i, sign)
                        changed = True
            if not changed:
                break
        if target not in dist:
            break
        v, guard = target, 0
        while v != source:
            u, i, sign = prev[v]
            flow[i] += sign
            v = u
            guard += 1
            if guard > len(conns):
                raise RuntimeError("negative cycle in residual graph")
    return flow


def _decompose(network: NetworkGraph, flow: list[int], source: NodeId, target: NodeId):
    out_arcs: dict[NodeId, list[tuple[NodeId, int, EntangledConnection]]] = {}
    for i, (c, f) in enumerate(zip(network.connections, flow)):
        if f == 0:
            continue
        u, v = (c.x, c.y) if f > 0 else (c.y, c.x)
        out_arcs.setdefault(u, []).append((v, c.level, c))
    for arcs in out_arcs.values():
        arcs.sort(key=lambda a: (a[0], a[1]))
    paths = []
    while out_arcs.get(source):
        nodes, edges = [source], []
        while nodes[-1] != target:
            v, _, c = out_arcs[nodes[-1]].pop(0)
            if v in nodes:
                # drop the zero-net cycle we just closed
                cut = nodes.index(v)
                del nodes[cut + 1:]
                del edges[cut:]
                continue
            nodes.append(v)
            edges.append(c)
        paths.append(EntangledPath(source, target, edges))
    return paths


# --------------------------------------------------------------------------
# Algorithm steps


def find_disjoint_paths(
    network: NetworkGraph,
    source: NodeId,
    target: NodeId,
    m: int,
    window: TimeWindow,
) -> tuple[PathSet, list[float]]:
    """Up to ``m`` connection-disjoint paths, cheapest first, with their costs.

    Connections failing the fidelity floor at the end of the window are not
    used. Returns ``min(m, supply)`` paths; an unreachable target yields an
    empty set.
    """
    network.require(source)
    network.require(target)
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    usable = eligible_network(network, window)
    table = _cost_table(usable, window)
    cost = lambda c: table[c.key]  # noqa: E731
    want = min(m, max_disjoint_supply(usable, source, target))

    found: list[EntangledPath] = []
    residual = usable
    while len(found) < want:
        p = cheapest_path(residual, source, target, cost)
        if p is None:
            break
        found.append(p)
        residual = residual.without(p.edges)

    if len(found) < want:
        log.debug("greedy found %d of %d paths %s->%s; using min-cost flow",
                  len(found), want, source, target)
        flow = _min_cost_flow(usable, source, target, want, cost)
        found = sorted(_decompose(usable, flow, source, target), key=lambda p: _path_key(p, cost))

    paths = PathSet(found)
    return paths, [path_cost(p, window) for p in paths]


def evaluate_access(paths: Sequence[EntangledPath], network: NetworkGraph, window: TimeWindow) -> float:
    return pathset_probability(paths, network, window, INTEGRATED)


def adapt_m(current_m: int, probability: float, demand: UserDemand) -> int:
    if current_m < 1:
        raise DomainError(f"m must be >= 1, got {current_m}")
    if probability < demand.pr_min:
        return current_m + 1
    if probability >= demand.pr_max:
        return max(current_m - 1, 1)
    return current_m


def _solve(network: NetworkGraph, demand: UserDemand, window: TimeWindow) -> AccessResult:
    network.require(demand.source)
    network.require(demand.target)
    supply = max_disjoint_supply(eligible_network(network, window), demand.source, demand.target)
    if supply == 0:
        return AccessResult(demand.user, demand.demand_id, PathSet(), (), 0.0, 0,
                            INFEASIBLE, supply, "no eligible path")

    cap = min(demand.priority.m_max, supply)
    m = min(demand.priority.m_initial, cap)
    notes = []
    if demand.priority.m_initial > supply:
        notes.append(f"m_initial={demand.priority.m_initial} exceeds supply={supply}")

    tried: dict[int, tuple[PathSet, list[float], float]] = {}
    while True:
        paths, costs = find_disjoint_paths(network, demand.source, demand.target, m, window)
        prob = evaluate_access(paths, network, window)
        tried[m] = (paths, costs, prob)
        nxt = adapt_m(m, prob, demand)
        if nxt == m:
            status = SATISFIED
            break
        if nxt > cap:
            status = SATURATED
            bound = "m_max" if cap == demand.priority.m_max else "supply"
            notes.append(f"pr_min not reached at {bound} limit m={m}")
            break
        if nxt in tried:
            lo, m = sorted((m, nxt))
            paths, costs, prob = tried[m]
            status = SATISFIED
            notes.append(f"m oscillates between {lo} and {m}; kept {m}")
            break
        m = nxt
    return AccessResult(demand.user, demand.demand_id, paths, tuple(costs), prob, len(paths),
                        status, supply, "; ".join(notes))


def run_access_control(
    network: NetworkGraph,
    demands: Sequence[UserDemand],
    window: TimeWindow,
    workers: int = 1,
) -> list[AccessResult]:
    """Solve every demand independently against the same snapshot.

    Results come back in input order whatever ``workers`` is.
    """
    if workers <= 1 or len(demands) <= 1:
        return [_solve(network, d, window) for d in demands]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda d: _solve(network, d, window), demands))
