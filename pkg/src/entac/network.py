"""Entangled network model: nodes, leveled connections, endpoint states."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .density import DensityModel, Exponential
from .errors import UnknownNodeError
from .profiles import ZERO_DRIFT, EvolutionProfile

NodeId = str


@dataclass(frozen=True)
class NodeState:
    """Connection probability and fidelity as seen from one endpoint.

    Construction does not range-check; :func:`validate` reports violations so a
    malformed scenario can be described in full instead of failing on the first.
    """

    prob: float
    fidelity: float

    def is_valid(self) -> bool:
        return all(math.isfinite(v) and 0.0 <= v <= 1.0 for v in (self.prob, self.fidelity))

    def to_dict(self) -> dict:
        return {"prob": float(self.prob), "fidelity": float(self.fidelity)}


@dataclass(frozen=True)
class EntangledConnection:
    x: NodeId
    y: NodeId
    level: int = 1
    state_x: NodeState = NodeState(1.0, 1.0)
    state_y: NodeState = NodeState(1.0, 1.0)
    profile_x: EvolutionProfile = ZERO_DRIFT
    profile_y: EvolutionProfile = ZERO_DRIFT
    gamma_max: Optional[float] = None
    density: Optional[DensityModel] = None

    @property
    def key(self) -> tuple[NodeId, NodeId, int]:
        """Undirected identity: sorted endpoint pair plus level."""
        a, b = sorted((self.x, self.y))
        return a, b, self.level

    @property
    def label(self) -> str:
        return f"{self.x}~{self.y}@L{self.level}"

    def other(self, node: NodeId) -> NodeId:
        if node == self.x:
            return self.y
        if node == self.y:
            return self.x
        raise UnknownNodeError(node)

    def oriented(self, node: NodeId) -> tuple[NodeState, EvolutionProfile]:
        """State and profile held at ``node``'s end of this connection."""
        if node == self.x:
            return self.state_x, self.profile_x
        if node == self.y:
            return self.state_y, self.profile_y
        raise UnknownNodeError(node)


@dataclass(frozen=True)
class NetworkDefaults:
    gamma_max: float = 0.02
    f_crit: float = 0.0
    f_delta_max: float = 0.02
    density: DensityModel = field(default_factory=lambda: Exponential(100.0))


@dataclass(frozen=True)
class Violation:
    kind: str  # dangling-endpoint | range | duplicate | self-loop | level | ...
    subject: str
    message: str

    def __str__(self):
        return f"{self.kind}: {self.subject}: {self.message}"


class ValidationReport(list):
    """List of :class:`Violation`; empty means well-formed."""

    @property
    def ok(self) -> bool:
        return not self

    def kinds(self) -> list[str]:
        return [v.kind for v in self]


class NetworkGraph:
    """Immutable snapshot of nodes and entangled connections.

    Construction never raises on bad data; call :func:`validate` to get the
    list of problems. Lookups on unknown nodes raise :class:`UnknownNodeError`.
    """

    def __init__(
        self,
        nodes: Iterable[NodeId],
        connections: Iterable[EntangledConnection] = (),
        defaults: NetworkDefaults | None = None,
    ):
        self._nodes = tuple(dict.fromkeys(nodes))
        self._node_set = frozenset(self._nodes)
        self._connections = tuple(connections)
        self.defaults = defaults or NetworkDefaults()
        incident: dict[NodeId, list[tuple[NodeId, EntangledConnection]]] = {
            n: [] for n in self._nodes
        }
        for c in self._connections:
            if c.x in incident:
                incident[c.x].append((c.y, c))
            if c.y in incident and c.y != c.x:
                incident[c.y].append((c.x, c))
        for lst in incident.values():
            lst.sort(key=lambda pair: (pair[0], pair[1].level))
        self._incident = {n: tuple(v) for n, v in incident.items()}

    @property
    def nodes(self) -> tuple[NodeId, ...]:
        return self._nodes

    @property
    def connections(self) -> tuple[EntangledConnection, ...]:
        return self._connections

    def __contains__(self, node: object) -> bool:
        return node in self._node_set

    def require(self, node: NodeId) -> None:
        if node not in self._node_set:
            raise UnknownNodeError(node)

    def neighbors(self, node: NodeId) -> list[tuple[NodeId, EntangledConnection]]:
        self.require(node)
        return list(self._incident[node])

    def without(self, removed: Iterable[EntangledConnection]) -> "NetworkGraph":
        """New snapshot with the given connections dropped (matched by key)."""
        gone = {c.key for c in removed}
        return NetworkGraph(
            self._nodes, [c for c in self._connections if c.key not in gone], self.defaults
        )

    def restricted(self, keep) -> "NetworkGraph":
        return NetworkGraph(self._nodes, [c for c in self._connections if keep(c)], self.defaults)

    def resolve_gamma_max(self, c: EntangledConnection) -> float:
        return self.defaults.gamma_max if c.gamma_max is None else c.gamma_max

    def resolve_density(self, c: EntangledConnection) -> DensityModel:
        return self.defaults.density if c.density is None else c.density

    def __eq__(self, other):
        return (
            isinstance(other, NetworkGraph)
            and self._nodes == other._nodes
            and self._connections == other._connections
            and self.defaults == other.defaults
        )

    def __repr__(self):
        return f"NetworkGraph({len(self._nodes)} nodes, {len(self._connections)} connections)"


def hop_distance(connection: EntangledConnection) -> int:
    """Physical hops spanned by a level-``l`` connection: ``2**(l-1)``."""
    return 2 ** (connection.level - 1)


def neighbors(network: NetworkGraph, node: NodeId) -> list[tuple[NodeId, EntangledConnection]]:
    return network.neighbors(node)


def _in_unit(v: float) -> bool:
    return isinstance(v, (int, float)) and math.isfinite(v) and 0.0 <= v <= 1.0


def validate(network: NetworkGraph) -> ValidationReport:
    report = ValidationReport()
    for n in network.nodes:
        if not isinstance(n, str) or not n:
            report.append(Violation("node-id", repr(n), "node id must be a non-empty string"))
    seen: dict[tuple, int] = {}
    for i, c in enumerate(network.connections):
        subject = f"connection[{i}] {c.label}"
        for end in (c.x, c.y):
            if end not in network:
                report.append(Violation("dangling-endpoint", subject, f"unknown node {end!r}"))
        if c.x == c.y:
            report.append(Violation("self-loop", subject, "endpoints must differ"))
        if not isinstance(c.level, int) or c.level < 1:
            report.append(Violation("level", subject, f"level must be an integer >= 1, got {c.level!r}"))
        for end, st in ((c.x, c.state_x), (c.y, c.state_y)):
            for name in ("prob", "fidelity"):
                v = getattr(st, name)
                if not _in_unit(v):
                    report.append(Violation(
                        "range", subject, f"state at {end!r}: {name}={v!r} outside [0, 1]"
                    ))
        if c.gamma_max is not None and not (math.isfinite(c.gamma_max) and c.gamma_max >= 0):
            report.append(Violation("range", subject, f"gamma_max={c.gamma_max!r} must be >= 0"))
        if c.key in seen:
            report.append(Violation(
                "duplicate", subject, f"same endpoints and level as connection[{seen[c.key]}]"
            ))
        else:
            seen[c.key] = i
    d = network.defaults
    if not (math.isfinite(d.gamma_max) and d.gamma_max >= 0):
        report.append(Violation("range", "defaults", f"gamma_max={d.gamma_max!r} must be >= 0"))
    if not _in_unit(d.f_crit):
        report.append(Violation("range", "defaults", f"f_crit={d.f_crit!r} outside [0, 1]"))
    if not _in_unit(d.f_delta_max):
        report.append(Violation("range", "defaults", f"f_delta_max={d.f_delta_max!r} outside [0, 1]"))
    return report
