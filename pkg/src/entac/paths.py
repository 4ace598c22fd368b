"""Entangled paths and edge-disjoint path sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import ContractError
from .network import EntangledConnection, NodeId


@dataclass(frozen=True)
class EntangledPath:
    source: NodeId
    target: NodeId
    edges: tuple[EntangledConnection, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        self.node_sequence  # raises on a broken chain

    @property
    def g(self) -> int:
        return len(self.edges)

    @property
    def node_sequence(self) -> tuple[NodeId, ...]:
        seq = [self.source]
        for e in self.edges:
            cur = seq[-1]
            if cur == e.x:
                seq.append(e.y)
            elif cur == e.y:
                seq.append(e.x)
            else:
                raise ContractError(f"edge {e.label} does not continue path at {cur!r}")
        if seq[-1] != self.target:
            raise ContractError(f"path ends at {seq[-1]!r}, expected {self.target!r}")
        return tuple(seq)

    @property
    def levels(self) -> tuple[int, ...]:
        return tuple(e.level for e in self.edges)

    def concat(self, other: "EntangledPath") -> "EntangledPath":
        if other.source != self.target:
            raise ContractError("paths do not meet")
        return EntangledPath(self.source, other.target, self.edges + other.edges)


class PathSet(tuple):
    """Tuple of :class:`EntangledPath` with no connection shared between paths."""

    def __new__(cls, paths: Iterable[EntangledPath] = ()):
        self = super().__new__(cls, paths)
        check_disjoint(self)
        return self

    @property
    def m(self) -> int:
        return len(self)


def check_disjoint(paths: Iterable[EntangledPath]) -> None:
    owner: dict[tuple, int] = {}
    for i, p in enumerate(paths):
        for e in p.edges:
            if e.key in owner and owner[e.key] != i:
                raise ContractError(
                    f"connection {e.label} shared by paths {owner[e.key]} and {i}"
                )
            owner[e.key] = i
