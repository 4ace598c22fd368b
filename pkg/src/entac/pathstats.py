"""Analytic entanglement success probabilities for single paths and path sets.

Edge events are independent by contract: a path succeeds when every one of its
connections meets the criterion, and a path set succeeds when at least one of
its (edge-disjoint) paths does.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .density import DensityModel
from .errors import DomainError
from .network import EntangledConnection, NetworkGraph
from .paths import EntangledPath, check_disjoint
from .profiles import TimeWindow

FIDELITY_ONLY = "fidelity-only"
INTEGRATED = "integrated"
MODES = (FIDELITY_ONLY, INTEGRATED)


def cdf(density: DensityModel, bound: float) -> float:
    """Mass of ``density`` on ``[0, bound]``."""
    return density.cdf(bound)


def _probabilities(values: Iterable[float], what: str) -> list[float]:
    out = []
    for v in values:
        if not (isinstance(v, (int, float)) and 0.0 <= v <= 1.0):
            raise DomainError(f"{what} {v!r} outside [0, 1]")
        out.append(float(v))
    return out


def single_path_probability(per_edge_pass: Sequence[float]) -> float:
    return math.prod(_probabilities(per_edge_pass, "edge pass probability"))


def single_path_probability_iid(density: DensityModel, bound: float, g: int) -> float:
    if g < 0:
        raise DomainError(f"edge count must be >= 0, got {g}")
    return cdf(density, bound) ** g


def multipath_probability(per_path_probs: Sequence[float]) -> float:
    """``1 - prod(1 - p)`` over disjoint paths; 0 for an empty set."""
    probs = _probabilities(per_path_probs, "path probability")
    if len(probs) == 1:
        return probs[0]
    # log-space complement keeps tiny path probabilities from vanishing in 1 - p
    log_fail = math.fsum(math.log1p(-p) if p < 1.0 else -math.inf for p in probs)
    return -math.expm1(log_fail)


def edge_pass_probability(network: NetworkGraph, edge: EntangledConnection, mode: str) -> float:
    density = network.resolve_density(edge)
    if mode == FIDELITY_ONLY:
        return cdf(density, network.defaults.f_delta_max)
    if mode == INTEGRATED:
        return cdf(density, network.resolve_gamma_max(edge))
    raise DomainError(f"unknown mode {mode!r}; expected one of {MODES}")


def path_probability(network: NetworkGraph, path: EntangledPath, mode: str = INTEGRATED) -> float:
    return single_path_probability([edge_pass_probability(network, e, mode) for e in path.edges])


def pathset_probability(
    paths: Sequence[EntangledPath],
    network: NetworkGraph,
    window: TimeWindow,
    mode: str = INTEGRATED,
) -> float:
    """Success probability of a set of edge-disjoint paths at ``window.t1``.

    Per-edge values come from each connection's density (network default
    unless overridden) integrated up to the fidelity-distance bound or the
    resolved ``gamma_max``. The window fixes the evaluation time only; the
    analytic value does not depend on the deterministic drift.
    """
    check_disjoint(paths)
    if not paths:
        return 0.0
    return multipath_probability([path_probability(network, p, mode) for p in paths])
