"""Endpoint state evolution and the distances between endpoint views."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NumericError
from .network import EntangledConnection, NodeState
from .profiles import Drift, EvolutionProfile, PiecewiseConstant, TimeWindow
from .quadrature import DEFAULT_TOL, adaptive_simpson


@dataclass(frozen=True)
class ChiVector:
    """Accumulated drift over a window: probability and fidelity components."""

    d_prob: float
    d_fid: float


@dataclass(frozen=True)
class ClampReport:
    prob: bool = False
    fidelity: bool = False

    @property
    def any(self) -> bool:
        return self.prob or self.fidelity


def _integrate(drift: Drift, window: TimeWindow, method: str) -> float:
    a, b = window.t0, window.t1
    if window.dt == 0:
        return 0.0
    if method == "analytic":
        value = drift.integral(a, b)
    elif method == "quadrature":
        if isinstance(drift, PiecewiseConstant):
            # integrate panel by panel; each panel sees its own interior value so
            # the jump at a panel edge does not stall the refinement
            cuts = [a] + [t for t in drift.breakpoints if a < t < b] + [b]
            value = math.fsum(
                adaptive_simpson(lambda q, v=drift(0.5 * (lo + hi)): v, lo, hi, DEFAULT_TOL)
                for lo, hi in zip(cuts, cuts[1:])
            )
        else:
            value = adaptive_simpson(drift, a, b, DEFAULT_TOL)
    else:
        raise ValueError(f"unknown integration method {method!r}")
    if not math.isfinite(value):
        raise NumericError(f"{drift.kind} drift integral over [{a}, {b}] is not finite")
    return value


def chi(profile: EvolutionProfile, window: TimeWindow, method: str = "analytic") -> ChiVector:
    """Integrate both drift rates of ``profile`` over ``window``.

    ``method="quadrature"`` forces adaptive Simpson for every family; the
    default uses each family's antiderivative.
    """
    return ChiVector(
        _integrate(profile.prob, window, method),
        _integrate(profile.fidelity, window, method),
    )


def _clamp(v: float) -> tuple[float, bool]:
    if v < 0.0:
        return 0.0, True
    if v > 1.0:
        return 1.0, True
    return v, False


def evolve_state(
    state: NodeState, profile: EvolutionProfile, window: TimeWindow
) -> tuple[NodeState, ClampReport]:
    if not state.is_valid():
        raise DomainError(f"cannot evolve invalid state {state}")
    c = chi(profile, window)
    p, p_clamped = _clamp(state.prob + c.d_prob)
    f, f_clamped = _clamp(state.fidelity + c.d_fid)
    return NodeState(p, f), ClampReport(p_clamped, f_clamped)


def _unit(v: float, name: str) -> None:
    if not (math.isfinite(v) and 0.0 <= v <= 1.0):
        raise DomainError(f"{name}={v!r} outside [0, 1]")


def fidelity_distance(fx: float, fy: float) -> float:
    _unit(fx, "fx")
    _unit(fy, "fy")
    return abs(fx - fy)


def prob_distance(px: float, py: float) -> float:
    _unit(px, "px")
    _unit(py, "py")
    return abs(px - py)


def gamma(sx: NodeState, sy: NodeState) -> float:
    """Euclidean distance between two endpoint state vectors."""
    return math.hypot(sx.prob - sy.prob, sx.fidelity - sy.fidelity)


@dataclass(frozen=True)
class EvolvedConnection:
    state_x: NodeState
    state_y: NodeState
    clamp_x: ClampReport
    clamp_y: ClampReport
    gamma: float


def evolve_connection(connection: EntangledConnection, window: TimeWindow) -> EvolvedConnection:
    sx, cx = evolve_state(connection.state_x, connection.profile_x, window)
    sy, cy = evolve_state(connection.state_y, connection.profile_y, window)
    return EvolvedConnection(sx, sy, cx, cy, gamma(sx, sy))


def gamma_evolved(connection: EntangledConnection, window: TimeWindow) -> float:
    """State-vector distance of the two endpoints at ``window.t1``.

    Compare against the connection's resolved ``gamma_max``: at or below it the
    pair still counts as entangled.
    """
    return evolve_connection(connection, window).gamma
