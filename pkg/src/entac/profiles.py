"""Drift-rate families for node state evolution.

Each family is a deterministic real function of time with a closed-form
antiderivative.  An :class:`EvolutionProfile` pairs one drift for the
connection probability with one for the fidelity.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Any, Union

from .errors import DomainError, NumericError


@dataclass(frozen=True)
class TimeWindow:
    t0: float = 0.0
    dt: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.t0) and math.isfinite(self.dt)):
            raise DomainError("time window bounds must be finite")
        if self.dt < 0:
            raise DomainError(f"window length must be >= 0, got {self.dt}")

    @property
    def t1(self) -> float:
        return self.t0 + self.dt

    def split(self, a: float) -> tuple["TimeWindow", "TimeWindow"]:
        """Cut the window ``a`` time-units after its start."""
        if not 0 <= a <= self.dt:
            raise DomainError(f"split point {a} outside [0, {self.dt}]")
        return TimeWindow(self.t0, a), TimeWindow(self.t0 + a, self.dt - a)


def _finite(x: float, what: str) -> float:
    if not math.isfinite(x):
        raise NumericError(f"{what} is not finite")
    return x


@dataclass(frozen=True)
class Constant:
    value: float = 0.0

    kind = "constant"

    def __call__(self, q: float) -> float:
        return self.value

    def integral(self, a: float, b: float) -> float:
        return self.value * (b - a)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "value": float(self.value)}


@dataclass(frozen=True)
class Linear:
    """``intercept + slope * q``."""

    intercept: float = 0.0
    slope: float = 0.0

    kind = "linear"

    def __call__(self, q: float) -> float:
        return self.intercept + self.slope * q

    def integral(self, a: float, b: float) -> float:
        return self.intercept * (b - a) + 0.5 * self.slope * (b - a) * (b + a)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "intercept": float(self.intercept), "slope": float(self.slope)}


@dataclass(frozen=True)
class ExpDecay:
    """``amplitude * exp(-rate * q)``; models memory decoherence."""

    amplitude: float = 0.0
    rate: float = 1.0

    kind = "exp-decay"

    def __call__(self, q: float) -> float:
        try:
            return _finite(self.amplitude * math.exp(-self.rate * q), "exp-decay drift")
        except OverflowError as exc:
            raise NumericError(f"exp-decay drift overflows at q={q!r}") from exc

    def integral(self, a: float, b: float) -> float:
        if self.rate == 0:
            return self.amplitude * (b - a)
        try:
            head = self.amplitude * math.exp(-self.rate * a)
        except OverflowError as exc:
            raise NumericError(f"exp-decay drift overflows at q={a!r}") from exc
        return _finite(head * -math.expm1(-self.rate * (b - a)) / self.rate,
                       "exp-decay integral")

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "amplitude": float(self.amplitude), "rate": float(self.rate)}


@dataclass(frozen=True)
class Sinusoid:
    """``offset + amplitude * sin(omega * q + phase)``."""

    amplitude: float = 0.0
    omega: float = 1.0
    phase: float = 0.0
    offset: float = 0.0

    kind = "sin"

    def __call__(self, q: float) -> float:
        return self.offset + self.amplitude * math.sin(self.omega * q + self.phase)

    def integral(self, a: float, b: float) -> float:
        base = self.offset * (b - a)
        if self.omega == 0:
            return base + self.amplitude * math.sin(self.phase) * (b - a)
        # cos(u) - cos(v) = -2 sin((u+v)/2) sin((u-v)/2); avoids cancellation for short windows
        u = self.omega * a + self.phase
        v = self.omega * b + self.phase
        diff = -2.0 * math.sin(0.5 * (u + v)) * math.sin(0.5 * (u - v))
        return base + self.amplitude * diff / self.omega

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "amplitude": float(self.amplitude),
            "omega": float(self.omega),
            "phase": float(self.phase),
            "offset": float(self.offset),
        }


@dataclass(frozen=True)
class PiecewiseConstant:
    """Step function: ``values[i]`` on ``[breakpoints[i-1], breakpoints[i])``.

    ``values`` has one more entry than ``breakpoints``; the first value holds
    before the first breakpoint and the last one after the final breakpoint.
    """

    breakpoints: tuple[float, ...] = ()
    values: tuple[float, ...] = (0.0,)

    kind = "piecewise"

    def __post_init__(self):
        object.__setattr__(self, "breakpoints", tuple(float(b) for b in self.breakpoints))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.values) != len(self.breakpoints) + 1:
            raise DomainError("piecewise drift needs len(values) == len(breakpoints) + 1")
        if any(b2 <= b1 for b1, b2 in zip(self.breakpoints, self.breakpoints[1:])):
            raise DomainError("piecewise breakpoints must be strictly increasing")

    def __call__(self, q: float) -> float:
        return self.values[bisect.bisect_right(self.breakpoints, q)]

    def integral(self, a: float, b: float) -> float:
        if a == b:
            return 0.0
        if a > b:
            return -self.integral(b, a)
        cuts = [a] + [t for t in self.breakpoints if a < t < b] + [b]
        return math.fsum(
            self(lo) * (hi - lo) for lo, hi in zip(cuts, cuts[1:])
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "breakpoints": list(self.breakpoints),
            "values": list(self.values),
        }


Drift = Union[Constant, Linear, ExpDecay, Sinusoid, PiecewiseConstant]

FAMILIES: dict[str, type] = {
    cls.kind: cls for cls in (Constant, Linear, ExpDecay, Sinusoid, PiecewiseConstant)
}

_PARAMS = {
    "constant": ("value",),
    "linear": ("intercept", "slope"),
    "exp-decay": ("amplitude", "rate"),
    "sin": ("amplitude", "omega", "phase", "offset"),
    "piecewise": ("breakpoints", "values"),
}


def drift_from_dict(doc: dict[str, Any]) -> Drift:
    """Build a drift function from its scenario-file form.

    >>> drift_from_dict({"kind": "linear", "slope": 0.002})
    Linear(intercept=0.0, slope=0.002)
    """
    if not isinstance(doc, dict):
        raise DomainError(f"drift must be an object, got {type(doc).__name__}")
    kind = doc.get("kind")
    if kind not in FAMILIES:
        raise DomainError(f"unknown drift kind {kind!r}; expected one of {sorted(FAMILIES)}")
    unknown = set(doc) - {"kind", *_PARAMS[kind]}
    if unknown:
        raise DomainError(f"unknown {kind} drift parameters: {sorted(unknown)}")
    kwargs = {}
    for name in _PARAMS[kind]:
        if name not in doc:
            continue
        value = doc[name]
        if name in ("breakpoints", "values"):
            if not isinstance(value, list) or not all(_is_number(v) for v in value):
                raise DomainError(f"{kind} drift '{name}' must be a list of numbers")
            value = tuple(float(v) for v in value)
        else:
            if not _is_number(value):
                raise DomainError(f"{kind} drift '{name}' must be a number")
            value = float(value)
            if not math.isfinite(value):
                raise DomainError(f"{kind} drift '{name}' must be finite")
        kwargs[name] = value
    return FAMILIES[kind](**kwargs)


def _is_number(v: Any) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


@dataclass(frozen=True)
class EvolutionProfile:
    """Drift rates of one endpoint: probability and fidelity, per time-unit."""

    prob: Drift = field(default_factory=Constant)
    fidelity: Drift = field(default_factory=Constant)

    @classmethod
    def constant(cls, prob_rate: float = 0.0, fid_rate: float = 0.0) -> "EvolutionProfile":
        return cls(Constant(prob_rate), Constant(fid_rate))

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "EvolutionProfile":
        if not isinstance(doc, dict):
            raise DomainError("profile must be an object with 'prob' and 'fidelity'")
        unknown = set(doc) - {"prob", "fidelity"}
        if unknown:
            raise DomainError(f"unknown profile keys: {sorted(unknown)}")
        return cls(
            drift_from_dict(doc["prob"]) if "prob" in doc else Constant(),
            drift_from_dict(doc["fidelity"]) if "fidelity" in doc else Constant(),
        )

    def to_dict(self) -> dict[str, Any]:
        return {"prob": self.prob.to_dict(), "fidelity": self.fidelity.to_dict()}


ZERO_DRIFT = EvolutionProfile()
