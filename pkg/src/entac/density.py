"""Probability densities over nonnegative distances (fidelity or state gaps)."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Any, Union

import numpy as np
from scipy import optimize, special

from .errors import DomainError, NumericError
from .quadrature import DEFAULT_TOL, adaptive_simpson

INVERSION_TOL = 1e-10


def _check_bound(bound: float) -> None:
    if not bound >= 0:
        raise DomainError(f"cdf bound must be >= 0, got {bound!r}")


def _clip01(x: float) -> float:
    return min(1.0, max(0.0, x))


@dataclass(frozen=True)
class Exponential:
    lam: float

    kind = "exponential"
    closed_form = True

    def __post_init__(self):
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise DomainError(f"exponential rate must be positive and finite, got {self.lam!r}")

    @property
    def support(self) -> tuple[float, float]:
        return 0.0, math.inf

    def pdf(self, z: float) -> float:
        return self.lam * math.exp(-self.lam * z) if z >= 0 else 0.0

    def cdf(self, bound: float) -> float:
        _check_bound(bound)
        return -math.expm1(-self.lam * bound)

    def ppf(self, u):
        return -np.log1p(-np.asarray(u, dtype=float)) / self.lam

    @property
    def mean(self) -> float:
        return 1.0 / self.lam

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "lambda": float(self.lam)}


@dataclass(frozen=True)
class Uniform:
    a: float
    b: float

    kind = "uniform"
    closed_form = True

    def __post_init__(self):
        if not (0 <= self.a < self.b and math.isfinite(self.b)):
            raise DomainError(f"uniform density needs 0 <= a < b, got ({self.a!r}, {self.b!r})")

    @property
    def support(self) -> tuple[float, float]:
        return self.a, self.b

    def pdf(self, z: float) -> float:
        return 1.0 / (self.b - self.a) if self.a <= z <= self.b else 0.0

    def cdf(self, bound: float) -> float:
        _check_bound(bound)
        return _clip01((bound - self.a) / (self.b - self.a))

    def ppf(self, u):
        return self.a + np.asarray(u, dtype=float) * (self.b - self.a)

    @property
    def mean(self) -> float:
        return 0.5 * (self.a + self.b)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "a": float(self.a), "b": float(self.b)}


@dataclass(frozen=True)
class TruncatedNormal:
    """Normal(mu, sigma) restricted to ``[lo, hi]`` and renormalized."""

    mu: float
    sigma: float
    lo: float
    hi: float

    kind = "truncated-normal"
    closed_form = False

    def __post_init__(self):
        if not self.sigma > 0:
            raise DomainError(f"truncated-normal sigma must be positive, got {self.sigma!r}")
        if not (0 <= self.lo < self.hi):
            raise DomainError(
                f"truncated-normal needs 0 <= lo < hi, got ({self.lo!r}, {self.hi!r})"
            )
        if self._mass <= 0:
            raise DomainError("truncated-normal has no mass on [lo, hi]")

    @property
    def _alpha(self) -> float:
        return (self.lo - self.mu) / self.sigma

    @property
    def _beta(self) -> float:
        return (self.hi - self.mu) / self.sigma

    @property
    def _mass(self) -> float:
        return float(special.ndtr(self._beta) - special.ndtr(self._alpha))

    @property
    def support(self) -> tuple[float, float]:
        return self.lo, self.hi

    def pdf(self, z: float) -> float:
        if not self.lo <= z <= self.hi:
            return 0.0
        x = (z - self.mu) / self.sigma
        return math.exp(-0.5 * x * x) / (self.sigma * math.sqrt(2 * math.pi) * self._mass)

    def cdf(self, bound: float) -> float:
        _check_bound(bound)
        if bound <= self.lo:
            return 0.0
        top = min(bound, self.hi)
        return _clip01(adaptive_simpson(self.pdf, self.lo, top, DEFAULT_TOL))

    def ppf(self, u):
        # inverse of the normal CDF restricted to [alpha, beta]
        u = np.asarray(u, dtype=float)
        fa = special.ndtr(self._alpha)
        z = special.ndtri(fa + u * self._mass)
        return np.clip(self.mu + self.sigma * z, self.lo, self.hi)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "mu": float(self.mu), "sigma": float(self.sigma),
                "lo": float(self.lo), "hi": float(self.hi)}


class Tabulated:
    """Piecewise-linear density through ``(z, weight)`` points.

    Weights are rescaled at construction so the interpolant integrates to one;
    :meth:`to_dict` returns the original points so serialization round-trips.
    """

    kind = "tabulated"
    closed_form = False

    def __init__(self, points):
        pts = [(float(z), float(w)) for z, w in points]
        if len(pts) < 2:
            raise DomainError("tabulated density needs at least two points")
        zs = [z for z, _ in pts]
        ws = [w for _, w in pts]
        if zs[0] < 0:
            raise DomainError("tabulated density support must lie in [0, inf)")
        if any(b <= a for a, b in zip(zs, zs[1:])):
            raise DomainError("tabulated abscissae must be strictly increasing")
        if any(w < 0 or not math.isfinite(w) for w in ws):
            raise DomainError("tabulated weights must be finite and >= 0")
        area = math.fsum(0.5 * (w1 + w2) * (z2 - z1)
                         for z1, z2, w1, w2 in zip(zs, zs[1:], ws, ws[1:]))
        if area <= 0:
            raise DomainError("tabulated density has zero total mass")
        self.points = tuple(pts)
        self._z = zs
        self._w = [w / area for w in ws]
        cum = [0.0]
        for i in range(len(zs) - 1):
            cum.append(cum[-1] + 0.5 * (self._w[i] + self._w[i + 1]) * (zs[i + 1] - zs[i]))
        self._cum = cum

    def __eq__(self, other):
        return isinstance(other, Tabulated) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"Tabulated(points={list(self.points)!r})"

    @property
    def support(self) -> tuple[float, float]:
        return self._z[0], self._z[-1]

    def pdf(self, z: float) -> float:
        zs = self._z
        if z < zs[0] or z > zs[-1]:
            return 0.0
        i = min(bisect.bisect_right(zs, z) - 1, len(zs) - 2)
        t = (z - zs[i]) / (zs[i + 1] - zs[i])
        return self._w[i] + t * (self._w[i + 1] - self._w[i])

    def cdf(self, bound: float) -> float:
        _check_bound(bound)
        zs = self._z
        if bound <= zs[0]:
            return 0.0
        if bound >= zs[-1]:
            return 1.0
        i = bisect.bisect_right(zs, bound) - 1
        # whole panels are summed exactly; the partial panel goes through quadrature
        return _clip01(self._cum[i] + adaptive_simpson(self.pdf, zs[i], bound, DEFAULT_TOL))

    def ppf(self, u):
        u = np.asarray(u, dtype=float)
        flat = np.array([self._invert(float(x)) for x in u.ravel()])
        return flat.reshape(u.shape)

    def _invert(self, u: float) -> float:
        lo, hi = self.support
        if u <= 0:
            return lo
        if u >= 1:
            return hi
        try:
            return optimize.brentq(lambda z: self.cdf(z) - u, lo, hi,
                                   xtol=INVERSION_TOL, rtol=4 * np.finfo(float).eps)
        except (ValueError, RuntimeError) as exc:
            raise NumericError(f"inverse-CDF did not converge for u={u!r}") from exc

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "points": [list(p) for p in self.points]}


DensityModel = Union[Exponential, Uniform, TruncatedNormal, Tabulated]


def density_from_dict(doc: dict[str, Any]) -> DensityModel:
    """Parse ``{"kind": "exponential", "lambda": 200}`` and friends."""
    if not isinstance(doc, dict):
        raise DomainError("density must be an object")
    kind = doc.get("kind")
    fields = {
        "exponential": ("lambda",),
        "uniform": ("a", "b"),
        "truncated-normal": ("mu", "sigma", "lo", "hi"),
        "tabulated": ("points",),
    }
    if kind not in fields:
        raise DomainError(f"unknown density kind {kind!r}; expected one of {sorted(fields)}")
    missing = [f for f in fields[kind] if f not in doc]
    if missing:
        raise DomainError(f"{kind} density missing {missing}")
    unknown = set(doc) - {"kind", *fields[kind]}
    if unknown:
        raise DomainError(f"unknown {kind} density parameters: {sorted(unknown)}")
    try:
        if kind == "exponential":
            return Exponential(float(doc["lambda"]))
        if kind == "uniform":
            return Uniform(float(doc["a"]), float(doc["b"]))
        if kind == "truncated-normal":
            return TruncatedNormal(*(float(doc[k]) for k in fields[kind]))
        return Tabulated(doc["points"])
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"bad {kind} density parameters: {exc}") from exc
