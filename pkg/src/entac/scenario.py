"""Scenario documents: JSON in, validated model objects out, and back."""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from .access import PriorityClass, UserDemand
from .density import DensityModel, density_from_dict
from .errors import DomainError, ScenarioError, ScenarioParseError
from .montecarlo import TrialConfig
from .network import (
    EntangledConnection,
    NetworkDefaults,
    NetworkGraph,
    NodeState,
    validate,
)
from .profiles import ZERO_DRIFT, EvolutionProfile, TimeWindow

TOP_KEYS = ("nodes", "connections", "defaults", "demands", "window", "monte_carlo")
SEED_ENV = "ENTAC_SEED"


@dataclass(frozen=True)
class Scenario:
    network: NetworkGraph
    demands: tuple[UserDemand, ...]
    window: TimeWindow
    monte_carlo: Optional[TrialConfig] = None

    @property
    def density_defaults(self) -> DensityModel:
        return self.network.defaults.density


class _Collector:
    def __init__(self):
        self.errors: list[str] = []

    def add(self, where: str, message: str) -> None:
        self.errors.append(f"{where}: {message}")

    def keys(self, doc: dict, where: str, allowed, required=()) -> bool:
        ok = True
        for k in sorted(set(doc) - set(allowed)):
            self.add(where, f"unknown key {k!r}")
            ok = False
        for k in required:
            if k not in doc:
                self.add(where, f"missing required key {k!r}")
                ok = False
        return ok

    def number(self, doc: dict, key: str, where: str, default=None) -> Optional[float]:
        if key not in doc:
            if default is None:
                self.add(where, f"missing required key {key!r}")
            return default
        v = doc[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            self.add(where, f"{key!r} must be a finite number, got {v!r}")
            return None
        return float(v)

    def integer(self, doc: dict, key: str, where: str, default=None) -> Optional[int]:
        if key not in doc:
            if default is None:
                self.add(where, f"missing required key {key!r}")
            return default
        v = doc[key]
        if isinstance(v, bool) or not isinstance(v, int):
            self.add(where, f"{key!r} must be an integer, got {v!r}")
            return None
        return v

    def string(self, doc: dict, key: str, where: str) -> Optional[str]:
        v = doc.get(key)
        if not isinstance(v, str) or not v:
            self.add(where, f"{key!r} must be a non-empty string")
            return None
        return v

    def obj(self, v: Any, where: str) -> bool:
        if not isinstance(v, dict):
            self.add(where, "expected a JSON object")
            return False
        return True


def _state(c: _Collector, doc: Any, where: str) -> Optional[NodeState]:
    if not c.obj(doc, where):
        return None
    c.keys(doc, where, ("prob", "fidelity"), ("prob", "fidelity"))
    p = c.number(doc, "prob", where, default=math.nan)
    f = c.number(doc, "fidelity", where, default=math.nan)
    if p is None or f is None or math.isnan(p) or math.isnan(f):
        return None
    # range problems are reported by network validation, naming node and field
    return NodeState(p, f)


def _profile(c: _Collector, doc: Any, where: str) -> Optional[EvolutionProfile]:
    if doc is None:
        return ZERO_DRIFT
    try:
        return EvolutionProfile.from_dict(doc)
    except DomainError as exc:
        c.add(where, str(exc))
        return None


def _density(c: _Collector, doc: Any, where: str) -> Optional[DensityModel]:
    try:
        return density_from_dict(doc)
    except DomainError as exc:
        c.add(where, str(exc))
        return None


def scenario_from_dict(doc: Any, source: str | None = None) -> Scenario:
    """Build and validate a :class:`Scenario`; raise with every violation found."""
    c = _Collector()
    if not isinstance(doc, dict):
        raise ScenarioError(["top level: expected a JSON object"], source)
    c.keys(doc, "top level", TOP_KEYS, ("nodes", "connections", "defaults", "demands", "window"))

    nodes = doc.get("nodes", [])
    if not isinstance(nodes, list) or not all(isinstance(n, str) and n for n in nodes):
        c.add("nodes", "must be a list of non-empty strings")
        nodes = [n for n in nodes if isinstance(n, str) and n] if isinstance(nodes, list) else []
    dupes = sorted({n for n in nodes if nodes.count(n) > 1})
    if dupes:
        c.add("nodes", f"duplicate node ids {dupes}")

    defaults = NetworkDefaults()
    ddoc = doc.get("defaults", {})
    if c.obj(ddoc, "defaults"):
        c.keys(ddoc, "defaults", ("gamma_max", "f_crit", "f_delta_max", "density"),
               ("gamma_max", "f_crit", "f_delta_max", "density"))
        gm = c.number(ddoc, "gamma_max", "defaults", defaults.gamma_max)
        fc = c.number(ddoc, "f_crit", "defaults", defaults.f_crit)
        fd = c.number(ddoc, "f_delta_max", "defaults", defaults.f_delta_max)
        dens = _density(c, ddoc["density"], "defaults.density") if "density" in ddoc else None
        defaults = NetworkDefaults(
            gm if gm is not None else defaults.gamma_max,
            fc if fc is not None else defaults.f_crit,
            fd if fd is not None else defaults.f_delta_max,
            dens or defaults.density,
        )

    connections = []
    cdocs = doc.get("connections", [])
    if not isinstance(cdocs, list):
        c.add("connections", "must be a list")
        cdocs = []
    conn_keys = ("x", "y", "level", "state_x", "state_y", "profile_x", "profile_y",
                 "gamma_max", "density")
    for i, cd in enumerate(cdocs):
        where = f"connections[{i}]"
        if not c.obj(cd, where):
            continue
        c.keys(cd, where, conn_keys, ("x", "y", "level", "state_x", "state_y"))
        x, y = c.string(cd, "x", where), c.string(cd, "y", where)
        level = c.integer(cd, "level", where)
        where = f"connections[{i}] {x}~{y}"
        sx = _state(c, cd.get("state_x"), f"{where} state_x") if "state_x" in cd else None
        sy = _state(c, cd.get("state_y"), f"{where} state_y") if "state_y" in cd else None
        px = _profile(c, cd.get("profile_x"), f"{where} profile_x")
        py = _profile(c, cd.get("profile_y"), f"{where} profile_y")
        gmax = c.number(cd, "gamma_max", where) if "gamma_max" in cd else None
        dens = _density(c, cd["density"], f"{where} density") if "density" in cd else None
        if None in (x, y, level, sx, sy, px, py) or ("density" in cd and dens is None):
            continue
        connections.append(EntangledConnection(x, y, level, sx, sy, px, py, gmax, dens))

    network = NetworkGraph(nodes, connections, defaults)
    for v in validate(network):
        c.add(v.subject, f"{v.kind}: {v.message}")

    window = None
    wdoc = doc.get("window", {})
    if c.obj(wdoc, "window"):
        c.keys(wdoc, "window", ("t0", "dt"), ("t0", "dt"))
        t0, dt = c.number(wdoc, "t0", "window", 0.0), c.number(wdoc, "dt", "window", 0.0)
        if t0 is not None and dt is not None:
            try:
                window = TimeWindow(t0, dt)
            except DomainError as exc:
                c.add("window", str(exc))

    demands = []
    ddocs = doc.get("demands", [])
    if not isinstance(ddocs, list):
        c.add("demands", "must be a list")
        ddocs = []
    seen_ids = set()
    for i, dd in enumerate(ddocs):
        where = f"demands[{i}]"
        if not c.obj(dd, where):
            continue
        c.keys(dd, where, ("user", "id", "source", "target", "priority", "pr_min", "pr_max"),
               ("user", "id", "source", "target", "priority", "pr_min", "pr_max"))
        user, did = c.string(dd, "user", where), c.string(dd, "id", where)
        src, dst = c.string(dd, "source", where), c.string(dd, "target", where)
        for end in (src, dst):
            if end is not None and end not in network:
                c.add(where, f"unknown node {end!r}")
        if (user, did) in seen_ids:
            c.add(where, f"duplicate demand id {did!r} for user {user!r}")
        seen_ids.add((user, did))
        prio = None
        pd = dd.get("priority")
        if "priority" in dd and c.obj(pd, f"{where}.priority"):
            c.keys(pd, f"{where}.priority", ("name", "m_initial", "m_max"),
                   ("name", "m_initial", "m_max"))
            name = c.string(pd, "name", f"{where}.priority")
            mi = c.integer(pd, "m_initial", f"{where}.priority")
            mm = c.integer(pd, "m_max", f"{where}.priority")
            if None not in (name, mi, mm):
                try:
                    prio = PriorityClass(name, mi, mm)
                except DomainError as exc:
                    c.add(f"{where}.priority", str(exc))
        lo = c.number(dd, "pr_min", where)
        hi = c.number(dd, "pr_max", where)
        if None in (user, did, src, dst, prio, lo, hi):
            continue
        try:
            demands.append(UserDemand(user, did, src, dst, prio, lo, hi))
        except DomainError as exc:
            c.add(where, str(exc))

    mc = None
    if "monte_carlo" in doc and doc["monte_carlo"] is not None:
        md = doc["monte_carlo"]
        if c.obj(md, "monte_carlo"):
            c.keys(md, "monte_carlo", ("trials", "seed"), ("trials", "seed"))
            trials = c.integer(md, "trials", "monte_carlo")
            seed = c.integer(md, "seed", "monte_carlo")
            if trials is not None and seed is not None:
                try:
                    mc = TrialConfig(trials, seed)
                except DomainError as exc:
                    c.add("monte_carlo", str(exc))

    if c.errors:
        raise ScenarioError(c.errors, source)
    return Scenario(network, tuple(demands), window, mc)


def load_scenario(path: str | os.PathLike) -> Scenario:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(exc.msg, exc.lineno, exc.colno, str(path)) from exc
    return scenario_from_dict(doc, str(path))


def scenario_to_dict(scenario: Scenario) -> dict[str, Any]:
    net = scenario.network
    d = net.defaults
    conns = []
    for c in net.connections:
        item = {
            "x": c.x,
            "y": c.y,
            "level": c.level,
            "state_x": c.state_x.to_dict(),
            "state_y": c.state_y.to_dict(),
            "profile_x": c.profile_x.to_dict(),
            "profile_y": c.profile_y.to_dict(),
        }
        if c.gamma_max is not None:
            item["gamma_max"] = float(c.gamma_max)
        if c.density is not None:
            item["density"] = c.density.to_dict()
        conns.append(item)
    doc = {
        "nodes": list(net.nodes),
        "connections": conns,
        "defaults": {
            "gamma_max": float(d.gamma_max),
            "f_crit": float(d.f_crit),
            "f_delta_max": float(d.f_delta_max),
            "density": d.density.to_dict(),
        },
        "demands": [
            {
                "user": u.user,
                "id": u.demand_id,
                "source": u.source,
                "target": u.target,
                "priority": {
                    "name": u.priority.name,
                    "m_initial": u.priority.m_initial,
                    "m_max": u.priority.m_max,
                },
                "pr_min": float(u.pr_min),
                "pr_max": float(u.pr_max),
            }
            for u in scenario.demands
        ],
        "window": {"t0": float(scenario.window.t0), "dt": float(scenario.window.dt)},
    }
    if scenario.monte_carlo is not None:
        doc["monte_carlo"] = {"trials": scenario.monte_carlo.trials,
                              "seed": scenario.monte_carlo.seed}
    return doc


def dumps_scenario(scenario: Scenario) -> str:
    return json.dumps(scenario_to_dict(scenario), indent=2, ensure_ascii=False) + "\n"


def save_scenario(scenario: Scenario, path: str | os.PathLike) -> None:
    Path(path).write_text(dumps_scenario(scenario), encoding="utf-8")


def resolve_seed(scenario: Scenario, override: int | None = None) -> int:
    """Seed precedence: explicit override, then ``ENTAC_SEED``, then the scenario."""
    if override is not None:
        return override
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise DomainError(f"{SEED_ENV}={env!r} is not an integer") from exc
    return scenario.monte_carlo.seed if scenario.monte_carlo else 0
