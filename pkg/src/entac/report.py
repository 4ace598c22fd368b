"""Result tables for the CLI commands, and CSV/text rendering."""

from __future__ import annotations

import csv
import io
import os
from pathlib import Path
from typing import Iterable, Sequence

from .access import AccessResult, find_disjoint_paths, run_access_control
from .dynamics import evolve_connection
from .montecarlo import TrialConfig, estimate_multipath
from .pathstats import FIDELITY_ONLY, INTEGRATED, multipath_probability, pathset_probability
from .profiles import TimeWindow
from .scenario import Scenario

ROUTE_COLUMNS = ("user", "demand", "m_final", "status", "probability",
                 "path_index", "path_cost", "node_sequence")
PROBABILITY_COLUMNS = ("user", "demand", "m", "paths_found", "mode", "probability")
EVOLVE_COLUMNS = ("connection", "t", "prob_x", "fidelity_x", "prob_y", "fidelity_y",
                  "gamma", "gamma_max", "entangled", "clamped")
MONTECARLO_COLUMNS = ("user", "demand", "m", "path_gs", "bound", "analytic", "empirical",
                      "std_error", "trials", "within_3se")

PATH_SEP = ">"


class Table:
    def __init__(self, columns: Sequence[str], rows: Iterable[Sequence] = ()):
        self.columns = tuple(columns)
        self.rows = [tuple(r) for r in rows]


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if value == 0:
            return "0"  # no "-0"
        return f"{value:.6g}"
    return str(value)


def csv_text(table: Table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(table.columns)
    for row in table.rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def emit_csv(table: Table, path: str | os.PathLike) -> Path:
    path = Path(path)
    path.write_bytes(csv_text(table).encode("utf-8"))
    return path


def text_table(table: Table) -> str:
    cells = [list(table.columns)] + [[fmt(v) for v in r] for r in table.rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(table.columns))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------


def route_table(results: Sequence[AccessResult]) -> Table:
    rows = []
    for r in results:
        head = (r.user, r.demand_id, r.m_final, r.status, r.probability)
        if not r.paths:
            rows.append(head + (None, None, None))
            continue
        for i, (p, cost) in enumerate(zip(r.paths, r.path_costs), start=1):
            rows.append(head + (i, cost, PATH_SEP.join(p.node_sequence)))
    return Table(ROUTE_COLUMNS, rows)


def route(scenario: Scenario, workers: int = 1) -> Table:
    return route_table(run_access_control(scenario.network, scenario.demands,
                                          scenario.window, workers))


def m_values(demand, m_range: Sequence[int] | None) -> list[int]:
    if m_range:
        return list(m_range)
    return list(range(demand.priority.m_initial, demand.priority.m_max + 1))


def probability(scenario: Scenario, m_range: Sequence[int] | None = None,
                mode: str = INTEGRATED) -> Table:
    rows = []
    for d in scenario.demands:
        for m in m_values(d, m_range):
            paths, _ = find_disjoint_paths(scenario.network, d.source, d.target, m,
                                           scenario.window)
            p = pathset_probability(paths, scenario.network, scenario.window, mode)
            rows.append((d.user, d.demand_id, m, len(paths), mode, p))
    return Table(PROBABILITY_COLUMNS, rows)


def evolve(scenario: Scenario, steps: int = 10) -> Table:
    net, w = scenario.network, scenario.window
    rows = []
    for c in net.connections:
        gmax = net.resolve_gamma_max(c)
        for k in range(steps + 1):
            sub = TimeWindow(w.t0, w.dt * k / steps)
            ev = evolve_connection(c, sub)
            clamped = [f"{end}:{name}"
                       for end, rep in (("x", ev.clamp_x), ("y", ev.clamp_y))
                       for name in ("prob", "fidelity") if getattr(rep, name)]
            rows.append((c.label, sub.t1, ev.state_x.prob, ev.state_x.fidelity,
                         ev.state_y.prob, ev.state_y.fidelity, ev.gamma, gmax,
                         ev.gamma <= gmax, ";".join(clamped)))
    return Table(EVOLVE_COLUMNS, rows)


def montecarlo(scenario: Scenario, config: TrialConfig, m_range: Sequence[int] | None = None,
               mode: str = INTEGRATED, workers: int = 1) -> Table:
    """Empirical vs analytic success with i.i.d. draws from the default density."""
    net = scenario.network
    density = net.defaults.density
    bound = net.defaults.f_delta_max if mode == FIDELITY_ONLY else net.defaults.gamma_max
    q = density.cdf(bound)
    rows = []
    for d in scenario.demands:
        for m in m_values(d, m_range):
            paths, _ = find_disjoint_paths(net, d.source, d.target, m, scenario.window)
            gs = [p.g for p in paths]
            analytic = multipath_probability([q ** g for g in gs]) if gs else 0.0
            est = estimate_multipath(gs, density, bound, config, workers)
            rows.append((d.user, d.demand_id, m, ";".join(map(str, gs)), bound, analytic,
                         est.mean, est.std_error, est.trials, est.agrees_with(analytic)))
    return Table(MONTECARLO_COLUMNS, rows)


