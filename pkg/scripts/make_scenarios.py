"""Regenerate the bundled scenario files under src/entac/scenarios/."""

import math
from pathlib import Path

from entac.access import PriorityClass, UserDemand
from entac.density import Exponential
from entac.montecarlo import TrialConfig
from entac.network import EntangledConnection, NetworkDefaults, NetworkGraph, NodeState
from entac.profiles import EvolutionProfile, TimeWindow
from entac.scenario import Scenario, save_scenario

OUT = Path(__file__).resolve().parent.parent / "src" / "entac" / "scenarios"
P = EvolutionProfile.constant


def fig3() -> Scenario:
    # five disjoint 10-edge chains A -> B; the exponential rate is chosen so one
    # chain succeeds with probability 0.4171 at a 0.02 distance bound
    per_edge = 0.4171 ** (1 / 10)
    lam = float(f"{-math.log1p(-per_edge) / 0.02:.12g}")
    nodes, conns = ["A", "B"], []
    for k in range(1, 6):
        chain = ["A"] + [f"R{k}.{j}" for j in range(1, 10)] + ["B"]
        nodes += chain[1:-1]
        for x, y in zip(chain, chain[1:]):
            conns.append(EntangledConnection(
                x, y, 1, NodeState(0.95, 0.99), NodeState(0.95, 0.99),
                P(0.0002 * k, -0.0001), P(0.0, -0.0001)))
    net = NetworkGraph(nodes, conns, NetworkDefaults(0.02, 0.98, 0.02, Exponential(lam)))
    demands = (
        UserDemand("U1", "rho1", "A", "B", PriorityClass("gold", 1, 5), 0.9, 0.99),
        UserDemand("U2", "rho1", "A", "B", PriorityClass("bronze", 1, 2), 0.6, 0.95),
    )
    return Scenario(net, demands, TimeWindow(0.0, 5.0), TrialConfig(200000, 20190))


def diamond() -> Scenario:
    net = NetworkGraph(["A", "B", "R1", "R2"], [
        EntangledConnection("A", "R1", 1, NodeState(0.9, 0.99), NodeState(0.9, 0.99),
                            P(0.01, 0.0), P(0.0, 0.0)),
        EntangledConnection("R1", "B", 1, NodeState(0.9, 0.99), NodeState(0.9, 0.99),
                            P(0.0, 0.0), P(0.0, 0.002)),
        EntangledConnection("A", "R2", 2, NodeState(0.92, 0.985), NodeState(0.9, 0.99),
                            P(0.0, 0.0), P(0.0, 0.0)),
        EntangledConnection("R2", "B", 1, NodeState(0.9, 0.99), NodeState(0.88, 0.99),
                            P(0.0, -0.001), P(0.0, 0.0)),
    ], NetworkDefaults(0.02, 0.9, 0.02, Exponential(200.0)))
    demand = UserDemand("U1", "d1", "A", "B", PriorityClass("silver", 2, 2), 0.0, 1.0)
    return Scenario(net, (demand,), TimeWindow(0.0, 5.0), TrialConfig(100000, 7))


if __name__ == "__main__":
    for name, build in (("fig3", fig3), ("diamond", diamond)):
        save_scenario(build(), OUT / f"{name}.json")
        print(OUT / f"{name}.json")
