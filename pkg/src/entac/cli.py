"""Command-line entry point: ``entac <command> --scenario FILE``.

Exit status is 0 on success, 1 when the scenario fails to load or validate,
and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import logging
import re
import sys
from typing import Sequence

from . import report
from .errors import DomainError, EntacError, ScenarioError
from .montecarlo import TrialConfig
from .pathstats import FIDELITY_ONLY, INTEGRATED
from .scenario import load_scenario, resolve_seed

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("entac")


class UsageError(Exception):
    pass


def parse_m_range(text: str) -> list[int]:
    """``"3"``, ``"1..5"`` or ``"1,2,4"`` to a list of path counts."""
    text = text.strip()
    m = re.fullmatch(r"(\d+)\s*\.\.\s*(\d+)", text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        values = list(range(lo, hi + 1))
    else:
        try:
            values = [int(t) for t in text.split(",")]
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad m range {text!r}") from None
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError(f"m range {text!r} must contain integers >= 1")
    return values


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entac", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help: str, csv: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("--scenario", required=True, help="scenario JSON file")
        if csv:
            p.add_argument("-o", "--out", help=f"CSV output path (default: {name}.csv)")
            p.add_argument("-q", "--quiet", action="store_true", help="do not print the table")
        return p

    p = add("probability", "analytic Pr(P_M) per demand and path count")
    p.add_argument("--m", type=parse_m_range, help="path counts, e.g. 1..5 (default: class range)")
    p.add_argument("--mode", choices=(INTEGRATED, FIDELITY_ONLY), default=INTEGRATED)

    p = add("route", "run access control and list the selected paths")
    p.add_argument("--workers", type=_positive, default=1)

    p = add("evolve", "tabulate endpoint states and gamma over the window")
    p.add_argument("--steps", type=_positive, default=10)

    p = add("montecarlo", "empirical vs analytic success probability")
    p.add_argument("--m", type=parse_m_range)
    p.add_argument("--mode", choices=(INTEGRATED, FIDELITY_ONLY), default=INTEGRATED)
    p.add_argument("--trials", type=_positive, help="override the scenario trial count")
    p.add_argument("--seed", type=int, help="override ENTAC_SEED and the scenario seed")
    p.add_argument("--workers", type=_positive, default=1)

    add("validate", "check a scenario file", csv=False)
    return parser


def _run(args) -> int:
    scenario = load_scenario(args.scenario)
    if args.command == "validate":
        print(f"{args.scenario}: ok ({len(scenario.network.nodes)} nodes, "
              f"{len(scenario.network.connections)} connections, "
              f"{len(scenario.demands)} demands)")
        return EXIT_OK

    if args.command == "probability":
        table = report.probability(scenario, args.m, args.mode)
    elif args.command == "route":
        table = report.route(scenario, args.workers)
    elif args.command == "evolve":
        table = report.evolve(scenario, args.steps)
    elif args.command == "montecarlo":
        base = scenario.monte_carlo or TrialConfig()
        try:
            config = TrialConfig(args.trials or base.trials, resolve_seed(scenario, args.seed))
        except DomainError as exc:
            raise UsageError(str(exc)) from exc
        table = report.montecarlo(scenario, config, args.m, args.mode, args.workers)
    else:  # pragma: no cover - argparse enforces the choices
        raise UsageError(f"unknown command {args.command!r}")

    out = report.emit_csv(table, args.out or f"{args.command}.csv")
    if not args.quiet:
        sys.stdout.write(report.text_table(table))
    log.info("wrote %s", out)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _run(args)
    except ScenarioError as exc:
        head = f"{exc.source}: " if exc.source else ""
        print(f"{head}{len(exc.violations)} problem(s)", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
        return EXIT_INVALID
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        print(f"entac: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"entac: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EntacError as exc:
        print(f"entac: {exc}", file=sys.stderr)
        return EXIT_INVALID


def dispatch(argv: Sequence[str]) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
