"""Command-line drivers for the experiment scenarios.

Subcommands: converge, work-extract, cool, inaccessible, free-energy,
cone. Results are written as CSV (default) or JSON, to --out or stdout.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import experiments as xp
from .export import write_rows
from .states import distribution, gibbs_state


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x != ""]


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x != ""]


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--beta", type=float, default=0.0,
                     help="bath inverse temperature")
    sub.add_argument("--dims", type=_ints, default=None,
                     help="comma list of system dimensions")
    sub.add_argument("--state", type=_floats, default=None,
                     help="comma list of initial populations")
    sub.add_argument("--energies", type=_floats, default=None,
                     help="comma list of energy levels")
    sub.add_argument("--memory", type=_ints, default=[2, 4, 8, 16, 32],
                     help="comma list of memory sizes N")
    sub.add_argument("--family", choices=["default", "blue", "red", "cyan",
                                          "orange"], default="default")
    sub.add_argument("--mode", choices=["full", "truncated"],
                     default="truncated")
    sub.add_argument("--out", default=None, help="output path (default stdout)")
    sub.add_argument("--format", choices=["csv", "json"], default="csv")
    sub.add_argument("--seed", type=int, default=0,
                     help="seed for randomized suites, recorded in the output")


def _parse_target(text: str, d: int):
    if text == "reversal":
        return tuple(range(d - 1, -1, -1))
    if text.startswith("cycle:"):
        parts = text.split(":")
        k = int(parts[1])
        direction = parts[2] if len(parts) > 2 else "forward"
        if k != d:
            raise SystemExit("only full cycles are supported via cycle:<d>")
        if direction == "forward":
            return (d - 1,) + tuple(range(d - 1))
        return tuple(range(1, d)) + (0,)
    if text.startswith("order:"):
        return tuple(int(x) for x in text.split(":")[1].split(","))
    raise SystemExit(f"cannot parse target {text!r}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="memtp",
        description="memory-assisted Markovian thermal process experiments")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("converge", help="distance to a cone vertex vs N")
    _add_common(p)
    p.add_argument("--target", default="reversal",
                   help="'reversal', 'cycle:<d>[:forward|backward]' or 'order:a,b,...'")
    p.add_argument("--variant", type=int, default=0)

    p = subs.add_parser("work-extract", help="battery charging error vs N")
    _add_common(p)
    p.add_argument("--gap", type=float, default=1.0, help="system splitting")
    p.add_argument("--beta-source", type=float, default=2.0)
    p.add_argument("--w-min", type=float, default=-0.5)
    p.add_argument("--w-max", type=float, default=2.0)
    p.add_argument("--w-points", type=int, default=50)

    p = subs.add_parser("cool", help="two-level cooling with two-level memory")
    _add_common(p)

    p = subs.add_parser("inaccessible", help="convergence to the inaccessible state")
    _add_common(p)
    p.add_argument("--beta-factor", type=float, default=1.1)
    p.add_argument("--grid-sample", type=int, default=0,
                   help="sample this many random 4-level spectra instead")

    p = subs.add_parser("free-energy", help="per-step divergence trace")
    _add_common(p)
    p.add_argument("--levels", type=_ints, default=[0, 1])

    p = subs.add_parser("cone", help="export the future-cone vertices")
    _add_common(p)

    args = parser.parse_args(argv)
    cfg = {k: v for k, v in vars(args).items()
           if k not in ("command", "out", "format") and v is not None}

    if args.command == "converge":
        state = args.state or [0.37, 0.24, 0.16, 0.11, 0.07, 0.05]
        energies = args.energies or list(range(len(state)))
        sweep = xp.SweepConfig(
            scenario="converge", state=tuple(state), energies=tuple(energies),
            beta=args.beta, target=_parse_target(args.target, len(state)),
            memory_sizes=tuple(args.memory), family=args.family,
            variant=args.variant, mode=args.mode, seed=args.seed)
        rows = xp.run_sweep(sweep)
        write_rows(args.out, rows, cfg, args.format)

    elif args.command == "work-extract":
        config = xp.WorkExtractionConfig(
            gap=args.gap, beta_source=args.beta_source, beta=args.beta,
            works=tuple(np.linspace(args.w_min, args.w_max, args.w_points)),
            memory_sizes=tuple(args.memory))
        result = xp.work_extraction(config)
        eps_to = {r["W"]: r["epsilon_to"] for r in result.reference}
        rows = [dict(r, epsilon_to=eps_to[r["W"]]) for r in result.rows]
        cfg["kink"] = result.kink
        cfg["monotone"] = result.monotone
        write_rows(args.out, rows, cfg, args.format)

    elif args.command == "cool":
        energies = args.energies or [1.0, 0.4]
        report = xp.cooling_demo(energies[0], energies[1], args.beta)
        rows = [{
            "q_engine_ground": report.q_engine[0],
            "q_engine_excited": report.q_engine[1],
            "q_closed_form_ground": report.q_closed_form[0],
            "q_closed_form_excited": report.q_closed_form[1],
            "distance_engine": report.distance_engine,
            "distance_closed_form": report.distance_closed_form,
        }]
        write_rows(args.out, rows, cfg, args.format)

    elif args.command == "inaccessible":
        if args.grid_sample:
            rng = np.random.default_rng(args.seed)
            rows = []
            for sample in range(args.grid_sample):
                e1, e2 = np.sort(rng.integers(1, 64, size=2) / 64.0)
                if e1 == e2:
                    e2 = e1 + 1.0 / 64.0
                res = xp.inaccessible_convergence(
                    [0.0, e1, e2, 1.0], args.beta_factor, args.memory)
                for r in res.rows:
                    rows.append(dict(r, sample=sample, e1=e1, e2=e2))
            write_rows(args.out, rows, cfg, args.format)
        else:
            dims = args.dims or [3, 4, 5, 6]
            rows = []
            for d in dims:
                energies = args.energies or list(range(d))
                res = xp.inaccessible_convergence(energies, args.beta_factor,
                                                  args.memory)
                for r in res.rows:
                    rows.append(dict(r, d=d, beta_crit=res.beta_crit))
            write_rows(args.out, rows, cfg, args.format)

    elif args.command == "free-energy":
        state = args.state or [0.7, 0.2, 0.1]
        energies = args.energies or list(range(len(state)))
        N = args.memory[0] if args.memory else 16
        trace = xp.free_energy_trace(state, energies, args.beta,
                                     tuple(args.levels), N)
        cfg["monotone_joint"] = trace["monotone_joint"]
        write_rows(args.out, trace["rows"], cfg, args.format)

    elif args.command == "cone":
        state = distribution(args.state or [0.7, 0.2, 0.1])
        energies = args.energies or list(range(len(state)))
        gamma = gibbs_state(energies, args.beta)
        payload = xp.cone_export(state, gamma)
        rows = [{"order": v["order"], "state": v["state"]}
                for v in payload["vertices"]]
        if args.format == "csv":
            write_rows(args.out, rows, cfg, "csv")
        else:
            write_rows(args.out, rows, cfg, "json")

    return 0


if __name__ == "__main__":
    sys.exit(main())
