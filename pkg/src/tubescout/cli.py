"""Command-line interface: scenario configs in, deterministic reports out.

Every subcommand loads one scenario file (or the built-in baseline),
runs only its module chain, and writes ``report.json`` into the output
directory. Exit status: 0 on success, 1 when ``--strict`` is set and an
``infeasible`` finding was reported, 2 on configuration or I/O errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from tubescout import __version__
from tubescout.config import (
    ConfigError,
    MissionConfig,
    load_config,
    parse_wbs_file,
    to_echo_dict,
)
from tubescout.energy import write_soc_csv
from tubescout.mission import run_mission
from tubescout.report import (
    aerostat_section,
    budget_section,
    cost_section,
    dump_json,
    exploration_section,
    power_section,
    schedule_section,
    thermal_section,
    winch_section,
)
from tubescout.rng import derive_seed
from tubescout.tube_explorer import (
    ExplorationReport,
    generate_tube,
    make_fleet,
    read_map_file,
    run_exploration,
)

_SUBCOMMANDS = {
    "balloon": "evaluate aerostat buoyancy under both hull-area conventions",
    "winch": "winch motor power and per-descent regeneration",
    "thermal": "greenhouse heat loss and the avionics temperature envelope",
    "power": "simulate one sol of supply, demand and battery state",
    "explore": "run a multi-robot tube survey on a map",
    "budget": "roll up payload mass, volume and peak power against limits",
    "cost": "roll up the work-breakdown cost tree",
    "schedule": "check lifecycle phase ordering and the launch window",
    "mission": "run the full scripted multi-sol mission",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tubescout",
        description=("Desk-scale engineering models and simulators for a "
                     "telerobotic Mars lava-tube settlement mission"))
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="SUBCOMMAND")
    for name, help_text in _SUBCOMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--config", metavar="PATH",
                       help="scenario JSON file (default: built-in baseline)")
        p.add_argument("--out", metavar="DIR", default="out",
                       help="output directory (default: %(default)s)")
        p.add_argument("--seed", type=int, metavar="N",
                       help="override every seed in the config")
        p.add_argument("--strict", action="store_true",
                       help="exit 1 if any 'infeasible' finding is reported")
        p.add_argument("--format", choices=("json", "csv"), default="json",
                       help="csv additionally writes trace CSV files where "
                            "the subcommand produces them")
        if name == "cost":
            p.add_argument("--wbs", metavar="PATH",
                           help="standalone WBS JSON file (overrides the "
                                "config's tree)")
    return parser


def _explore_once(config: MissionConfig, seed: int):
    exp = config.exploration
    if exp.map_file is not None:
        grid = read_map_file(exp.map_file)
        tube_seed = None
    else:
        tube_seed = derive_seed(seed, 0)
        gen = exp.generator
        grid = generate_tube(tube_seed, gen.width, gen.height,
                             gen.obstacle_density, gen.resolution_m)
    robots = make_fleet(grid, exp.robot_count, **exp.robot_overrides)
    result = run_exploration(grid, robots, station=exp.station,
                             max_steps=exp.max_steps, env=config.env,
                             sample_sites=exp.sample_sites)
    section, findings = exploration_section(result, grid)
    section["tube_seed"] = tube_seed
    return section, findings, result


def _write_robot_csv(path: Path, result: ExplorationReport) -> None:
    lines = ["robot_id,distance_cells,samples_delivered,final_state,battery_s"]
    for s in result.per_robot_stats:
        lines.append(f"{s.robot_id},{s.distance_cells},{s.samples_delivered},"
                     f"{s.final_state},{s.battery_s}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _dispatch(args: argparse.Namespace) -> int:
    if args.seed is not None and args.seed < 0:
        print(f"error: --seed must be nonnegative, got {args.seed}",
              file=sys.stderr)
        return 2
    config = load_config(args.config) if args.config else MissionConfig()
    seed = args.seed if args.seed is not None else config.mission.seed
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    report: dict = {"version": __version__, "seed": seed,
                    "config": to_echo_dict(config)}
    findings: list = []
    command = args.command

    if command == "balloon":
        section, found = aerostat_section(config.balloon, config.env)
        report["aerostat"] = section
        findings += found
    elif command == "winch":
        report["energy"] = {"winch": winch_section(config.winch, config.env)}
    elif command == "thermal":
        section, found = thermal_section(config.enclosure, config.avionics,
                                         config.env)
        report["thermal"] = section
        findings += found
    elif command == "power":
        loads = tuple(t.load for t in config.loads)
        section, found, trace = power_section(config.sources, loads,
                                              config.battery, config.env,
                                              config.timestep_s)
        report["energy"] = {"power": section}
        findings += found
        if args.format == "csv":
            write_soc_csv(out_dir / "soc_trace.csv", trace)
    elif command == "explore":
        section, found, result = _explore_once(config, seed)
        report["exploration"] = section
        findings += found
        if args.format == "csv":
            _write_robot_csv(out_dir / "exploration_robots.csv", result)
    elif command == "budget":
        section, found = budget_section(config.program.payloads,
                                        config.program.limits)
        report["program"] = {"budget": section}
        findings += found
    elif command == "cost":
        wbs = parse_wbs_file(args.wbs) if args.wbs else config.program.wbs
        report["program"] = {"cost": cost_section(wbs)}
    elif command == "schedule":
        section, found = schedule_section(config.program.phases,
                                          config.program.launch_year,
                                          config.program.deadline_year)
        report["program"] = {"schedule": section}
        findings += found
    else:
        body = run_mission(config, seed_override=args.seed)
        report.update(body)

    if command != "mission":
        report["findings"] = [f.to_dict() for f in findings]

    report_path = out_dir / "report.json"
    report_path.write_text(dump_json(report), encoding="utf-8")
    print(f"wrote {report_path}")
    for found in report["findings"]:
        print(f"finding[{found['kind']}] {found['module']}: {found['message']}")
    if args.strict and any(f["kind"] == "infeasible" for f in report["findings"]):
        return 1
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except ConfigError as exc:
        for path, message in exc.errors:
            print(f"error: {path}: {message}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
