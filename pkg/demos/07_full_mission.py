"""Run the scripted two-tube mission end to end and read the report.

One run wires every model together: the phase state machine walks
Transit/Settlement legs, each surveyed tube runs the exploration
simulator, winch descents bank regenerated energy into the next sol's
power balance, crew dose accumulates by phase, and a germination trial
fires on the first Settlement.
"""

from pathlib import Path

from tubescout import load_config, run_mission

CONFIG = Path(__file__).resolve().parent.parent / "scenarios" / "two_tube_mission.json"


def main() -> None:
    config = load_config(CONFIG)
    report = run_mission(config)
    mission = report["mission"]

    print(f"Mission script: {' -> '.join(mission['events'])}")
    print(f"Phase log:      {' -> '.join(mission['phase_log'])}")
    print()
    print(f"  sols simulated   {mission['sols_simulated']}")
    print(f"  tubes explored   {mission['tubes_explored']}")
    print(f"  crew dose        {mission['total_dose_msv']:.3f} mSv")
    print()

    print("Sol-by-sol energy ledger:")
    header = f"  {'sol':>3s} {'phase':<10s} {'soc Wh':>9s} {'shed Wh':>8s} " \
             f"{'regen Wh':>9s} {'dose mSv':>9s}"
    print(header)
    for entry in mission["sol_log"]:
        print(f"  {entry['sol']:3d} {entry['phase']:<10s} "
              f"{entry['final_soc_wh']:9.1f} {entry['total_shed_wh']:8.1f} "
              f"{entry['regen_injected_wh']:9.2f} {entry['dose_msv']:9.4f}")
    print()

    for i, tube in enumerate(report["exploration"]["tubes"]):
        print(f"Tube {i}: seed {tube['tube_seed']}, "
              f"coverage {tube['coverage_fraction']:.0%}, "
              f"{tube['steps']} ticks, regen {tube['energy_regen_wh']:.2f} Wh")
    print(f"Total regen credited: "
          f"{report['energy']['total_regen_credited_wh']:.2f} Wh")
    print()

    germination = mission["germination"]
    if germination is not None:
        rate = germination["germinated"] / germination["n_seeds"]
        print(f"Germination trial: {germination['germinated']:,} of "
              f"{germination['n_seeds']:,} seeds ({rate:.1%}) at "
              f"p={germination['p_germinate']}")
    print()

    if report["findings"]:
        print("Findings:")
        for finding in report["findings"]:
            print(f"  [{finding['kind']}] {finding['module']}: "
                  f"{finding['message']}")
    else:
        print("Findings: none")


if __name__ == "__main__":
    main()
