"""Simulate one sol of the baseline power system, then fix it.

The baseline pairs a 110 W RTG with a 511.5 W greenhouse night heater
and no battery. That system sheds load all night; the numbers say so,
and the simulator makes the gap explicit. Adding a battery sized for the
night (charged by the same RTG during the day) closes it.
"""

from tubescout import (
    Battery,
    MarsEnvironment,
    PowerLoad,
    PowerSource,
    SourceKind,
    schedule_loads,
    simulate_sol,
)


def describe(tag: str, trace) -> None:
    violations = trace.violations
    print(f"  {tag}")
    print(f"    final state of charge {trace.final_soc_wh:9.1f} Wh")
    print(f"    energy shed           {trace.total_shed_wh:9.1f} Wh")
    if violations:
        first, last = violations[0], violations[-1]
        worst = max(v.deficit_w for v in violations)
        print(f"    {len(violations)} violation steps from t={first.time_s:.0f} s "
              f"to t={last.time_s:.0f} s, worst deficit {worst:.1f} W")
    else:
        print("    no violations: every load served all sol")


def main() -> None:
    env = MarsEnvironment()
    rtg = PowerSource(name="rtg", kind=SourceKind.CONSTANT, rating_w=110.0)
    night = (env.night_start_s, env.sol_length_s)
    heater = PowerLoad(name="greenhouse_heater", power_w=511.5,
                       window=night, sheddable=False)

    print("Baseline: 110 W RTG, 511.5 W night heater, no battery")
    bare = simulate_sol([rtg], [heater], Battery(capacity_wh=0.0,
                                                 initial_soc_wh=0.0), env)
    describe("as designed", bare)
    print()

    deficit_wh = (511.5 - 110.0) * env.night_duration_s / 3600.0
    battery = Battery(capacity_wh=6000.0, initial_soc_wh=6000.0)
    print(f"Night deficit is {deficit_wh:.0f} Wh; retry with a "
          f"{battery.capacity_wh:.0f} Wh battery")
    fixed = simulate_sol([rtg], [heater], battery, env)
    describe("with battery", fixed)
    print()

    print("Greedy admission when demand exceeds supply (priority order):")
    loads = [
        heater,
        PowerLoad(name="gas_chromatograph", power_w=120.0, sheddable=True,
                  priority=5),
        PowerLoad(name="avionics", power_w=30.0, sheddable=False, priority=0),
    ]
    plan = schedule_loads([rtg], loads, battery, env)
    for name, admitted in sorted(plan.verdicts.items()):
        print(f"    {name:20s} {'admitted' if admitted else 'deferred'}")
    print(f"    plan feasible for all loads: {plan.feasible}")


if __name__ == "__main__":
    main()
