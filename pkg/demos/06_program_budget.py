"""Roll up the programmatics: mass/power budget, cost tree, staff, schedule.

Everything here is exact integer or closed-form arithmetic: the cost
rollup is a post-order sum over the work breakdown structure, the budget
compares payload totals against platform limits, and the schedule check
enforces lifecycle-phase ordering around a fixed launch year.
"""

from tubescout import (
    BudgetLimits,
    DEFAULT_DEADLINE_YEAR,
    DEFAULT_LAUNCH_YEAR,
    DEFAULT_PAYLOADS,
    DEFAULT_PHASES,
    DEFAULT_WBS,
    fte_estimate,
    rollup_budget,
    rollup_cost,
    validate_schedule,
)


def print_wbs(node, indent: int = 0) -> None:
    label = f"{'  ' * indent}{node.name}"
    print(f"  {label:44s} ${rollup_cost(node):>12,}")
    for child in node.children:
        print_wbs(child, indent + 1)


def main() -> None:
    print("Payload manifest")
    for payload in DEFAULT_PAYLOADS:
        print(f"  {payload.name:18s} {payload.mass_kg:6.0f} kg  "
              f"{payload.volume_m3:7.4f} m^3  {payload.power_w:7.1f} W  "
              f"${payload.wbs_cost_usd:>12,}")
    budget = rollup_budget(DEFAULT_PAYLOADS, BudgetLimits())
    print(f"  {'total':18s} {budget.total_mass_kg:6.0f} kg  "
          f"{budget.total_volume_m3:7.4f} m^3  {budget.peak_power_w:7.1f} W")
    print(f"  budget passes: {budget.passes} "
          f"(margins: {budget.margins['payload_mass_kg']:.0f} kg payload, "
          f"{budget.margins['volume_m3']:.1f} m^3)")
    print()

    print("Cost rollup (level-2 work breakdown, payload elements)")
    print_wbs(DEFAULT_WBS)
    print()

    people, years, rate = 600, 10, 220
    print(f"Staffing: {people} people x {years} years x {rate} "
          f"FTE-days = {fte_estimate(people, years, rate):,}")
    print()

    print(f"Lifecycle phases (launch {DEFAULT_LAUNCH_YEAR}, "
          f"deadline {DEFAULT_DEADLINE_YEAR})")
    for phase in DEFAULT_PHASES:
        print(f"  phase {phase.code.value:4s} starts {phase.start_year}")
    check = validate_schedule(DEFAULT_PHASES, DEFAULT_LAUNCH_YEAR,
                              DEFAULT_DEADLINE_YEAR)
    print(f"  schedule valid: {check.ok}")

    late = validate_schedule(DEFAULT_PHASES, DEFAULT_LAUNCH_YEAR + 3,
                             DEFAULT_DEADLINE_YEAR)
    print(f"  slipping launch to {DEFAULT_LAUNCH_YEAR + 3}: ok={late.ok}")
    for finding in late.findings:
        print(f"    [{finding.rule}] {finding.message}")


if __name__ == "__main__":
    main()
