"""Report assembly: findings taxonomy, canonical JSON, per-module sections.

Every section carries an ``inputs`` echo alongside its results so each
number in a report is traceable to the values that produced it. Reports
serialize with sorted keys and no timestamps, so identical inputs give
byte-identical output.
"""

from __future__ import annotations

import enum
import json
from dataclasses import asdict, dataclass, field

from tubescout.aerostat import (
    AreaModel,
    BalloonConfig,
    BuoyancyResult,
    buoyancy_margin,
    gas_density_for,
)
from tubescout.energy import (
    Battery,
    PowerLoad,
    PowerSource,
    SocTrace,
    WinchSpec,
    schedule_loads,
    simulate_sol,
    winch_power,
    winch_regen_energy,
)
from tubescout.env import MarsEnvironment, cumulative_dose
from tubescout.program import (
    BudgetLimits,
    LifecyclePhase,
    PayloadSpec,
    WbsNode,
    fte_estimate,
    rollup_budget,
    rollup_cost,
    validate_schedule,
)
from tubescout.thermal import (
    AvionicsEnvelope,
    GlazedEnclosure,
    avionics_envelope_check,
    greenhouse_night_load,
    heat_loss,
    night_heating_energy,
)
from tubescout.tube_explorer import ExplorationReport, GridMap

#: The three classes of report findings: a modeled system that cannot
#: meet its own demands, a model output that contradicts the published
#: baseline value, and a crossed design limit.
FINDING_KINDS = ("infeasible", "discrepancy_vs_paper", "limit_violation")


@dataclass(frozen=True)
class Finding:
    kind: str
    module: str
    message: str
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in FINDING_KINDS:
            raise ValueError(
                f"finding kind must be one of {FINDING_KINDS}, got {self.kind!r}")
        if not self.module or not self.message:
            raise ValueError("finding module and message must be nonempty")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "module": self.module,
                "message": self.message, "data": dict(self.data)}


def _json_default(obj):
    if isinstance(obj, enum.Enum):
        return obj.value
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def dump_json(payload) -> str:
    """Canonical report serialization: sorted keys, two-space indent,
    trailing newline, numpy scalars and enums coerced to plain JSON."""
    return json.dumps(payload, indent=2, sort_keys=True,
                      default=_json_default) + "\n"


def env_section(env: MarsEnvironment) -> dict:
    section = asdict(env)
    section["day_duration_s"] = env.day_duration_s
    section["night_start_s"] = env.night_start_s
    return section


def _buoyancy_dict(result: BuoyancyResult) -> dict:
    d = asdict(result)
    d["area_model"] = result.area_model.value
    return d


def aerostat_section(balloon: BalloonConfig, env: MarsEnvironment) -> tuple[dict, list[Finding]]:
    """Evaluate buoyancy under both hull-area conventions.

    The configured model gives the section verdict. When the two models
    disagree about whether the aerostat floats, that disagreement is
    itself a result: the published sizing only closes under the
    outer-lateral-only area accounting.
    """
    by_model = {model.value: buoyancy_margin(balloon, env, area_model=model)
                for model in AreaModel}
    configured = by_model[balloon.area_model.value]
    section = {
        "inputs": _balloon_echo(balloon),
        "ambient_density_kg_m3": env.ambient_density,
        "gas_density_kg_m3": gas_density_for(balloon, env),
        "by_area_model": {name: _buoyancy_dict(r) for name, r in by_model.items()},
        "area_model": balloon.area_model.value,
        "buoyant": configured.buoyant,
        "net_force_n": configured.net_force_n,
    }
    findings = []
    verdicts = {r.buoyant for r in by_model.values()}
    if len(verdicts) > 1:
        findings.append(Finding(
            kind="discrepancy_vs_paper",
            module="aerostat",
            message=("buoyancy verdict depends on the hull-area convention: "
                     "outer-lateral-only floats, full-wetted does not"),
            data={name: {"overall_density_kg_m3": r.overall_density_kg_m3,
                         "buoyant": r.buoyant}
                  for name, r in by_model.items()},
        ))
    if not configured.buoyant:
        findings.append(Finding(
            kind="infeasible",
            module="aerostat",
            message=(f"aerostat is denser than ambient air "
                     f"({configured.overall_density_kg_m3:.6f} > "
                     f"{env.ambient_density:.6f} kg/m3)"),
            data={"overall_density_kg_m3": configured.overall_density_kg_m3},
        ))
    return section, findings


def _balloon_echo(balloon: BalloonConfig) -> dict:
    echo = asdict(balloon)
    echo["area_model"] = balloon.area_model.value
    return echo


def winch_section(winch: WinchSpec, env: MarsEnvironment) -> dict:
    power = winch_power(winch, env)
    return {
        "inputs": asdict(winch),
        "raw_kw": power.raw_kw,
        "with_margin_kw": power.with_margin_kw,
        "regen_wh_per_descent": winch_regen_energy(winch, env),
    }


def thermal_section(enclosure: GlazedEnclosure, envelope: AvionicsEnvelope,
                    env: MarsEnvironment,
                    heater_on: bool | None = None) -> tuple[dict, list[Finding]]:
    if heater_on is None:
        # An installed survival heater is assumed to run when needed.
        heater_on = envelope.heater_power_w > 0
    night_load = greenhouse_night_load(enclosure, env)
    check = avionics_envelope_check(env, envelope, heater_on=heater_on)
    section = {
        "inputs": {"enclosure": asdict(enclosure), "avionics": asdict(envelope),
                   "heater_on": heater_on},
        "trough_heat_loss_w": heat_loss(enclosure, env.night_low_c),
        "night_energy_kwh": night_heating_energy(enclosure, env),
        "night_load": _load_dict(night_load),
        "avionics": {
            "ok": check.ok,
            "worst_margin_c": check.worst_margin_c,
            "violation_windows_s": [list(w) for w in check.violation_windows],
        },
    }
    findings = []
    if not check.ok:
        findings.append(Finding(
            kind="limit_violation",
            module="thermal",
            message=(f"electronics leave their qualification envelope by "
                     f"{-check.worst_margin_c:.1f} degC over "
                     f"{len(check.violation_windows)} window(s) of the sol"),
            data={"worst_margin_c": check.worst_margin_c,
                  "violation_windows_s": [list(w) for w in check.violation_windows]},
        ))
    return section, findings


def _load_dict(load: PowerLoad) -> dict:
    d = asdict(load)
    d["window_s"] = list(load.window) if load.window is not None else None
    del d["window"]
    return d


def _source_dict(source: PowerSource) -> dict:
    d = asdict(source)
    d["kind"] = source.kind.value
    return d


def power_section(sources: tuple[PowerSource, ...], loads: tuple[PowerLoad, ...],
                  battery: Battery, env: MarsEnvironment,
                  timestep_s: float) -> tuple[dict, list[Finding], SocTrace]:
    """Simulate one sol with every load attached, then ask the greedy
    scheduler which subset would have been admissible. Returns the full
    trace as well, for callers that emit CSV."""
    trace = simulate_sol(list(sources), list(loads), battery, env, timestep_s)
    schedule = schedule_loads(list(sources), list(loads), battery, env, timestep_s)
    hard_names = {l.name for l in loads if not l.sheddable}
    hard_violations = [v for v in trace.violations if v.unmet_load_name in hard_names]
    section = {
        "inputs": {
            "battery": asdict(battery),
            "sources": [_source_dict(s) for s in sources],
            "loads": [_load_dict(l) for l in loads],
            "timestep_s": timestep_s,
        },
        "final_soc_wh": trace.final_soc_wh,
        "total_shed_wh": trace.total_shed_wh,
        "violation_count": len(trace.violations),
        "unmet_loads": sorted(trace.violated_load_names()),
        "feasible": not hard_violations,
        "schedule": {
            "admitted": [l.name for l in schedule.admitted],
            "feasible": schedule.feasible,
            "verdicts": schedule.verdicts,
        },
    }
    findings = []
    if hard_violations:
        times = [v.time_s for v in hard_violations]
        findings.append(Finding(
            kind="infeasible",
            module="energy",
            message=(f"{len(hard_violations)} unmet-demand violations on "
                     f"non-sheddable loads spanning t = {min(times):.0f} s "
                     f"to {max(times):.0f} s"),
            data={
                "violation_count": len(hard_violations),
                "first_violation_s": min(times),
                "last_violation_s": max(times),
                "max_deficit_w": max(v.deficit_w for v in hard_violations),
                "loads": sorted({v.unmet_load_name for v in hard_violations}),
            },
        ))
    return section, findings, trace


def exploration_section(report: ExplorationReport,
                        grid: GridMap) -> tuple[dict, list[Finding]]:
    section = {
        "inputs": {
            "width": grid.width,
            "height": grid.height,
            "entrance": list(grid.entrance),
            "resolution_m": grid.resolution_m,
            "obstacle_count": int((grid.cells == 1).sum()),
        },
        "steps": report.steps,
        "coverage_fraction": report.coverage_fraction,
        "samples_delivered": report.samples_delivered,
        "energy_regen_wh": report.energy_regen_wh,
        "per_robot": [asdict(s) for s in report.per_robot_stats],
    }
    findings = []
    if report.coverage_fraction < 1.0:
        findings.append(Finding(
            kind="infeasible",
            module="tube_explorer",
            message=(f"survey stopped at coverage "
                     f"{report.coverage_fraction:.3f} after {report.steps} steps"),
            data={"coverage_fraction": report.coverage_fraction,
                  "steps": report.steps},
        ))
    return section, findings


def radiation_section(env: MarsEnvironment, cave_fraction: float) -> dict:
    return {
        "inputs": {"dose_surface_msv": env.dose_surface_msv,
                   "dose_cave_msv": env.dose_cave_msv,
                   "cave_fraction": cave_fraction},
        "dose_per_period_msv": cumulative_dose(env, cave_fraction, 1.0),
    }


def _wbs_dict(node: WbsNode) -> dict:
    d = {"name": node.name, "level": node.level}
    if node.cost_usd is not None:
        d["cost_usd"] = node.cost_usd
    if node.children:
        d["children"] = [_wbs_dict(c) for c in node.children]
        d["subtotal_usd"] = rollup_cost(node)
    if node.note:
        d["note"] = node.note
    return d


def budget_section(payloads: tuple[PayloadSpec, ...],
                   limits: BudgetLimits) -> tuple[dict, list[Finding]]:
    result = rollup_budget(payloads, limits)
    section = {
        "inputs": {"payloads": [asdict(p) for p in payloads],
                   "limits": asdict(limits)},
        "total_mass_kg": result.total_mass_kg,
        "total_volume_m3": result.total_volume_m3,
        "peak_power_w": result.peak_power_w,
        "passes": result.passes,
        "margins": dict(result.margins),
    }
    findings = []
    if not result.passes:
        over = {k: v for k, v in result.margins.items() if v < 0}
        findings.append(Finding(
            kind="limit_violation",
            module="program",
            message="payload registry exceeds the lander allocation: "
                    + ", ".join(f"{k} over by {-v:g}" for k, v in sorted(over.items())),
            data={"margins": dict(result.margins)},
        ))
    return section, findings


def cost_section(wbs: WbsNode) -> dict:
    return {
        "inputs": {"wbs": _wbs_dict(wbs)},
        "total_cost_usd": rollup_cost(wbs),
        "by_child_usd": {c.name: rollup_cost(c) for c in wbs.children},
    }


def schedule_section(phases: tuple[LifecyclePhase, ...], launch_year: int,
                     deadline_year: int) -> tuple[dict, list[Finding]]:
    check = validate_schedule(phases, launch_year, deadline_year)
    section = {
        "inputs": {
            "phases": [{"code": p.code.value, "start_year": p.start_year}
                       for p in phases],
            "launch_year": launch_year,
            "deadline_year": deadline_year,
        },
        "ok": check.ok,
        "findings": [{"rule": f.rule, "message": f.message}
                     for f in check.findings],
    }
    findings = []
    if not check.ok:
        findings.append(Finding(
            kind="limit_violation",
            module="program",
            message="schedule check failed: "
                    + "; ".join(f.message for f in check.findings),
            data={"rules": sorted({f.rule for f in check.findings})},
        ))
    return section, findings


def program_section(payloads: tuple[PayloadSpec, ...], limits: BudgetLimits,
                    wbs: WbsNode, phases: tuple[LifecyclePhase, ...],
                    launch_year: int, deadline_year: int,
                    fte_people: int, fte_years: int,
                    fte_rate: int) -> tuple[dict, list[Finding]]:
    budget, budget_findings = budget_section(payloads, limits)
    schedule, schedule_findings = schedule_section(phases, launch_year,
                                                   deadline_year)
    section = {
        "budget": budget,
        "cost": cost_section(wbs),
        "schedule": schedule,
        "staffing": {
            "inputs": {"people": fte_people, "years": fte_years,
                       "fte_per_person_year": fte_rate},
            "total_fte": fte_estimate(fte_people, fte_years, fte_rate),
        },
    }
    return section, budget_findings + schedule_findings
