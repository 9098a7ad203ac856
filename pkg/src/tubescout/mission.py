"""Mission phase state machine plus the multi-sol scenario runner.

The runner composes every model in the package: it drives the phase
machine over a scripted event list, simulates a power sol per phase
visit, runs a tube survey on each survey-complete event (crediting the
winch regeneration into the next sol's supply), accumulates radiation
dose with a phase-dependent cave fraction, and emits one consolidated
report dictionary. Identical config and seed give identical reports.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, replace
from typing import TYPE_CHECKING

from tubescout.energy import PowerSource, SourceKind, simulate_sol
from tubescout.env import cumulative_dose
from tubescout.report import (
    Finding,
    _load_dict,
    aerostat_section,
    env_section,
    exploration_section,
    program_section,
    thermal_section,
    winch_section,
)
from tubescout.rng import GERMINATION_STREAM, Rng, derive_seed
from tubescout.tube_explorer import generate_tube, make_fleet, read_map_file, run_exploration

if TYPE_CHECKING:
    from tubescout.config import MissionConfig


class MissionPhase(enum.Enum):
    INITIAL = "Initial"
    TRANSIT = "Transit"
    SETTLEMENT = "Settlement"
    COMPLETE = "Complete"


class MissionEvent(enum.Enum):
    DEPLOYMENT_DONE = "DeploymentDone"
    ARRIVED_AT_TUBE = "ArrivedAtTube"
    TUBE_SURVEY_COMPLETE = "TubeSurveyComplete"
    RELOCATE_TO_NEXT_TUBE = "RelocateToNextTube"
    END_MISSION = "EndMission"


def mission_event_from(text: str) -> MissionEvent:
    for event in MissionEvent:
        if event.value == text:
            return event
    known = ", ".join(e.value for e in MissionEvent)
    raise ValueError(f"unknown mission event {text!r} (known: {known})")


class IllegalTransition(ValueError):
    """An event that the current mission phase does not accept."""


@dataclass(frozen=True)
class MissionState:
    phase: MissionPhase = MissionPhase.INITIAL
    sol: int = 0
    tubes_explored: int = 0

    def __post_init__(self):
        if self.sol < 0:
            raise ValueError(f"sol must be nonnegative, got {self.sol}")
        if self.tubes_explored < 0:
            raise ValueError(
                f"tubes_explored must be nonnegative, got {self.tubes_explored}")


#: Transit and settlement can loop to visit further tubes; a survey
#: completing keeps the crew-less outpost settled at the same tube.
_TRANSITIONS = {
    (MissionPhase.INITIAL, MissionEvent.DEPLOYMENT_DONE): MissionPhase.TRANSIT,
    (MissionPhase.TRANSIT, MissionEvent.ARRIVED_AT_TUBE): MissionPhase.SETTLEMENT,
    (MissionPhase.SETTLEMENT, MissionEvent.TUBE_SURVEY_COMPLETE): MissionPhase.SETTLEMENT,
    (MissionPhase.SETTLEMENT, MissionEvent.RELOCATE_TO_NEXT_TUBE): MissionPhase.TRANSIT,
}


def advance(state: MissionState, event: MissionEvent) -> MissionState:
    """Apply one event. EndMission completes the mission from any phase;
    a survey completing increments the explored-tube count; every other
    undefined (phase, event) pair raises IllegalTransition."""
    if event is MissionEvent.END_MISSION:
        return replace(state, phase=MissionPhase.COMPLETE)
    key = (state.phase, event)
    if key not in _TRANSITIONS:
        raise IllegalTransition(
            f"event {event.value} is not legal in phase {state.phase.value}")
    tubes = state.tubes_explored
    if event is MissionEvent.TUBE_SURVEY_COMPLETE:
        tubes += 1
    return MissionState(phase=_TRANSITIONS[key], sol=state.sol,
                        tubes_explored=tubes)


@dataclass(frozen=True)
class GerminationTrial:
    """Outcome of n independent seed-germination draws."""

    n_seeds: int
    p_germinate: float
    seed: int
    germinated: int

    def __post_init__(self):
        if self.n_seeds < 0:
            raise ValueError(f"n_seeds must be nonnegative, got {self.n_seeds}")
        if not 0.0 <= self.p_germinate <= 1.0:
            raise ValueError(
                f"p_germinate must be in [0, 1], got {self.p_germinate}")
        if not 0 <= self.germinated <= self.n_seeds:
            raise ValueError(
                f"germinated must be in [0, {self.n_seeds}], got {self.germinated}")


def germination_trial(n_seeds: int, p_germinate: float, seed: int) -> GerminationTrial:
    """Run n Bernoulli draws on the germination random stream."""
    if n_seeds < 0:
        raise ValueError(f"n_seeds must be nonnegative, got {n_seeds}")
    if not 0.0 <= p_germinate <= 1.0:
        raise ValueError(f"p_germinate must be in [0, 1], got {p_germinate}")
    rng = Rng(seed, GERMINATION_STREAM)
    germinated = sum(1 for _ in range(n_seeds) if rng.chance(p_germinate))
    return GerminationTrial(n_seeds=n_seeds, p_germinate=p_germinate,
                            seed=seed, germinated=germinated)


def run_mission(config: "MissionConfig", seed_override: int | None = None) -> dict:
    """Execute the scripted mission and return the consolidated report.

    Per phase visit the runner simulates the configured number of sols,
    carrying battery state of charge from sol to sol; loads tagged with
    phase names only draw during those phases. Each survey-complete
    event explores one tube (a fixed map file if configured, otherwise a
    tube generated from a per-tube derived seed) and credits the
    station's winch regeneration to the following sol. The germination
    trial runs on the first settlement entry.
    """
    settings = config.mission
    seed = settings.seed if seed_override is None else seed_override
    env = config.env
    findings: list[Finding] = []

    state = MissionState()
    phase_log = [state.phase]
    sol_log: list[dict] = []
    tube_sections: list[dict] = []
    battery = config.battery
    pending_regen_wh = 0.0
    total_regen_wh = 0.0
    total_dose_msv = 0.0
    germination: GerminationTrial | None = None
    infeasible_sols: list[int] = []

    def loads_for(phase: MissionPhase):
        return [t.load for t in config.loads if t.active_in(phase.value)]

    def simulate_segment(phase: MissionPhase) -> None:
        nonlocal state, battery, pending_regen_wh, total_dose_msv
        cave_fraction = settings.cave_fraction.get(phase.value, 0.0)
        loads = loads_for(phase)
        hard_names = {l.name for l in loads if not l.sheddable}
        for _ in range(settings.sols_per_phase.get(phase.value, 0)):
            sources = list(config.sources)
            injected_wh = pending_regen_wh
            if injected_wh > 0.0:
                sources.append(PowerSource("winch_regen", SourceKind.WINCH_REGEN,
                                           0.0, injected_wh))
                pending_regen_wh = 0.0
            trace = simulate_sol(sources, loads, battery, env, config.timestep_s)
            hard_violations = [v for v in trace.violations
                               if v.unmet_load_name in hard_names]
            if hard_violations:
                infeasible_sols.append(state.sol)
            dose_msv = cumulative_dose(env, cave_fraction, 1.0)
            total_dose_msv += dose_msv
            sol_log.append({
                "sol": state.sol,
                "phase": phase.value,
                "final_soc_wh": trace.final_soc_wh,
                "total_shed_wh": trace.total_shed_wh,
                "violations": len(trace.violations),
                "hard_violations": len(hard_violations),
                "regen_injected_wh": injected_wh,
                "dose_msv": dose_msv,
            })
            carried = min(max(trace.final_soc_wh, 0.0), battery.capacity_wh)
            battery = replace(battery, initial_soc_wh=carried)
            state = replace(state, sol=state.sol + 1)

    def explore_tube(index: int) -> float:
        exp = config.exploration
        if exp.map_file is not None:
            grid = read_map_file(exp.map_file)
            tube_seed = None
        else:
            gen = exp.generator
            tube_seed = derive_seed(seed, index)
            grid = generate_tube(tube_seed, gen.width, gen.height,
                                 gen.obstacle_density, gen.resolution_m)
        robots = make_fleet(grid, exp.robot_count, **exp.robot_overrides)
        result = run_exploration(grid, robots, station=exp.station,
                                 max_steps=exp.max_steps, env=env,
                                 sample_sites=exp.sample_sites)
        section, exp_findings = exploration_section(result, grid)
        section["tube_index"] = index
        section["tube_seed"] = tube_seed
        tube_sections.append(section)
        findings.extend(exp_findings)
        return result.energy_regen_wh

    simulate_segment(MissionPhase.INITIAL)
    for position, event in enumerate(settings.events, start=1):
        try:
            advanced = advance(state, event)
        except IllegalTransition as exc:
            raise IllegalTransition(
                f"mission event {position} of {len(settings.events)}: {exc}") from exc
        if event is MissionEvent.TUBE_SURVEY_COMPLETE:
            regen_wh = explore_tube(state.tubes_explored)
            pending_regen_wh += regen_wh
            total_regen_wh += regen_wh
        state = advanced
        phase_log.append(state.phase)
        if (state.phase is MissionPhase.SETTLEMENT and germination is None
                and settings.germination is not None):
            germination = germination_trial(settings.germination.n_seeds,
                                            settings.germination.p_germinate,
                                            seed)
        if state.phase is not MissionPhase.COMPLETE:
            simulate_segment(state.phase)

    if infeasible_sols:
        findings.append(Finding(
            kind="infeasible",
            module="energy",
            message=(f"unmet non-sheddable demand on "
                     f"{len(infeasible_sols)} sol(s)"),
            data={"sols": list(infeasible_sols)},
        ))
    aerostat_sec, aerostat_findings = aerostat_section(config.balloon, env)
    findings.extend(aerostat_findings)
    thermal_sec, thermal_findings = thermal_section(config.enclosure,
                                                    config.avionics, env)
    findings.extend(thermal_findings)
    prog = config.program
    program_sec, program_findings = program_section(
        prog.payloads, prog.limits, prog.wbs, prog.phases,
        prog.launch_year, prog.deadline_year,
        prog.fte_people, prog.fte_years, prog.fte_rate)
    findings.extend(program_findings)

    energy_sec = {
        "inputs": {
            "battery": asdict(config.battery),
            "sources": [asdict(s) | {"kind": s.kind.value} for s in config.sources],
            "loads": [_load_dict(t.load) | {"phases": list(t.phases) if t.phases else None}
                      for t in config.loads],
            "timestep_s": config.timestep_s,
        },
        "winch": winch_section(config.winch, env),
        "total_regen_credited_wh": total_regen_wh,
        "infeasible_sols": list(infeasible_sols),
    }
    mission_sec = {
        "events": [e.value for e in settings.events],
        "phase_log": [p.value for p in phase_log],
        "phases_visited": sorted({p.value for p in phase_log
                                  if p is not MissionPhase.COMPLETE}),
        "tubes_explored": state.tubes_explored,
        "sols_simulated": state.sol,
        "total_dose_msv": total_dose_msv,
        "germination": asdict(germination) if germination is not None else None,
        "sol_log": sol_log,
    }
    return {
        "env": env_section(env),
        "aerostat": aerostat_sec,
        "energy": energy_sec,
        "thermal": thermal_sec,
        "exploration": {"tubes": tube_sections, "total_regen_wh": total_regen_wh},
        "program": program_sec,
        "mission": mission_sec,
        "findings": [f.to_dict() for f in findings],
    }
