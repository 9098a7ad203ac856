"""Power budget toolkit: winch mechanics, sources, loads and battery SoC.

The winch model converts lowering/raising a payload into motor power and
regenerated energy. The sol simulator steps a battery through one
Martian day against a set of constant sources and windowed loads,
recording state of charge, shed power and per-load supply violations.
A greedy scheduler on top admits loads in priority order and reports
which subset is actually supportable.

All simulation here is deterministic: constant source ratings, explicit
time stepping, no randomness.
"""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass, field

import numpy as np

from .env import MarsEnvironment

#: Power differences below this are treated as zero (float noise guard).
POWER_EPSILON_W = 1e-9

#: Default simulation resolution. 25 s divides the 88775 s sol exactly
#: (3551 steps) and lands a step boundary on the 44375 s night start.
DEFAULT_TIMESTEP_S = 25.0


@dataclass(frozen=True)
class WinchSpec:
    """Tube-access winch sized for lowering a rover-class payload."""

    payload_mass_kg: float = 500.0
    line_speed_mps: float = 0.4
    depth_m: float = 100.0
    motor_margin: float = 0.10
    regen_efficiency: float = 0.70

    def __post_init__(self):
        if self.payload_mass_kg <= 0:
            raise ValueError(
                f"payload_mass_kg must be positive, got {self.payload_mass_kg}")
        if self.line_speed_mps <= 0:
            raise ValueError(
                f"line_speed_mps must be positive, got {self.line_speed_mps}")
        if self.depth_m <= 0:
            raise ValueError(f"depth_m must be positive, got {self.depth_m}")
        if self.motor_margin < 0:
            raise ValueError(f"motor_margin must be nonnegative, got {self.motor_margin}")
        if not 0.0 <= self.regen_efficiency <= 1.0:
            raise ValueError(
                f"regen_efficiency must be in [0, 1], got {self.regen_efficiency}")


#: Baseline winch: 500 kg payload at 0.4 m/s over a 100 m drop, 10% motor
#: margin, 70% round-trip generator efficiency.
REFERENCE_WINCH = WinchSpec()


@dataclass(frozen=True)
class WinchPower:
    raw_kw: float
    with_margin_kw: float


def winch_power(spec: WinchSpec, env: MarsEnvironment) -> WinchPower:
    """Steady hoisting power m*g*v, with and without the motor margin."""
    raw = spec.payload_mass_kg * env.gravity * spec.line_speed_mps / 1000.0
    return WinchPower(raw_kw=raw, with_margin_kw=raw * (1.0 + spec.motor_margin))


def winch_regen_energy(spec: WinchSpec, env: MarsEnvironment) -> float:
    """Energy in Wh recovered by one controlled descent of the payload."""
    joules = spec.payload_mass_kg * env.gravity * spec.depth_m * spec.regen_efficiency
    return joules / 3600.0


class SourceKind(enum.Enum):
    CONSTANT = "constant"          # e.g. an RTG
    WIND_TURBINE = "wind_turbine"  # constant rating at the scenario wind speed
    WINCH_REGEN = "winch_regen"    # one-shot energy credit at sol start
    TRICKLE = "trickle"            # e.g. atmospheric electricity collection


@dataclass(frozen=True)
class PowerSource:
    """A supply-side element. ``rating_w`` applies continuously for all
    kinds except WINCH_REGEN, whose ``event_energy_wh`` is injected during
    the first timestep of the sol."""

    name: str
    kind: SourceKind = SourceKind.CONSTANT
    rating_w: float = 0.0
    event_energy_wh: float = 0.0

    def __post_init__(self):
        if not self.name:
            raise ValueError("source name must be nonempty")
        if self.rating_w < 0:
            raise ValueError(f"rating_w must be nonnegative, got {self.rating_w}")
        if self.event_energy_wh < 0:
            raise ValueError(
                f"event_energy_wh must be nonnegative, got {self.event_energy_wh}")


@dataclass(frozen=True)
class PowerLoad:
    """A demand-side element active during ``window`` (seconds within a
    sol, start inclusive, end exclusive). ``window=None`` means always on.
    Lower ``priority`` is more critical; sheddable loads are dropped first
    when supply falls short."""

    name: str
    power_w: float
    window: tuple[float, float] | None = None
    priority: int = 0
    sheddable: bool = False

    def __post_init__(self):
        if not self.name:
            raise ValueError("load name must be nonempty")
        if self.power_w < 0:
            raise ValueError(f"power_w must be nonnegative, got {self.power_w}")
        if self.window is not None:
            start, end = self.window
            if not 0.0 <= start < end:
                raise ValueError(
                    f"load window needs 0 <= start < end, got {self.window}")

    def active_at(self, time_s: float) -> bool:
        if self.window is None:
            return True
        return self.window[0] <= time_s < self.window[1]


@dataclass(frozen=True)
class Battery:
    capacity_wh: float = 1000.0
    initial_soc_wh: float = 500.0
    charge_efficiency: float = 0.95
    discharge_efficiency: float = 0.95

    def __post_init__(self):
        if self.capacity_wh < 0:
            raise ValueError(f"capacity_wh must be nonnegative, got {self.capacity_wh}")
        if not 0.0 <= self.initial_soc_wh <= self.capacity_wh:
            raise ValueError(
                f"initial_soc_wh must be in [0, {self.capacity_wh}], "
                f"got {self.initial_soc_wh}")
        for name in ("charge_efficiency", "discharge_efficiency"):
            value = getattr(self, name)
            if not 0.0 < value <= 1.0:
                raise ValueError(f"{name} must be in (0, 1], got {value}")


@dataclass(frozen=True)
class Violation:
    """One load (partially) unserved during one timestep."""

    time_s: float
    unmet_load_name: str
    deficit_w: float


@dataclass(frozen=True)
class SocTrace:
    """Stepwise record of one simulated sol.

    ``soc_wh`` has one more sample than the step arrays: entry i is the
    state of charge at time i*timestep_s, entry [-1] at the end of the
    sol. ``charged_wh``/``discharged_wh`` are the actual per-step battery
    deltas, so SoC closure holds exactly:
    soc[i+1] = soc[i] + charged_wh[i] - discharged_wh[i].
    """

    timestep_s: float
    soc_wh: np.ndarray
    supply_w: np.ndarray
    demand_w: np.ndarray
    shed_w: np.ndarray
    charged_wh: np.ndarray
    discharged_wh: np.ndarray
    violations: tuple[Violation, ...] = field(default=())

    @property
    def final_soc_wh(self) -> float:
        return float(self.soc_wh[-1])

    @property
    def total_shed_wh(self) -> float:
        return float(np.sum(self.shed_w)) * self.timestep_s / 3600.0

    def violated_load_names(self) -> set[str]:
        return {v.unmet_load_name for v in self.violations}


def _check_unique_names(items, what: str) -> None:
    seen = set()
    for item in items:
        if item.name in seen:
            raise ValueError(f"duplicate {what} name {item.name!r}")
        seen.add(item.name)


def _shed_order(loads: list[PowerLoad]) -> list[PowerLoad]:
    """Order in which unmet demand is assigned: sheddable loads first,
    least critical first, then non-sheddable loads the same way."""
    sheddable = sorted((l for l in loads if l.sheddable),
                       key=lambda l: (-l.priority, l.name))
    hard = sorted((l for l in loads if not l.sheddable),
                  key=lambda l: (-l.priority, l.name))
    return sheddable + hard


def simulate_sol(sources: list[PowerSource], loads: list[PowerLoad],
                 battery: Battery, env: MarsEnvironment,
                 timestep_s: float = DEFAULT_TIMESTEP_S) -> SocTrace:
    """Step a battery through one sol of supply and demand.

    Each step: surplus charges the battery at ``charge_efficiency`` (and
    is lost once the battery is full); deficit discharges it at
    ``discharge_efficiency``; remaining unmet demand is shed, sheddable
    and least critical loads first, and recorded as one violation per
    affected load per step.

    Raises:
        ValueError: on a nonpositive timestep, a timestep that does not
            divide the sol, a load window past the end of the sol,
            duplicate source/load names, or a system with no source and
            an empty battery.
    """
    if timestep_s <= 0:
        raise ValueError(f"timestep_s must be positive, got {timestep_s}")
    steps_exact = env.sol_length_s / timestep_s
    n_steps = round(steps_exact)
    if n_steps == 0 or abs(steps_exact - n_steps) > 1e-9:
        raise ValueError(
            f"timestep_s must divide the sol length: {timestep_s} s does not "
            f"divide {env.sol_length_s} s")
    _check_unique_names(sources, "source")
    _check_unique_names(loads, "load")
    for load in loads:
        if load.window is not None and load.window[1] > env.sol_length_s:
            raise ValueError(
                f"load {load.name!r} window {load.window} extends past the "
                f"{env.sol_length_s} s sol")
    if not sources and battery.initial_soc_wh == 0 and loads:
        raise ValueError("no power source and an empty battery cannot serve loads")

    dt_h = timestep_s / 3600.0
    base_supply_w = sum(s.rating_w for s in sources if s.kind is not SourceKind.WINCH_REGEN)
    event_wh = sum(s.event_energy_wh for s in sources if s.kind is SourceKind.WINCH_REGEN)

    soc = np.empty(n_steps + 1)
    supply_w = np.empty(n_steps)
    demand_w = np.empty(n_steps)
    shed_w = np.zeros(n_steps)
    charged_wh = np.zeros(n_steps)
    discharged_wh = np.zeros(n_steps)
    violations: list[Violation] = []

    soc[0] = battery.initial_soc_wh
    shed_order = _shed_order(list(loads))

    for i in range(n_steps):
        t = i * timestep_s
        supply = base_supply_w
        if i == 0 and event_wh > 0:
            supply += event_wh / dt_h
        active = [l for l in loads if l.active_at(t)]
        demand = sum(l.power_w for l in active)
        supply_w[i] = supply
        demand_w[i] = demand

        before = soc[i]
        after = before
        if supply >= demand - POWER_EPSILON_W:
            surplus_wh = max(0.0, supply - demand) * dt_h
            stored = min(surplus_wh * battery.charge_efficiency,
                         battery.capacity_wh - before)
            after = before + stored
        else:
            need_wh = (demand - supply) * dt_h
            deliverable_wh = before * battery.discharge_efficiency
            delivered = min(need_wh, deliverable_wh)
            after = max(0.0, before - delivered / battery.discharge_efficiency)
            unmet_w = (need_wh - delivered) / dt_h
            if unmet_w > POWER_EPSILON_W:
                shed_w[i] = unmet_w
                remaining = unmet_w
                for load in shed_order:
                    if remaining <= POWER_EPSILON_W:
                        break
                    if not load.active_at(t) or load.power_w <= 0:
                        continue
                    cut = min(load.power_w, remaining)
                    violations.append(Violation(
                        time_s=t, unmet_load_name=load.name, deficit_w=cut))
                    remaining -= cut

        soc[i + 1] = after
        if after > before:
            charged_wh[i] = after - before
        elif before > after:
            discharged_wh[i] = before - after

    return SocTrace(
        timestep_s=timestep_s,
        soc_wh=soc,
        supply_w=supply_w,
        demand_w=demand_w,
        shed_w=shed_w,
        charged_wh=charged_wh,
        discharged_wh=discharged_wh,
        violations=tuple(violations),
    )


@dataclass(frozen=True)
class ScheduleResult:
    admitted: tuple[PowerLoad, ...]
    feasible: bool
    verdicts: dict[str, bool]
    trace: SocTrace


def schedule_loads(sources: list[PowerSource], loads: list[PowerLoad],
                   battery: Battery, env: MarsEnvironment,
                   timestep_s: float = DEFAULT_TIMESTEP_S) -> ScheduleResult:
    """Greedily admit loads in ascending (priority, name) order.

    A candidate is admitted iff simulating the already admitted set plus
    the candidate produces no violation on any non-sheddable load.
    ``feasible`` is true iff every input load is admitted. The returned
    trace re-simulates the final admitted set.
    """
    _check_unique_names(loads, "load")
    ordered = sorted(loads, key=lambda l: (l.priority, l.name))
    admitted: list[PowerLoad] = []
    verdicts: dict[str, bool] = {}
    for load in ordered:
        trial = simulate_sol(sources, admitted + [load], battery, env, timestep_s)
        hard_names = {l.name for l in admitted + [load] if not l.sheddable}
        ok = not (trial.violated_load_names() & hard_names)
        verdicts[load.name] = ok
        if ok:
            admitted.append(load)
    trace = simulate_sol(sources, admitted, battery, env, timestep_s)
    return ScheduleResult(
        admitted=tuple(admitted),
        feasible=len(admitted) == len(loads),
        verdicts=verdicts,
        trace=trace,
    )


def write_soc_csv(path, trace: SocTrace) -> None:
    """Write one row per step: time_s, end-of-step SoC, and that step's
    supply, demand and shed power."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["time_s", "soc_wh", "supply_w", "demand_w", "shed_w"])
        n = len(trace.supply_w)
        for i in range(n):
            writer.writerow([
                f"{i * trace.timestep_s:.6g}",
                f"{trace.soc_wh[i + 1]:.6f}",
                f"{trace.supply_w[i]:.6f}",
                f"{trace.demand_w[i]:.6f}",
                f"{trace.shed_w[i]:.6f}",
            ])
