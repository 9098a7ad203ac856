"""Scenario configuration: JSON loading, validation, defaults.

One JSON file describes one scenario. Every block is optional and falls
back to the built-in baseline; unknown keys are rejected everywhere.
Validation walks the whole file and reports every problem found, each
tagged with its config path (for example ``balloon.geometry``), rather
than stopping at the first.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

from tubescout.aerostat import REFERENCE_BALLOON, AreaModel, BalloonConfig, BalloonGeometry
from tubescout.energy import (
    DEFAULT_TIMESTEP_S,
    REFERENCE_WINCH,
    Battery,
    PowerLoad,
    PowerSource,
    SourceKind,
    WinchSpec,
)
from tubescout.env import MarsEnvironment, make_environment
from tubescout.mission import MissionEvent, MissionPhase, mission_event_from
from tubescout.program import (
    DEFAULT_DEADLINE_YEAR,
    DEFAULT_LAUNCH_YEAR,
    DEFAULT_PAYLOADS,
    DEFAULT_PHASES,
    DEFAULT_WBS,
    BudgetLimits,
    LifecyclePhase,
    PayloadSpec,
    WbsNode,
    parse_money,
    phase_code_from,
)
from tubescout.thermal import REFERENCE_GREENHOUSE, AvionicsEnvelope, GlazedEnclosure
from tubescout.tube_explorer import SampleSite, Station


class ConfigError(Exception):
    """Carries every validation problem as (config_path, message) pairs."""

    def __init__(self, errors):
        self.errors = [(str(path), str(message)) for path, message in errors]
        detail = "; ".join(f"{path}: {message}" for path, message in self.errors)
        super().__init__(f"invalid configuration: {detail}")


_PHASE_NAMES = tuple(p.value for p in MissionPhase)


@dataclass(frozen=True)
class TaggedLoad:
    """A power load plus the mission phases during which it draws.
    ``phases`` of None means the load is always attached."""

    load: PowerLoad
    phases: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.phases is not None:
            for phase in self.phases:
                if phase not in _PHASE_NAMES:
                    raise ValueError(
                        f"unknown phase {phase!r} (known: {', '.join(_PHASE_NAMES)})")

    def active_in(self, phase_name: str) -> bool:
        return self.phases is None or phase_name in self.phases


@dataclass(frozen=True)
class GeneratorSettings:
    """Parameters for procedurally generated tube maps."""

    width: int = 20
    height: int = 20
    obstacle_density: float = 0.2
    resolution_m: float = 1.0

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(
                f"map dimensions must be at least 1x1, got "
                f"{self.width}x{self.height}")
        if not 0.0 <= self.obstacle_density <= 1.0:
            raise ValueError(
                f"obstacle_density must be in [0, 1], got {self.obstacle_density}")
        if self.resolution_m <= 0:
            raise ValueError(
                f"resolution_m must be positive, got {self.resolution_m}")


@dataclass(frozen=True)
class ExplorationSettings:
    map_file: str | None = None
    generator: GeneratorSettings = GeneratorSettings()
    robot_count: int = 3
    robot_overrides: dict = field(default_factory=dict)
    max_steps: int = 10_000
    sample_sites: tuple[SampleSite, ...] = ()
    station: Station = Station(winch=REFERENCE_WINCH)
    final_drop_m: float = 0.0


@dataclass(frozen=True)
class ProgramSettings:
    payloads: tuple[PayloadSpec, ...] = DEFAULT_PAYLOADS
    limits: BudgetLimits = BudgetLimits()
    wbs: WbsNode = DEFAULT_WBS
    phases: tuple[LifecyclePhase, ...] = DEFAULT_PHASES
    launch_year: int = DEFAULT_LAUNCH_YEAR
    deadline_year: int = DEFAULT_DEADLINE_YEAR
    fte_people: int = 600
    fte_years: int = 10
    fte_rate: int = 220


@dataclass(frozen=True)
class GerminationSettings:
    n_seeds: int = 10_000
    p_germinate: float = 0.7


def _default_sols() -> dict:
    return {"Initial": 1, "Transit": 1, "Settlement": 1}


def _default_cave_fraction() -> dict:
    # Station at the entrance, robots inside: half the period is shielded.
    return {"Initial": 0.0, "Transit": 0.0, "Settlement": 0.5}


@dataclass(frozen=True)
class MissionSettings:
    events: tuple[MissionEvent, ...] = (
        MissionEvent.DEPLOYMENT_DONE,
        MissionEvent.ARRIVED_AT_TUBE,
        MissionEvent.TUBE_SURVEY_COMPLETE,
        MissionEvent.END_MISSION,
    )
    sols_per_phase: dict = field(default_factory=_default_sols)
    cave_fraction: dict = field(default_factory=_default_cave_fraction)
    seed: int = 42
    germination: GerminationSettings | None = GerminationSettings()


@dataclass(frozen=True)
class MissionConfig:
    """Fully resolved scenario: every block validated into model types."""

    env_preset: str = "nili_fossae_default"
    env_overrides: dict = field(default_factory=dict)
    env: MarsEnvironment = MarsEnvironment()
    balloon: BalloonConfig = REFERENCE_BALLOON
    winch: WinchSpec = REFERENCE_WINCH
    enclosure: GlazedEnclosure = REFERENCE_GREENHOUSE
    avionics: AvionicsEnvelope = AvionicsEnvelope()
    battery: Battery = Battery()
    timestep_s: float = DEFAULT_TIMESTEP_S
    sources: tuple[PowerSource, ...] = (
        PowerSource("rtg", SourceKind.CONSTANT, 110.0),)
    loads: tuple[TaggedLoad, ...] = ()
    exploration: ExplorationSettings = ExplorationSettings()
    program: ProgramSettings = ProgramSettings()
    mission: MissionSettings = MissionSettings()


class _Block:
    """One JSON object under validation: typed key access with error
    accumulation, plus unknown-key detection on close."""

    def __init__(self, data: dict, path: str, errors: list):
        self._data = dict(data)
        self.path = path
        self.errors = errors

    def err(self, message: str, key: str | None = None) -> None:
        where = f"{self.path}.{key}" if key else self.path
        self.errors.append((where, message))

    def has(self, key: str) -> bool:
        return key in self._data

    def raw(self, key: str, default=None):
        return self._data.pop(key) if key in self._data else default

    def number(self, key: str, default=None):
        if key not in self._data:
            return default
        value = self._data.pop(key)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.err(f"expected a number, got {value!r}", key)
            return default
        return float(value)

    def integer(self, key: str, default=None):
        if key not in self._data:
            return default
        value = self._data.pop(key)
        if isinstance(value, bool) or not isinstance(value, int):
            self.err(f"expected an integer, got {value!r}", key)
            return default
        return value

    def string(self, key: str, default=None):
        if key not in self._data:
            return default
        value = self._data.pop(key)
        if not isinstance(value, str):
            self.err(f"expected a string, got {value!r}", key)
            return default
        return value

    def boolean(self, key: str, default=None):
        if key not in self._data:
            return default
        value = self._data.pop(key)
        if not isinstance(value, bool):
            self.err(f"expected true or false, got {value!r}", key)
            return default
        return value

    def obj(self, key: str) -> "_Block | None":
        if key not in self._data:
            return None
        value = self._data.pop(key)
        if value is None:
            return None
        if not isinstance(value, dict):
            self.err(f"expected an object, got {value!r}", key)
            return None
        return _Block(value, f"{self.path}.{key}", self.errors)

    def array(self, key: str, default=None):
        if key not in self._data:
            return default
        value = self._data.pop(key)
        if not isinstance(value, list):
            self.err(f"expected an array, got {value!r}", key)
            return default
        return value

    def close(self) -> None:
        for key in sorted(self._data):
            self.err(f"unknown key {key!r}", key)


def _build(block: _Block, factory, kwargs: dict):
    """Construct a validated model type, folding its ValueError into the
    error list at the block's path. Returns None on failure."""
    try:
        return factory(**kwargs)
    except (ValueError, TypeError) as exc:
        block.err(str(exc))
        return None


def _numbers_into(block: _Block, kwargs: dict, keys) -> None:
    for key in keys:
        if block.has(key):
            value = block.number(key)
            if value is not None:
                kwargs[key] = value


def _parse_env(block: _Block | None):
    preset = "nili_fossae_default"
    overrides: dict = {}
    if block is not None:
        preset = block.string("preset", preset)
        sub = block.obj("overrides")
        if sub is not None:
            valid = {f.name for f in dataclasses.fields(MarsEnvironment)}
            for key in sorted(list(sub._data)):
                if key not in valid:
                    sub.err(f"unknown environment field {key!r}", key)
                    sub.raw(key)
                    continue
                value = sub.number(key)
                if value is not None:
                    overrides[key] = value
            sub.close()
        block.close()
    try:
        env = make_environment(preset, **overrides)
    except ValueError as exc:
        if block is not None:
            block.err(str(exc))
        else:
            raise
        env = MarsEnvironment()
    return preset, overrides, env


def _parse_balloon(block: _Block | None) -> BalloonConfig:
    if block is None:
        return REFERENCE_BALLOON
    kwargs: dict = {}
    geo = block.obj("geometry")
    if geo is not None:
        geo_kwargs: dict = {}
        _numbers_into(geo, geo_kwargs,
                      ("outer_radius_m", "inner_radius_m", "tube_length_m"))
        geo.close()
        geometry = _build(geo, BalloonGeometry, geo_kwargs)
        if geometry is not None:
            kwargs["geometry"] = geometry
    if block.has("lifting_gas_density_kg_m3"):
        raw = block.raw("lifting_gas_density_kg_m3")
        if raw is None or (isinstance(raw, (int, float)) and not isinstance(raw, bool)):
            kwargs["lifting_gas_density_kg_m3"] = (
                None if raw is None else float(raw))
        else:
            block.err(f"expected a number or null, got {raw!r}",
                      "lifting_gas_density_kg_m3")
    _numbers_into(block, kwargs, (
        "gas_molar_mass_kg_mol", "surface_area_weight_kg_m2",
        "tether_length_m", "tether_weight_per_length_kg_m",
        "scientific_payload_weight_kg", "windmill_weight_kg"))
    if block.has("area_model"):
        name = block.string("area_model")
        try:
            kwargs["area_model"] = AreaModel(name)
        except ValueError:
            valid = ", ".join(m.value for m in AreaModel)
            block.err(f"unknown area model {name!r} (known: {valid})",
                      "area_model")
    block.close()
    balloon = _build(block, BalloonConfig, kwargs)
    return balloon if balloon is not None else REFERENCE_BALLOON


def _parse_winch(block: _Block | None) -> WinchSpec:
    if block is None:
        return REFERENCE_WINCH
    kwargs: dict = {}
    _numbers_into(block, kwargs, ("payload_mass_kg", "line_speed_mps",
                                  "depth_m", "motor_margin", "regen_efficiency"))
    block.close()
    winch = _build(block, WinchSpec, kwargs)
    return winch if winch is not None else REFERENCE_WINCH


def _parse_enclosure(block: _Block | None) -> GlazedEnclosure:
    if block is None:
        return REFERENCE_GREENHOUSE
    kwargs: dict = {}
    _numbers_into(block, kwargs,
                  ("glazed_area_m2", "u_value_w_m2k", "target_temp_c"))
    block.close()
    enclosure = _build(block, GlazedEnclosure, kwargs)
    return enclosure if enclosure is not None else REFERENCE_GREENHOUSE


def _parse_avionics(block: _Block | None) -> AvionicsEnvelope:
    if block is None:
        return AvionicsEnvelope()
    kwargs: dict = {}
    _numbers_into(block, kwargs, ("min_ok_c", "max_ok_c", "heater_power_w",
                                  "heater_delta_c_per_100w"))
    block.close()
    envelope = _build(block, AvionicsEnvelope, kwargs)
    return envelope if envelope is not None else AvionicsEnvelope()


def _parse_source(block: _Block) -> PowerSource | None:
    kwargs: dict = {"name": block.string("name", "")}
    if block.has("kind"):
        name = block.string("kind")
        try:
            kwargs["kind"] = SourceKind(name)
        except ValueError:
            valid = ", ".join(k.value for k in SourceKind)
            block.err(f"unknown source kind {name!r} (known: {valid})", "kind")
    _numbers_into(block, kwargs, ("rating_w", "event_energy_wh"))
    block.close()
    return _build(block, PowerSource, kwargs)


def _parse_load(block: _Block) -> TaggedLoad | None:
    kwargs: dict = {"name": block.string("name", "")}
    _numbers_into(block, kwargs, ("power_w",))
    if block.has("window_s"):
        raw = block.raw("window_s")
        if raw is None:
            kwargs["window"] = None
        elif (isinstance(raw, list) and len(raw) == 2
              and all(isinstance(v, (int, float)) and not isinstance(v, bool)
                      for v in raw)):
            kwargs["window"] = (float(raw[0]), float(raw[1]))
        else:
            block.err(f"expected [start_s, end_s] or null, got {raw!r}",
                      "window_s")
    if block.has("priority"):
        kwargs["priority"] = block.integer("priority")
    if block.has("sheddable"):
        kwargs["sheddable"] = block.boolean("sheddable")
    phases = None
    if block.has("phases"):
        raw = block.raw("phases")
        if raw is None:
            phases = None
        elif isinstance(raw, list) and all(isinstance(v, str) for v in raw):
            phases = tuple(raw)
        else:
            block.err(f"expected an array of phase names or null, got {raw!r}",
                      "phases")
    block.close()
    kwargs = {k: v for k, v in kwargs.items() if v is not None}
    load = _build(block, PowerLoad, kwargs)
    if load is None:
        return None
    return _build(block, TaggedLoad, {"load": load, "phases": phases})


def _parse_power(block: _Block | None):
    battery = Battery()
    timestep = DEFAULT_TIMESTEP_S
    sources: tuple[PowerSource, ...] = (
        PowerSource("rtg", SourceKind.CONSTANT, 110.0),)
    loads: tuple[TaggedLoad, ...] = ()
    if block is None:
        return battery, timestep, sources, loads
    bat = block.obj("battery")
    if bat is not None:
        kwargs: dict = {}
        _numbers_into(bat, kwargs, ("capacity_wh", "initial_soc_wh",
                                    "charge_efficiency", "discharge_efficiency"))
        bat.close()
        built = _build(bat, Battery, kwargs)
        if built is not None:
            battery = built
    timestep = block.number("timestep_s", timestep)
    raw_sources = block.array("sources")
    if raw_sources is not None:
        parsed = []
        for i, item in enumerate(raw_sources):
            path = f"{block.path}.sources[{i}]"
            if not isinstance(item, dict):
                block.errors.append((path, f"expected an object, got {item!r}"))
                continue
            source = _parse_source(_Block(item, path, block.errors))
            if source is not None:
                parsed.append(source)
        sources = tuple(parsed)
    raw_loads = block.array("loads")
    if raw_loads is not None:
        parsed = []
        for i, item in enumerate(raw_loads):
            path = f"{block.path}.loads[{i}]"
            if not isinstance(item, dict):
                block.errors.append((path, f"expected an object, got {item!r}"))
                continue
            tagged = _parse_load(_Block(item, path, block.errors))
            if tagged is not None:
                parsed.append(tagged)
        loads = tuple(parsed)
    block.close()
    return battery, timestep, sources, loads


_ROBOT_OVERRIDE_KEYS = ("module_count", "battery_full_s", "speed_mps",
                        "aux_capacity_kg", "aux_capacity_l", "reserve_factor",
                        "drop_tolerance_m", "max_obstacle_mm")


def _parse_exploration(block: _Block | None, winch: WinchSpec,
                       base_dir: Path | None) -> ExplorationSettings:
    if block is None:
        return ExplorationSettings(station=Station(winch=winch))
    kwargs: dict = {}

    map_file = block.string("map_file")
    gen_block = block.obj("generator")
    if map_file is not None and gen_block is not None:
        block.err("map_file and generator are mutually exclusive")
    if map_file is not None:
        resolved = Path(map_file)
        if base_dir is not None and not resolved.is_absolute():
            resolved = base_dir / resolved
        if not resolved.is_file():
            block.err(f"map file not found: {resolved}", "map_file")
        kwargs["map_file"] = str(resolved)
    if gen_block is not None:
        gen_kwargs: dict = {}
        for key in ("width", "height"):
            if gen_block.has(key):
                gen_kwargs[key] = gen_block.integer(key)
        _numbers_into(gen_block, gen_kwargs, ("obstacle_density", "resolution_m"))
        gen_block.close()
        generator = _build(gen_block, GeneratorSettings,
                           {k: v for k, v in gen_kwargs.items() if v is not None})
        if generator is not None:
            kwargs["generator"] = generator

    robots = block.obj("robots")
    overrides: dict = {}
    if robots is not None:
        if robots.has("count"):
            count = robots.integer("count")
            if count is not None:
                if count < 1:
                    robots.err(f"count must be at least 1, got {count}", "count")
                else:
                    kwargs["robot_count"] = count
        if robots.has("module_count"):
            value = robots.integer("module_count")
            if value is not None:
                overrides["module_count"] = value
        for key in _ROBOT_OVERRIDE_KEYS:
            if key != "module_count" and robots.has(key):
                value = robots.number(key)
                if value is not None:
                    overrides[key] = value
        robots.close()
        kwargs["robot_overrides"] = overrides

    station_block = block.obj("station")
    use_winch = True
    station_kwargs: dict = {}
    final_drop = 0.0
    if station_block is not None:
        _numbers_into(station_block, station_kwargs, ("charge_time_s",))
        if station_block.has("descents"):
            station_kwargs["descents"] = station_block.integer("descents")
        use_winch = station_block.boolean("use_winch", True)
        final_drop = station_block.number("final_drop_m", 0.0)
        if final_drop is not None and final_drop < 0:
            station_block.err(f"final_drop_m must be nonnegative, got {final_drop}",
                              "final_drop_m")
        station_block.close()
        kwargs["final_drop_m"] = final_drop
    station_kwargs = {k: v for k, v in station_kwargs.items() if v is not None}
    station_kwargs["winch"] = winch if use_winch else None
    station = _build(station_block if station_block is not None else block,
                     Station, station_kwargs)
    if station is not None:
        kwargs["station"] = station

    if block.has("max_steps"):
        max_steps = block.integer("max_steps")
        if max_steps is not None:
            if max_steps < 1:
                block.err(f"max_steps must be positive, got {max_steps}",
                          "max_steps")
            else:
                kwargs["max_steps"] = max_steps

    raw_sites = block.array("sample_sites")
    if raw_sites is not None:
        sites = []
        for i, item in enumerate(raw_sites):
            path = f"{block.path}.sample_sites[{i}]"
            if not isinstance(item, dict):
                block.errors.append((path, f"expected an object, got {item!r}"))
                continue
            site_block = _Block(item, path, block.errors)
            cell = site_block.raw("cell")
            mass = site_block.number("mass_kg", 0.0)
            site_block.close()
            if (not isinstance(cell, list) or len(cell) != 2
                    or not all(isinstance(v, int) and not isinstance(v, bool)
                               for v in cell)):
                block.errors.append((path, f"cell must be [row, col], got {cell!r}"))
                continue
            site = _build(site_block, SampleSite,
                          {"cell": (cell[0], cell[1]), "mass_kg": mass})
            if site is not None:
                sites.append(site)
        kwargs["sample_sites"] = tuple(sites)

    # A robot lowered by the winch still free-falls the last stretch;
    # that drop must be survivable for the whole fleet.
    tolerance = overrides.get("drop_tolerance_m", 1.5)
    if final_drop is not None and final_drop > tolerance:
        block.err(f"station final drop {final_drop} m exceeds the robot drop "
                  f"tolerance {tolerance} m")

    block.close()
    settings = _build(block, ExplorationSettings, kwargs)
    return settings if settings is not None else ExplorationSettings(
        station=Station(winch=winch))


def _parse_cost(block: _Block, key: str):
    """A leaf cost may be written as an integer or a money string."""
    if not block.has(key):
        return None
    raw = block.raw(key)
    if isinstance(raw, bool):
        block.err(f"expected an integer or money string, got {raw!r}", key)
        return None
    if isinstance(raw, int):
        return raw
    if isinstance(raw, str):
        try:
            return parse_money(raw)
        except ValueError as exc:
            block.err(str(exc), key)
            return None
    block.err(f"expected an integer or money string, got {raw!r}", key)
    return None


def _parse_wbs(data: dict, path: str, errors: list) -> WbsNode | None:
    block = _Block(data, path, errors)
    name = block.string("name", "")
    level = block.integer("level", 0)
    cost = _parse_cost(block, "cost_usd")
    note = block.string("note")
    children_raw = block.array("children")
    block.close()
    children = []
    if children_raw is not None:
        for i, item in enumerate(children_raw):
            child_path = f"{path}.children[{i}]"
            if not isinstance(item, dict):
                errors.append((child_path, f"expected an object, got {item!r}"))
                continue
            child = _parse_wbs(item, child_path, errors)
            if child is not None:
                children.append(child)
    return _build(block, WbsNode, {"name": name, "level": level,
                                   "cost_usd": cost, "note": note,
                                   "children": tuple(children)})


def parse_wbs_file(path) -> WbsNode:
    """Load a standalone work-breakdown tree from a JSON file."""
    data = _read_json(Path(path))
    if not isinstance(data, dict):
        raise ConfigError([(str(path), "top level must be a JSON object")])
    errors: list = []
    wbs = _parse_wbs(data, "wbs", errors)
    if errors or wbs is None:
        raise ConfigError(errors or [(str(path), "invalid WBS tree")])
    return wbs


def _parse_program(block: _Block | None) -> ProgramSettings:
    if block is None:
        return ProgramSettings()
    kwargs: dict = {}

    raw_payloads = block.array("payloads")
    if raw_payloads is not None:
        payloads = []
        for i, item in enumerate(raw_payloads):
            path = f"{block.path}.payloads[{i}]"
            if not isinstance(item, dict):
                block.errors.append((path, f"expected an object, got {item!r}"))
                continue
            p_block = _Block(item, path, block.errors)
            p_kwargs: dict = {"name": p_block.string("name", "")}
            _numbers_into(p_block, p_kwargs, ("mass_kg", "volume_m3", "power_w"))
            cost = _parse_cost(p_block, "wbs_cost_usd")
            p_kwargs["wbs_cost_usd"] = cost if cost is not None else 0
            p_block.close()
            payload = _build(p_block, PayloadSpec, p_kwargs)
            if payload is not None:
                payloads.append(payload)
        kwargs["payloads"] = tuple(payloads)

    limits_block = block.obj("limits")
    if limits_block is not None:
        l_kwargs: dict = {}
        _numbers_into(limits_block, l_kwargs,
                      ("payload_mass_limit_kg", "platform_mass_limit_kg",
                       "volume_limit_m3"))
        limits_block.close()
        limits = _build(limits_block, BudgetLimits, l_kwargs)
        if limits is not None:
            kwargs["limits"] = limits

    if block.has("wbs"):
        raw = block.raw("wbs")
        if not isinstance(raw, dict):
            block.err(f"expected an object, got {raw!r}", "wbs")
        else:
            wbs = _parse_wbs(raw, f"{block.path}.wbs", block.errors)
            if wbs is not None:
                kwargs["wbs"] = wbs

    raw_phases = block.array("phases")
    if raw_phases is not None:
        phases = []
        for i, item in enumerate(raw_phases):
            path = f"{block.path}.phases[{i}]"
            if not isinstance(item, dict):
                block.errors.append((path, f"expected an object, got {item!r}"))
                continue
            ph_block = _Block(item, path, block.errors)
            code_name = ph_block.string("code", "")
            year = ph_block.integer("start_year", 0)
            ph_block.close()
            try:
                code = phase_code_from(code_name)
            except ValueError as exc:
                ph_block.err(str(exc), "code")
                continue
            phase = _build(ph_block, LifecyclePhase,
                           {"code": code, "start_year": year})
            if phase is not None:
                phases.append(phase)
        kwargs["phases"] = tuple(phases)

    for key, kw in (("launch_year", "launch_year"),
                    ("deadline_year", "deadline_year")):
        if block.has(key):
            value = block.integer(key)
            if value is not None:
                kwargs[kw] = value

    fte_block = block.obj("fte")
    if fte_block is not None:
        for key, kw in (("people", "fte_people"), ("years", "fte_years"),
                        ("fte_per_person_year", "fte_rate")):
            if fte_block.has(key):
                value = fte_block.integer(key)
                if value is not None:
                    kwargs[kw] = value
        fte_block.close()

    block.close()
    settings = _build(block, ProgramSettings, kwargs)
    return settings if settings is not None else ProgramSettings()


def _parse_phase_map(block: _Block, key: str, default: dict, *,
                     integer: bool) -> dict:
    sub = block.obj(key)
    if sub is None:
        return dict(default)
    result = dict(default)
    for phase in sorted(list(sub._data)):
        if phase not in _PHASE_NAMES:
            sub.err(f"unknown phase {phase!r} (known: {', '.join(_PHASE_NAMES)})",
                    phase)
            sub.raw(phase)
            continue
        value = sub.integer(phase) if integer else sub.number(phase)
        if value is None:
            continue
        if value < 0:
            sub.err(f"must be nonnegative, got {value}", phase)
            continue
        if not integer and value > 1.0:
            sub.err(f"must be in [0, 1], got {value}", phase)
            continue
        result[phase] = value
    sub.close()
    return result


def _parse_mission(block: _Block | None) -> MissionSettings:
    if block is None:
        return MissionSettings()
    kwargs: dict = {}

    raw_events = block.array("events")
    if raw_events is not None:
        events = []
        for i, item in enumerate(raw_events):
            path = f"{block.path}.events[{i}]"
            if not isinstance(item, str):
                block.errors.append((path, f"expected an event name, got {item!r}"))
                continue
            try:
                events.append(mission_event_from(item))
            except ValueError as exc:
                block.errors.append((path, str(exc)))
        kwargs["events"] = tuple(events)

    kwargs["sols_per_phase"] = _parse_phase_map(block, "sols_per_phase",
                                                _default_sols(), integer=True)
    kwargs["cave_fraction"] = _parse_phase_map(block, "cave_fraction",
                                               _default_cave_fraction(),
                                               integer=False)

    if block.has("seed"):
        seed = block.integer("seed")
        if seed is not None:
            if seed < 0:
                block.err(f"seed must be nonnegative, got {seed}", "seed")
            else:
                kwargs["seed"] = seed

    if block.has("germination"):
        raw = block.raw("germination")
        if raw is None:
            kwargs["germination"] = None
        elif not isinstance(raw, dict):
            block.err(f"expected an object or null, got {raw!r}", "germination")
        else:
            g_block = _Block(raw, f"{block.path}.germination", block.errors)
            g_kwargs: dict = {}
            if g_block.has("n_seeds"):
                n = g_block.integer("n_seeds")
                if n is not None:
                    if n < 0:
                        g_block.err(f"n_seeds must be nonnegative, got {n}",
                                    "n_seeds")
                    else:
                        g_kwargs["n_seeds"] = n
            if g_block.has("p_germinate"):
                p = g_block.number("p_germinate")
                if p is not None:
                    if not 0.0 <= p <= 1.0:
                        g_block.err(f"p_germinate must be in [0, 1], got {p}",
                                    "p_germinate")
                    else:
                        g_kwargs["p_germinate"] = p
            g_block.close()
            germination = _build(g_block, GerminationSettings, g_kwargs)
            if germination is not None:
                kwargs["germination"] = germination

    block.close()
    settings = _build(block, MissionSettings, kwargs)
    return settings if settings is not None else MissionSettings()


def parse_config(raw: dict, base_dir: Path | None = None) -> MissionConfig:
    """Validate a parsed JSON object into a MissionConfig, collecting
    every error before raising."""
    if not isinstance(raw, dict):
        raise ConfigError([("config", "top level must be a JSON object")])
    errors: list = []
    top = _Block(raw, "config", errors)

    env_preset, env_overrides, env = _parse_env(top.obj("env"))
    balloon = _parse_balloon(top.obj("balloon"))
    winch = _parse_winch(top.obj("winch"))
    enclosure = _parse_enclosure(top.obj("enclosure"))
    avionics = _parse_avionics(top.obj("avionics"))
    battery, timestep_s, sources, loads = _parse_power(top.obj("power"))
    exploration = _parse_exploration(top.obj("exploration"), winch, base_dir)
    program = _parse_program(top.obj("program"))
    mission = _parse_mission(top.obj("mission"))
    top.close()

    if timestep_s is not None and timestep_s > 0 and env is not None:
        steps = env.sol_length_s / timestep_s
        if abs(steps - round(steps)) > 1e-9 or round(steps) == 0:
            errors.append(("config.power.timestep_s",
                           f"timestep {timestep_s} s does not divide the "
                           f"{env.sol_length_s:.0f} s sol evenly"))

    if errors:
        raise ConfigError(errors)
    return MissionConfig(
        env_preset=env_preset,
        env_overrides=env_overrides,
        env=env,
        balloon=balloon,
        winch=winch,
        enclosure=enclosure,
        avionics=avionics,
        battery=battery,
        timestep_s=timestep_s,
        sources=sources,
        loads=loads,
        exploration=exploration,
        program=program,
        mission=mission,
    )


def _read_json(path: Path):
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError([(str(path), f"cannot read file: {exc}")]) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([(str(path),
                            f"JSON parse error at line {exc.lineno}, "
                            f"column {exc.colno}: {exc.msg}")]) from exc


def load_config(path) -> MissionConfig:
    """Load and fully validate a scenario file.

    Raises:
        ConfigError: listing every parse or validation problem, each
            tagged with its location.
    """
    p = Path(path)
    raw = _read_json(p)
    return parse_config(raw, base_dir=p.parent)


def to_echo_dict(config: MissionConfig) -> dict:
    """Normalized configuration echo for reports. The full WBS tree is
    echoed by the program section; here it appears as its rollup."""
    from tubescout.program import rollup_cost

    return {
        "env": {"preset": config.env_preset,
                "overrides": dict(config.env_overrides)},
        "balloon": dataclasses.asdict(config.balloon)
        | {"area_model": config.balloon.area_model.value},
        "winch": dataclasses.asdict(config.winch),
        "enclosure": dataclasses.asdict(config.enclosure),
        "avionics": dataclasses.asdict(config.avionics),
        "power": {
            "battery": dataclasses.asdict(config.battery),
            "timestep_s": config.timestep_s,
            "sources": [dataclasses.asdict(s) | {"kind": s.kind.value}
                        for s in config.sources],
            "loads": [{
                "name": t.load.name,
                "power_w": t.load.power_w,
                "window_s": list(t.load.window) if t.load.window else None,
                "priority": t.load.priority,
                "sheddable": t.load.sheddable,
                "phases": list(t.phases) if t.phases is not None else None,
            } for t in config.loads],
        },
        "exploration": {
            "map_file": config.exploration.map_file,
            "generator": dataclasses.asdict(config.exploration.generator),
            "robot_count": config.exploration.robot_count,
            "robot_overrides": dict(config.exploration.robot_overrides),
            "max_steps": config.exploration.max_steps,
            "sample_sites": [{"cell": list(s.cell), "mass_kg": s.mass_kg}
                             for s in config.exploration.sample_sites],
            "station": {
                "charge_time_s": config.exploration.station.charge_time_s,
                "descents": config.exploration.station.descents,
                "use_winch": config.exploration.station.winch is not None,
                "final_drop_m": config.exploration.final_drop_m,
            },
        },
        "program": {
            "payloads": [dataclasses.asdict(p) for p in config.program.payloads],
            "limits": dataclasses.asdict(config.program.limits),
            "wbs_total_usd": rollup_cost(config.program.wbs),
            "phases": [{"code": p.code.value, "start_year": p.start_year}
                       for p in config.program.phases],
            "launch_year": config.program.launch_year,
            "deadline_year": config.program.deadline_year,
            "fte": {"people": config.program.fte_people,
                    "years": config.program.fte_years,
                    "fte_per_person_year": config.program.fte_rate},
        },
        "mission": {
            "events": [e.value for e in config.mission.events],
            "sols_per_phase": dict(config.mission.sols_per_phase),
            "cave_fraction": dict(config.mission.cave_fraction),
            "seed": config.mission.seed,
            "germination": (dataclasses.asdict(config.mission.germination)
                            if config.mission.germination is not None else None),
        },
    }
