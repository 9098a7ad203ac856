"""Size the skylight winch and credit its regenerative descents.

Lowering 500 kg down a 100 m skylight is free energy on the way down:
the motor runs as a generator. This demo prints the steady hoisting
power, the per-descent recovered energy, and for scale, the wind power a
small balloon-mounted turbine could add.
"""

from tubescout import (
    BETZ_LIMIT,
    MarsEnvironment,
    REFERENCE_WINCH,
    turbine_power,
    winch_power,
    winch_regen_energy,
)


def main() -> None:
    env = MarsEnvironment()
    spec = REFERENCE_WINCH
    power = winch_power(spec, env)
    regen = winch_regen_energy(spec, env)

    print("Skylight winch sizing")
    print(f"  payload             {spec.payload_mass_kg:.0f} kg")
    print(f"  line speed          {spec.line_speed_mps} m/s")
    print(f"  descent depth       {spec.depth_m:.0f} m")
    print(f"  hoist power (raw)   {power.raw_kw:.3f} kW")
    print(f"  hoist power (+{spec.motor_margin:.0%} margin) {power.with_margin_kw:.3f} kW")
    print(f"  regen per descent   {regen:.2f} Wh "
          f"(at {spec.regen_efficiency:.0%} recovery)")
    print()

    lift_time_s = spec.depth_m / spec.line_speed_mps
    hoist_wh = power.raw_kw * 1000.0 * lift_time_s / 3600.0
    print(f"  one full lift costs {hoist_wh:.1f} Wh over {lift_time_s:.0f} s;")
    print(f"  a matching descent returns {regen / hoist_wh:.0%} of it.")
    print()

    print("Balloon-mounted wind turbine (thin Mars air, Betz-limited)")
    for wind in (5.0, 15.0, 30.0):
        watts = turbine_power(env.ambient_density, 10.0, wind, BETZ_LIMIT)
        print(f"  10 m^2 swept at {wind:4.0f} m/s -> {watts:8.2f} W")


if __name__ == "__main__":
    main()
