"""Longitudinal vehicle plant: engine map, gearbox, resistive forces, fuel flow.

The plant is a parametric mid-size-sedan surrogate.  Engine torque comes
from an rpm-indexed map scaled linearly by the gas pedal, the gearbox
shifts on rpm thresholds with a hysteresis band (at most one shift per
step), engine speed is kinematically slaved to wheel speed, and fuel flow
is an idle floor plus a BSFC-linear term in crank power.  One call to
``step`` advances the car by one fixed control period with a semi-implicit
Euler update; all functions are pure state transitions, so independent
trajectories can run in parallel.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_right
from dataclasses import dataclass, asdict

GRAVITY = 9.81  # m/s²


class SimulationFault(RuntimeError):
    """Non-finite or out-of-range values reached the plant."""


@dataclass(frozen=True)
class TorqueCurve:
    """Wide-open-throttle torque map, N·m over strictly increasing rpm keys."""

    rpm: tuple
    torque_nm: tuple

    def __post_init__(self):
        if len(self.rpm) != len(self.torque_nm) or len(self.rpm) < 2:
            raise ValueError("torque curve needs >= 2 (rpm, torque) pairs")
        if any(b <= a for a, b in zip(self.rpm, self.rpm[1:])):
            raise ValueError("torque curve rpm keys must be strictly increasing")
        if any(t < 0 for t in self.torque_nm):
            raise ValueError("torque values must be >= 0")


@dataclass(frozen=True)
class VehicleParams:
    """Plant parameters.  Field names double as the JSON schema keys."""

    mass: float                       # kg
    drag_coefficient: float
    frontal_area: float               # m²
    air_density: float                # kg/m³
    rolling_resistance_coeff: float
    wheel_radius: float               # m
    gear_ratios: tuple                # highest first gear, strictly decreasing
    final_drive_ratio: float
    engine_torque_curve: TorqueCurve
    idle_rpm: float
    redline_rpm: float
    upshift_rpm: float
    downshift_rpm: float
    max_brake_force: float            # N
    bsfc: float                       # g/kWh
    idle_fuel_rate: float             # g/s
    driveline_efficiency: float       # (0, 1]

    def __post_init__(self):
        if self.mass <= 0 or self.wheel_radius <= 0:
            raise ValueError("mass and wheel_radius must be positive")
        ratios = tuple(self.gear_ratios)
        if not ratios or any(r <= 0 for r in ratios):
            raise ValueError("gear ratios must be positive")
        if any(b >= a for a, b in zip(ratios, ratios[1:])):
            raise ValueError("gear ratios must be strictly decreasing")
        if not (self.idle_rpm < self.downshift_rpm < self.upshift_rpm <= self.redline_rpm):
            raise ValueError("need idle_rpm < downshift_rpm < upshift_rpm <= redline_rpm")
        if not (0.0 < self.driveline_efficiency <= 1.0):
            raise ValueError("driveline_efficiency must be in (0, 1]")


@dataclass(frozen=True, slots=True)
class VehicleState:
    """Kinematic and powertrain state of the car at one instant."""

    time: float            # s
    position: float        # m along the road
    speed: float           # m/s, never negative
    acceleration: float    # m/s², realized over the last step
    gear: int              # 1-based
    engine_rpm: float      # clamped to [idle_rpm, redline_rpm]
    fuel_consumed: float   # g, non-decreasing


@dataclass(frozen=True, slots=True)
class PedalCommand:
    """Gas and brake pedal positions, each in [0, 1]."""

    gas: float
    brake: float

    def __post_init__(self):
        if not (0.0 <= self.gas <= 1.0 and 0.0 <= self.brake <= 1.0):
            raise SimulationFault(
                f"pedal command out of [0,1]: gas={self.gas} brake={self.brake}")


def default_params() -> VehicleParams:
    """Mid-size sedan surrogate used throughout the built-in scenarios."""
    return VehicleParams(
        mass=1600.0,
        drag_coefficient=0.30,
        frontal_area=2.2,
        air_density=1.225,
        rolling_resistance_coeff=0.012,
        wheel_radius=0.32,
        gear_ratios=(3.6, 2.1, 1.4, 1.0, 0.8),
        final_drive_ratio=3.2,
        engine_torque_curve=TorqueCurve(
            rpm=(800.0, 1500.0, 2500.0, 3500.0, 4500.0, 5500.0, 6500.0),
            torque_nm=(115.0, 165.0, 215.0, 240.0, 230.0, 205.0, 165.0),
        ),
        idle_rpm=800.0,
        redline_rpm=6500.0,
        upshift_rpm=2600.0,
        downshift_rpm=1400.0,
        max_brake_force=12000.0,
        bsfc=250.0,
        idle_fuel_rate=0.15,
        driveline_efficiency=0.9,
    )


def initial_state(params: VehicleParams) -> VehicleState:
    """Car at rest at the road origin, first gear, engine idling."""
    return VehicleState(time=0.0, position=0.0, speed=0.0, acceleration=0.0,
                        gear=1, engine_rpm=params.idle_rpm, fuel_consumed=0.0)


def engine_torque(params: VehicleParams, rpm: float, gas: float) -> float:
    """Crank torque in N·m: gas fraction times the interpolated WOT map.

    rpm is clamped to [idle_rpm, redline_rpm] before the table lookup, so
    the result is always defined and >= 0.
    """
    curve = params.engine_torque_curve
    r = min(max(rpm, params.idle_rpm), params.redline_rpm)
    keys = curve.rpm
    if r <= keys[0]:
        wot = curve.torque_nm[0]
    elif r >= keys[-1]:
        wot = curve.torque_nm[-1]
    else:
        i = bisect_right(keys, r)
        lo, hi = keys[i - 1], keys[i]
        f = (r - lo) / (hi - lo)
        wot = curve.torque_nm[i - 1] * (1.0 - f) + curve.torque_nm[i] * f
    return gas * wot


def fuel_rate(params: VehicleParams, rpm: float, torque: float) -> float:
    """Fuel flow in g/s: idle floor plus BSFC times crank power in kW."""
    if torque < 0:
        raise ValueError("engine torque must be >= 0")
    power_kw = torque * rpm * (2.0 * math.pi / 60.0) / 1000.0
    return params.idle_fuel_rate + params.bsfc * power_kw / 3600.0


def rpm_from_speed(params: VehicleParams, speed: float, gear: int) -> float:
    """Engine rpm kinematically slaved to wheel speed, clamped to the working band."""
    ratio = params.gear_ratios[gear - 1] * params.final_drive_ratio
    rpm = speed / (2.0 * math.pi * params.wheel_radius) * 60.0 * ratio
    return min(max(rpm, params.idle_rpm), params.redline_rpm)


def _shift(gear: int, rpm: float, params: VehicleParams) -> int:
    if rpm > params.upshift_rpm and gear < len(params.gear_ratios):
        return gear + 1
    if rpm < params.downshift_rpm and gear > 1:
        return gear - 1
    return gear


def shift_gear(state: VehicleState, params: VehicleParams) -> int:
    """Next gear: shift up/down past the rpm thresholds, at most one step."""
    return _shift(state.gear, state.engine_rpm, params)


def step(state: VehicleState, cmd: PedalCommand, grade: float,
         params: VehicleParams, dt: float) -> VehicleState:
    """Advance the car by one control period of length dt.

    Net force = drive - brake - aero drag - rolling resistance - grade
    force; speed integrates explicitly and position uses the updated speed
    (semi-implicit Euler).  Speed is floored at zero: brakes and grade hold
    the car rather than reversing it.  Brake, drag and rolling resistance
    act only while the car is moving.  Fuel integrates at the rate implied
    by the torque and rpm applied over the step.

    Parameters
    ----------
    grade : dimensionless slope (rise/run); small-angle gravity component.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if not (math.isfinite(state.speed) and math.isfinite(cmd.gas)
            and math.isfinite(cmd.brake) and math.isfinite(grade)):
        raise SimulationFault("non-finite input to vehicle step")

    v = state.speed
    ratio = params.gear_ratios[state.gear - 1] * params.final_drive_ratio
    torque = engine_torque(params, state.engine_rpm, cmd.gas)
    drive = torque * ratio * params.driveline_efficiency / params.wheel_radius

    if v > 0.0:
        drag = 0.5 * params.air_density * params.drag_coefficient * params.frontal_area * v * v
        rolling = params.rolling_resistance_coeff * params.mass * GRAVITY
        brake = cmd.brake * params.max_brake_force
    else:
        drag = rolling = brake = 0.0
    grade_force = params.mass * GRAVITY * grade

    accel = (drive - brake - drag - rolling - grade_force) / params.mass
    v_new = v + accel * dt
    if v_new < 0.0:
        v_new = 0.0
    pos_new = state.position + v_new * dt

    gear = _shift(state.gear, state.engine_rpm, params)
    rpm = rpm_from_speed(params, v_new, gear)
    fuel = state.fuel_consumed + fuel_rate(params, state.engine_rpm, torque) * dt

    return VehicleState(
        time=state.time + dt,
        position=pos_new,
        speed=v_new,
        acceleration=(v_new - v) / dt,
        gear=gear,
        engine_rpm=rpm,
        fuel_consumed=fuel,
    )


def params_to_dict(params: VehicleParams) -> dict:
    d = asdict(params)
    d["gear_ratios"] = list(params.gear_ratios)
    d["engine_torque_curve"] = {
        "rpm": list(params.engine_torque_curve.rpm),
        "torque_nm": list(params.engine_torque_curve.torque_nm),
    }
    return d


def params_from_dict(d: dict) -> VehicleParams:
    d = dict(d)
    curve = d.pop("engine_torque_curve")
    return VehicleParams(
        engine_torque_curve=TorqueCurve(
            rpm=tuple(curve["rpm"]), torque_nm=tuple(curve["torque_nm"])),
        gear_ratios=tuple(d.pop("gear_ratios")),
        **d,
    )


def load_params(path) -> VehicleParams:
    with open(path, encoding="utf-8") as fh:
        return params_from_dict(json.load(fh))
