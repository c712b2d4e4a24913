"""Closed-loop time-domain simulation of a second-order plant under ideal
PID control, with step set-point and optional input-side load disturbance.

The simulated state is ``(y, dy/dt, integral of error)``. The derivative
term acts on the error but the set-point step itself contributes no
impulse, so the control signal at the first sample of a step from rest is
exactly ``kp * step``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .numerics import integrate_fixed_step, solve_cubic
from .pole_placement import PidGains, Plant, closed_loop_characteristic

__all__ = [
    "ScenarioSpec",
    "Trace",
    "ResponseMetrics",
    "InvalidScenario",
    "default_scenario",
    "simulate_closed_loop",
    "metrics",
]

_trapezoid = getattr(np, "trapezoid", None) or np.trapz  # numpy < 2.0 fallback

SETTLING_BAND = 0.02
# fraction of the step used for the default load disturbance, applied at
# 0.6 * t_end; neither value is prescribed by the method, both are exposed
DISTURBANCE_FRACTION = 0.5
DISTURBANCE_TIME_FRACTION = 0.6


class InvalidScenario(UserWarning):
    """Step size too coarse for the dominant closed-loop frequency."""


@dataclass(frozen=True)
class ScenarioSpec:
    """Simulation scenario: horizon, step size, set-point step, and an
    optional input load disturbance stepping in at ``disturbance_time``
    (default 0.6 of the horizon when an amplitude is given)."""

    t_end: float  # s
    dt: float  # s
    step_amplitude: float = 1.0
    disturbance_amplitude: float = 0.0
    disturbance_time: float | None = None

    def __post_init__(self) -> None:
        if self.dt <= 0.0:
            raise ValueError("dt must be positive")
        if self.t_end < self.dt:
            raise ValueError("t_end must cover at least one step")
        if self.disturbance_time is not None and not (
            0.0 <= self.disturbance_time <= self.t_end
        ):
            raise ValueError("disturbance_time must lie in [0, t_end]")

    def resolved_disturbance_time(self) -> float:
        if self.disturbance_time is not None:
            return self.disturbance_time
        return DISTURBANCE_TIME_FRACTION * self.t_end


@dataclass
class Trace:
    """Equal-length series: time, set-point, output, control, disturbance."""

    t: np.ndarray
    r: np.ndarray
    y: np.ndarray
    u: np.ndarray
    d: np.ndarray


@dataclass
class ResponseMetrics:
    """Step-response metrics over the pre-disturbance window.

    ``settled`` is False (and the settling time NaN) when the output never
    stays inside the 2 percent band. ``iae`` and ``control_ise`` integrate
    over the whole trace.
    """

    percent_overshoot: float
    rise_time_10_90: float  # s
    settling_time_2pct: float  # s
    peak_control: float
    initial_control: float
    iae: float
    control_ise: float
    settled: bool


def default_scenario(plant: Plant, zeta_scale: float, omega_scale: float, **overrides) -> ScenarioSpec:
    """Scenario sized from a target point: horizon 20 dominant time
    constants, step capped at 1 ms or a hundredth of the plant period."""
    defaults = dict(
        t_end=20.0 / (zeta_scale * omega_scale),
        dt=min(1e-3, 0.01 / plant.omega_n_ol),
    )
    defaults.update(overrides)
    return ScenarioSpec(**defaults)


def _dominant_frequency(plant: Plant, gains: PidGains) -> float | None:
    """Magnitude of the dominant closed-loop pole, None if unstable."""
    triple = solve_cubic(closed_loop_characteristic(plant, gains))
    if any(r.real >= 0.0 for r in triple.roots):
        return None
    return abs(triple.roots[0])


def simulate_closed_loop(plant: Plant, gains: PidGains, scenario: ScenarioSpec) -> Trace:
    """Integrate the closed loop through the scenario.

    The disturbance enters at the plant input and switches exactly on a grid
    point, so the trajectory is integrated piecewise with constant inputs.
    Stabilizing gains are a precondition; an unstable loop surfaces as
    NonFiniteState once the state overflows.
    """
    dom = _dominant_frequency(plant, gains)
    if dom is not None and scenario.dt > 0.05 / dom:
        warnings.warn(
            f"dt={scenario.dt:g} is coarse for dominant frequency {dom:.3g} rad/s; "
            f"use dt <= {0.05 / dom:.3g}",
            InvalidScenario,
            stacklevel=2,
        )

    k, zo, wo = plant.k, plant.zeta_ol, plant.omega_n_ol
    kp, ki, kd = gains.kp, gains.ki, gains.kd
    step = scenario.step_amplitude
    dt = scenario.dt
    n_total = int(math.floor(scenario.t_end / dt + 1e-9))

    def deriv_for(load: float):
        two_zw = 2.0 * zo * wo
        wo2 = wo * wo

        def deriv(_t, x):
            y, ydot, zint = x
            err = step - y
            u = kp * err + ki * zint - kd * ydot
            return (ydot, k * (u + load) - two_zw * ydot - wo2 * y, err)

        return deriv

    if scenario.disturbance_amplitude == 0.0:
        k_switch = n_total
    else:
        k_switch = int(round(scenario.resolved_disturbance_time() / dt))
        k_switch = min(max(k_switch, 0), n_total)

    x0 = np.zeros(3)
    states = np.empty((n_total + 1, 3))
    states[0] = x0
    if k_switch > 0:
        _, seg = integrate_fixed_step(deriv_for(0.0), x0, k_switch * dt, dt)
        states[: k_switch + 1] = seg
    if k_switch < n_total:
        _, seg = integrate_fixed_step(
            deriv_for(scenario.disturbance_amplitude),
            states[k_switch],
            (n_total - k_switch) * dt,
            dt,
        )
        states[k_switch:] = seg

    t = np.arange(n_total + 1) * dt
    y = states[:, 0]
    ydot = states[:, 1]
    zint = states[:, 2]
    r = np.full(n_total + 1, step)
    d = np.where(np.arange(n_total + 1) >= k_switch, scenario.disturbance_amplitude, 0.0)
    u = kp * (r - y) + ki * zint - kd * ydot
    return Trace(t=t, r=r, y=y, u=u, d=d)


def _first_crossing(t: np.ndarray, y: np.ndarray, level: float) -> float:
    """Linearly interpolated first crossing time of ``level``, NaN if never."""
    above = y >= level
    if not above.any():
        return math.nan
    idx = int(np.argmax(above))
    if idx == 0:
        return float(t[0])
    frac = (level - y[idx - 1]) / (y[idx] - y[idx - 1])
    return float(t[idx - 1] + frac * (t[idx] - t[idx - 1]))


def metrics(trace: Trace, gains: PidGains, scenario: ScenarioSpec) -> ResponseMetrics:
    """Extract step-response metrics from a trace.

    Overshoot, rise time, and settling are evaluated before a nonzero
    disturbance kicks in; control effort statistics cover the whole trace.
    The output is normalized by the step, so downward steps work too.
    """
    step = scenario.step_amplitude
    if step == 0.0:
        raise ValueError("step-response metrics need a nonzero step amplitude")
    if scenario.disturbance_amplitude != 0.0 and scenario.resolved_disturbance_time() > 0.0:
        window = trace.t <= scenario.resolved_disturbance_time() + 1e-12
    else:
        window = np.ones(trace.t.size, dtype=bool)
    tw = trace.t[window]
    yw = trace.y[window] / step  # normalized response, rises 0 -> 1

    overshoot = max(0.0, (float(yw.max()) - 1.0) * 100.0)
    rise = _first_crossing(tw, yw, 0.9) - _first_crossing(tw, yw, 0.1)

    outside = np.abs(yw - 1.0) > SETTLING_BAND
    if not outside.any():
        settled, settling = True, float(tw[0])
    else:
        last_out = len(outside) - 1 - int(np.argmax(outside[::-1]))
        if last_out + 1 < len(tw):
            settled, settling = True, float(tw[last_out + 1])
        else:
            settled, settling = False, math.nan

    initial = float(trace.u[0])
    expected = gains.kp * step
    if abs(initial - expected) > 1e-6 * max(1.0, abs(expected)):
        warnings.warn(
            f"initial control {initial:.6g} differs from kp*step {expected:.6g}; "
            "trace does not start from rest",
            stacklevel=2,
        )
    return ResponseMetrics(
        percent_overshoot=overshoot,
        rise_time_10_90=rise,
        settling_time_2pct=settling,
        peak_control=float(np.abs(trace.u).max()),
        initial_control=initial,
        iae=float(_trapezoid(np.abs(trace.r - trace.y), trace.t)),
        control_ise=float(_trapezoid(trace.u**2, trace.t)),
        settled=settled,
    )
