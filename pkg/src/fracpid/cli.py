"""Command-line front end: place, tune, mcurve, simulate, and inverse.

Configuration comes from named presets and/or an INI-style config file with
``[plant]``, ``[target]``, ``[tune]``, ``[qgrid]``, ``[scenario]``,
``[gains]``, and ``[gains2]`` sections; command-line flags override both.
Unknown sections or keys are hard errors so regression fixtures stay exact.
All numeric output uses 6 significant digits and is byte-deterministic.

Exit codes: 0 success, 2 config or precondition error, 3 unstable loop,
4 unreachable damping target.
"""

from __future__ import annotations

import argparse
import configparser
import sys
import warnings
from dataclasses import dataclass

import numpy as np

from .fractional_map import Q_SWEEP_HIGH, Q_SWEEP_LOW, OutsideWedge, RealZeros
from .lqr_inverse import UnstableGains, riccati_package, RiccatiPackage
from .numerics import NonFiniteState
from .pole_placement import (
    ClosedLoopTarget,
    PidGains,
    Plant,
    UnstableClosedLoop,
    closed_loop_poles,
    place_gains,
)
from .simulate import (
    DISTURBANCE_FRACTION,
    ScenarioSpec,
    Trace,
    default_scenario,
    metrics,
    simulate_closed_loop,
)
from .tuner import TargetUnreachable, TuningReport, mcurve, two_stage_tune

__all__ = ["main", "RunConfig", "PRESETS"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_UNSTABLE = 3
EXIT_UNREACHABLE = 4

MCURVE_HEADER = "q,kp_hat,ki_hat,kd_hat,zero_re,zero_im,zeta_cl,omega_n_cl,wedge,stable"
TRACE_HEADER = "t,r,y,u,d"
TUNE_HEADER = (
    "controller,kp,ki,kd,q1,q2,q3,r,p11,p12,p13,p22,p23,p33,care_residual"
)


class ConfigError(ValueError):
    """Bad config file, preset name, or flag combination."""


@dataclass
class RunConfig:
    """Resolved run configuration after merging preset, file, and flags."""

    plant: Plant | None = None
    target: ClosedLoopTarget | None = None
    desired_zeta: float | None = None
    tune_q_step: float = 0.005
    r: float = 1.0
    refine: bool = False
    q_from: float = Q_SWEEP_HIGH
    q_to: float = Q_SWEEP_LOW
    q_step: float = 0.01
    t_end: float | None = None
    dt: float | None = None
    step_amplitude: float = 1.0
    disturbance_amplitude: float = 0.0
    disturbance_time: float | None = None
    gains: PidGains | None = None
    gains2: PidGains | None = None
    out: str | None = None


# the plants and stage-1 targets used throughout as worked benchmarks
PRESETS: dict[str, dict] = {
    "p1": {
        "plant": (9.0, 0.2, 3.0),
        "target": (0.75, 7.0, 10.0),
        "desired_zeta": 0.93,
    },
    "p2": {
        "plant": (25.0, 1.0, 5.0),
        "target": (0.75, 10.0, 10.0),
        "desired_zeta": 0.92,
    },
    "p3": {
        "plant": (1.0, 5.0, 1.0),
        "target": (0.75, 5.0, 10.0),
        "desired_zeta": 0.91,
    },
    "wang-oscillatory": {
        "plant": (1.0, 0.2, 0.1),
        "target": (0.98, 2.0, 10.0),
    },
}

_SECTION_KEYS = {
    "plant": {"k", "zeta_ol", "omega_n_ol"},
    "target": {"zeta_cl", "omega_n_cl", "m"},
    "tune": {"desired_zeta", "q_step", "r", "refine"},
    "qgrid": {"q_from", "q_to", "q_step"},
    "scenario": {
        "t_end",
        "dt",
        "step_amplitude",
        "disturbance_amplitude",
        "disturbance_time",
    },
    "gains": {"kp", "ki", "kd"},
    "gains2": {"kp", "ki", "kd"},
    "output": {"path"},
}


def fmt(x: float) -> str:
    """Fixed 6-significant-digit formatting for all numeric output."""
    return format(float(x), ".6g")


def _fmt_gains(g: PidGains) -> str:
    return f"kp={fmt(g.kp)} ki={fmt(g.ki)} kd={fmt(g.kd)}"


def _parse_float(section: str, key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"[{section}] {key}: not a number: {raw!r}") from exc


def _parse_bool(section: str, key: str, raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"[{section}] {key}: not a boolean: {raw!r}")


def _load_config_file(path: str, cfg: RunConfig) -> None:
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, "r", encoding="utf-8") as handle:
            parser.read_file(handle, source=path)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    except configparser.Error as exc:
        # configparser diagnostics carry line numbers for malformed content
        raise ConfigError(f"malformed config file: {exc}") from exc

    for section in parser.sections():
        if section not in _SECTION_KEYS:
            raise ConfigError(f"unknown config section [{section}]")
        for key in parser[section]:
            if key not in _SECTION_KEYS[section]:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")

    def grab(section: str) -> dict[str, str]:
        return dict(parser[section]) if parser.has_section(section) else {}

    plant_raw = grab("plant")
    if plant_raw:
        missing = _SECTION_KEYS["plant"] - plant_raw.keys()
        if missing:
            raise ConfigError(f"[plant] missing keys: {sorted(missing)}")
        cfg.plant = Plant(
            k=_parse_float("plant", "k", plant_raw["k"]),
            zeta_ol=_parse_float("plant", "zeta_ol", plant_raw["zeta_ol"]),
            omega_n_ol=_parse_float("plant", "omega_n_ol", plant_raw["omega_n_ol"]),
        )

    target_raw = grab("target")
    if target_raw:
        if "zeta_cl" not in target_raw or "omega_n_cl" not in target_raw:
            raise ConfigError("[target] needs zeta_cl and omega_n_cl")
        cfg.target = ClosedLoopTarget(
            zeta_cl=_parse_float("target", "zeta_cl", target_raw["zeta_cl"]),
            omega_n_cl=_parse_float("target", "omega_n_cl", target_raw["omega_n_cl"]),
            m=_parse_float("target", "m", target_raw.get("m", "10")),
        )

    tune_raw = grab("tune")
    if "desired_zeta" in tune_raw:
        cfg.desired_zeta = _parse_float("tune", "desired_zeta", tune_raw["desired_zeta"])
    if "q_step" in tune_raw:
        cfg.tune_q_step = _parse_float("tune", "q_step", tune_raw["q_step"])
    if "r" in tune_raw:
        cfg.r = _parse_float("tune", "r", tune_raw["r"])
    if "refine" in tune_raw:
        cfg.refine = _parse_bool("tune", "refine", tune_raw["refine"])

    qgrid_raw = grab("qgrid")
    if "q_from" in qgrid_raw:
        cfg.q_from = _parse_float("qgrid", "q_from", qgrid_raw["q_from"])
    if "q_to" in qgrid_raw:
        cfg.q_to = _parse_float("qgrid", "q_to", qgrid_raw["q_to"])
    if "q_step" in qgrid_raw:
        cfg.q_step = _parse_float("qgrid", "q_step", qgrid_raw["q_step"])

    scenario_raw = grab("scenario")
    if "t_end" in scenario_raw:
        cfg.t_end = _parse_float("scenario", "t_end", scenario_raw["t_end"])
    if "dt" in scenario_raw:
        cfg.dt = _parse_float("scenario", "dt", scenario_raw["dt"])
    if "step_amplitude" in scenario_raw:
        cfg.step_amplitude = _parse_float(
            "scenario", "step_amplitude", scenario_raw["step_amplitude"]
        )
    if "disturbance_amplitude" in scenario_raw:
        cfg.disturbance_amplitude = _parse_float(
            "scenario", "disturbance_amplitude", scenario_raw["disturbance_amplitude"]
        )
    if "disturbance_time" in scenario_raw:
        cfg.disturbance_time = _parse_float(
            "scenario", "disturbance_time", scenario_raw["disturbance_time"]
        )

    for section, attr in (("gains", "gains"), ("gains2", "gains2")):
        raw = grab(section)
        if raw:
            missing = _SECTION_KEYS[section] - raw.keys()
            if missing:
                raise ConfigError(f"[{section}] missing keys: {sorted(missing)}")
            setattr(
                cfg,
                attr,
                PidGains(
                    kp=_parse_float(section, "kp", raw["kp"]),
                    ki=_parse_float(section, "ki", raw["ki"]),
                    kd=_parse_float(section, "kd", raw["kd"]),
                ),
            )

    output_raw = grab("output")
    if "path" in output_raw:
        cfg.out = output_raw["path"]


def _apply_preset(name: str, cfg: RunConfig) -> None:
    if name not in PRESETS:
        raise ConfigError(
            f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}"
        )
    preset = PRESETS[name]
    cfg.plant = Plant(*preset["plant"])
    cfg.target = ClosedLoopTarget(*preset["target"])
    if "desired_zeta" in preset:
        cfg.desired_zeta = preset["desired_zeta"]


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge preset, config file, and flag overrides, in that order."""
    cfg = RunConfig()
    if getattr(args, "preset", None):
        _apply_preset(args.preset, cfg)
    if getattr(args, "config", None):
        _load_config_file(args.config, cfg)
    # --q-step means the stage-2 search step for tune/simulate and the sweep
    # step for mcurve
    q_step_attr = "q_step" if args.command == "mcurve" else "tune_q_step"
    for flag, attr in (
        ("desired_zeta", "desired_zeta"),
        ("q_from", "q_from"),
        ("q_to", "q_to"),
        ("q_step", q_step_attr),
        ("dt", "dt"),
        ("t_end", "t_end"),
        ("r", "r"),
        ("disturbance_amplitude", "disturbance_amplitude"),
        ("disturbance_time", "disturbance_time"),
        ("out", "out"),
    ):
        value = getattr(args, flag, None)
        if value is not None:
            setattr(cfg, attr, value)
    if getattr(args, "refine", False):
        cfg.refine = True
    if getattr(args, "gains", None):
        cfg.gains = _parse_gains_flag(args.gains)
    if getattr(args, "gains2", None):
        cfg.gains2 = _parse_gains_flag(args.gains2)
    return cfg


def _parse_gains_flag(raw: str) -> PidGains:
    parts = raw.split(",")
    if len(parts) != 3:
        raise ConfigError(f"--gains expects kp,ki,kd; got {raw!r}")
    try:
        return PidGains(*(float(p) for p in parts))
    except ValueError as exc:
        raise ConfigError(f"--gains values are not numbers: {raw!r}") from exc


def _require_plant(cfg: RunConfig) -> Plant:
    if cfg.plant is None:
        raise ConfigError("no plant configured; use --preset or a [plant] section")
    return cfg.plant


def _require_target(cfg: RunConfig) -> ClosedLoopTarget:
    if cfg.target is None:
        raise ConfigError("no target configured; use --preset or a [target] section")
    return cfg.target


def _write_text(path: str | None, text: str, out) -> None:
    if path is None:
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


def _print_warnings(caught, out) -> None:
    for item in caught:
        out.write(f"warning: {item.message}\n")


def _scenario_for(cfg: RunConfig, plant: Plant, zeta: float, omega: float) -> ScenarioSpec:
    base = default_scenario(plant, zeta, omega)
    return ScenarioSpec(
        t_end=cfg.t_end if cfg.t_end is not None else base.t_end,
        dt=cfg.dt if cfg.dt is not None else base.dt,
        step_amplitude=cfg.step_amplitude,
        disturbance_amplitude=cfg.disturbance_amplitude,
        disturbance_time=cfg.disturbance_time,
    )


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_place(args: argparse.Namespace, out) -> int:
    cfg = resolve_config(args)
    plant = _require_plant(cfg)
    target = _require_target(cfg)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        gains = place_gains(plant, target)
        report = closed_loop_poles(plant, gains)
    out.write(
        f"plant: k={fmt(plant.k)} zeta_ol={fmt(plant.zeta_ol)} "
        f"omega_n_ol={fmt(plant.omega_n_ol)}\n"
    )
    out.write(
        f"target: zeta_cl={fmt(target.zeta_cl)} omega_n_cl={fmt(target.omega_n_cl)} "
        f"m={fmt(target.m)}\n"
    )
    out.write(f"gains: {_fmt_gains(gains)}\n")
    roots = ", ".join(
        f"{fmt(r.real)}{'+' if r.imag >= 0 else '-'}{fmt(abs(r.imag))}j"
        for r in report.roots.roots
    )
    out.write(f"poles: {roots}\n")
    out.write(
        f"dominant: zeta={fmt(report.dominant_zeta)} "
        f"omega_n={fmt(report.dominant_omega_n)}\n"
    )
    out.write(f"real pole: {fmt(report.real_pole)}\n")
    out.write(f"dominance ratio: {fmt(report.dominance_ratio)}\n")
    _print_warnings(caught, out)
    return EXIT_OK


def _riccati_lines(label: str, pkg: RiccatiPackage) -> list[str]:
    p = pkg.p
    return [
        f"weights ({label}): q1={fmt(pkg.q_diag[0])} q2={fmt(pkg.q_diag[1])} "
        f"q3={fmt(pkg.q_diag[2])} r={fmt(pkg.r)}",
        f"riccati p ({label}): p11={fmt(p.a11)} p12={fmt(p.a12)} p13={fmt(p.a13)} "
        f"p22={fmt(p.a22)} p23={fmt(p.a23)} p33={fmt(p.a33)}",
    ]


def _tune_csv(report: TuningReport) -> str:
    rows = [TUNE_HEADER]
    for label, gains, pkg in (
        ("single-stage", report.single_stage_gains, report.riccati_lqr),
        ("suboptimal", report.suboptimal_gains, report.riccati_subopt),
    ):
        p = pkg.p
        rows.append(
            ",".join(
                [label]
                + [
                    fmt(v)
                    for v in (
                        gains.kp,
                        gains.ki,
                        gains.kd,
                        pkg.q_diag[0],
                        pkg.q_diag[1],
                        pkg.q_diag[2],
                        pkg.r,
                        p.a11,
                        p.a12,
                        p.a13,
                        p.a22,
                        p.a23,
                        p.a33,
                        pkg.care_residual,
                    )
                ]
            )
        )
    return "\n".join(rows) + "\n"


def _cmd_tune(args: argparse.Namespace, out) -> int:
    cfg = resolve_config(args)
    plant = _require_plant(cfg)
    target = _require_target(cfg)
    if cfg.desired_zeta is None:
        raise ConfigError("tune needs --desired-zeta or [tune] desired_zeta")
    report = two_stage_tune(
        plant,
        target,
        cfg.desired_zeta,
        q_step=cfg.tune_q_step,
        r=cfg.r,
        refine=cfg.refine,
    )
    lines = [
        f"plant: k={fmt(plant.k)} zeta_ol={fmt(plant.zeta_ol)} "
        f"omega_n_ol={fmt(plant.omega_n_ol)}",
        f"stage 1 target: zeta_cl={fmt(target.zeta_cl)} "
        f"omega_n_cl={fmt(target.omega_n_cl)} m={fmt(target.m)}",
        f"stage-1 gains: {_fmt_gains(report.stage1_gains)}",
        f"desired zeta: {fmt(cfg.desired_zeta)}",
        f"chosen q: {fmt(report.chosen_q)}",
        f"achieved: zeta={fmt(report.achieved_zeta)} "
        f"omega_n={fmt(report.achieved_omega_n)}",
        f"suboptimal gains: {_fmt_gains(report.suboptimal_gains)}",
        f"single-stage gains: {_fmt_gains(report.single_stage_gains)}",
        *_riccati_lines("single-stage", report.riccati_lqr),
        *_riccati_lines("suboptimal", report.riccati_subopt),
        "delta-p eigenvalues: "
        + " ".join(fmt(e) for e in report.delta_p_eigs),
        f"cost verdict: {report.cost_verdict}",
        f"initial control (single-stage): {fmt(report.initial_control_lqr)}",
        f"initial control (suboptimal): {fmt(report.initial_control_subopt)}",
    ]
    out.write("\n".join(lines) + "\n")
    if cfg.out is not None:
        _write_text(cfg.out, _tune_csv(report), out)
    return EXIT_OK


def _mcurve_csv(points) -> str:
    rows = [MCURVE_HEADER]
    for pt in points:
        if pt.equivalent_gains is not None:
            g = pt.equivalent_gains
            gain_cells = [fmt(g.kp), fmt(g.ki), fmt(g.kd)]
        else:
            gain_cells = ["", "", ""]
        zero_cells = (
            [fmt(pt.s_zero.real), fmt(pt.s_zero.imag)] if pt.s_zero is not None else ["", ""]
        )
        dom_cells = (
            [fmt(pt.dominant_zeta), fmt(pt.dominant_omega_n)]
            if pt.dominant_zeta is not None
            else ["", ""]
        )
        rows.append(
            ",".join(
                [fmt(pt.q)]
                + gain_cells
                + zero_cells
                + dom_cells
                + [pt.wedge.value, "true" if pt.stable else "false"]
            )
        )
    return "\n".join(rows) + "\n"


def _cmd_mcurve(args: argparse.Namespace, out) -> int:
    cfg = resolve_config(args)
    plant = _require_plant(cfg)
    if cfg.gains is not None:
        stage1 = cfg.gains
    else:
        stage1 = place_gains(plant, _require_target(cfg))
    points = mcurve(plant, stage1, cfg.q_from, cfg.q_to, cfg.q_step)
    _write_text(cfg.out, _mcurve_csv(points), out)
    return EXIT_OK


def _trace_csv(trace: Trace) -> str:
    rows = [TRACE_HEADER]
    for k in range(trace.t.size):
        rows.append(
            ",".join(
                fmt(v)
                for v in (trace.t[k], trace.r[k], trace.y[k], trace.u[k], trace.d[k])
            )
        )
    return "\n".join(rows) + "\n"


def _metrics_lines(label: str, m) -> list[str]:
    return [
        f"metrics ({label}):",
        f"  percent_overshoot: {fmt(m.percent_overshoot)}",
        f"  rise_time_10_90: {fmt(m.rise_time_10_90)}",
        f"  settling_time_2pct: {fmt(m.settling_time_2pct)}",
        f"  peak_control: {fmt(m.peak_control)}",
        f"  initial_control: {fmt(m.initial_control)}",
        f"  iae: {fmt(m.iae)}",
        f"  control_ise: {fmt(m.control_ise)}",
        f"  settled: {'true' if m.settled else 'false'}",
    ]


def _out_path_for(base: str | None, label: str) -> str | None:
    if base is None:
        return None
    if base.endswith(".csv"):
        return f"{base[:-4]}-{label}.csv"
    return f"{base}-{label}"


def _cmd_simulate(args: argparse.Namespace, out) -> int:
    cfg = resolve_config(args)
    plant = _require_plant(cfg)

    controllers: list[tuple[str, PidGains]] = []
    if getattr(args, "compare", False):
        target = _require_target(cfg)
        if cfg.desired_zeta is None:
            raise ConfigError("simulate --compare needs a desired zeta")
        report = two_stage_tune(
            plant, target, cfg.desired_zeta, q_step=cfg.tune_q_step, r=cfg.r
        )
        controllers = [
            ("suboptimal", report.suboptimal_gains),
            ("single-stage", report.single_stage_gains),
        ]
        zeta_scale, omega_scale = report.achieved_zeta, report.achieved_omega_n
    elif cfg.gains is not None:
        controllers = [("a", cfg.gains)]
        if cfg.gains2 is not None:
            controllers.append(("b", cfg.gains2))
        rep = closed_loop_poles(plant, cfg.gains)
        zeta_scale, omega_scale = rep.dominant_zeta, rep.dominant_omega_n
    else:
        target = _require_target(cfg)
        controllers = [("placement", place_gains(plant, target))]
        zeta_scale, omega_scale = target.zeta_cl, target.omega_n_cl

    if getattr(args, "disturb", False) and cfg.disturbance_amplitude == 0.0:
        cfg.disturbance_amplitude = DISTURBANCE_FRACTION * cfg.step_amplitude

    scenario = _scenario_for(cfg, plant, zeta_scale, omega_scale)
    disturbance_note = ""
    if scenario.disturbance_amplitude != 0.0:
        disturbance_note = f" at t={fmt(scenario.resolved_disturbance_time())}"
        if scenario.disturbance_time is None:
            # timing is a package default, not part of the tuning method
            disturbance_note += " (default 0.6*t_end)"
    out.write(
        f"scenario: t_end={fmt(scenario.t_end)} dt={fmt(scenario.dt)} "
        f"step={fmt(scenario.step_amplitude)} "
        f"disturbance={fmt(scenario.disturbance_amplitude)}{disturbance_note}\n"
    )

    results = []
    for label, gains in controllers:
        # fail fast on non-stabilizing gains instead of integrating to overflow
        closed_loop_poles(plant, gains)
        trace = simulate_closed_loop(plant, gains, scenario)
        m = metrics(trace, gains, scenario)
        results.append((label, gains, trace, m))
        out.write(f"controller ({label}): {_fmt_gains(gains)}\n")
        out.write("\n".join(_metrics_lines(label, m)) + "\n")

    if len(results) == 1:
        _write_text(cfg.out, _trace_csv(results[0][2]), out)
    else:
        for label, _gains, trace, _m in results:
            path = _out_path_for(cfg.out, label)
            if path is None:
                out.write(f"trace ({label}):\n")
                out.write(_trace_csv(trace))
            else:
                _write_text(path, _trace_csv(trace), out)
        (_, _, trace_a, met_a), (_, _, trace_b, met_b) = results[0], results[1]
        max_dy = float(np.abs(trace_a.y - trace_b.y).max())
        out.write("comparison (first/second):\n")
        out.write(
            f"  initial_control ratio: {fmt(met_a.initial_control / met_b.initial_control)}\n"
        )
        out.write(f"  peak_control ratio: {fmt(met_a.peak_control / met_b.peak_control)}\n")
        out.write(f"  max_output_difference: {fmt(max_dy)}\n")
    return EXIT_OK


def _cmd_inverse(args: argparse.Namespace, out) -> int:
    cfg = resolve_config(args)
    plant = _require_plant(cfg)
    if cfg.gains is not None:
        gains = cfg.gains
    else:
        gains = place_gains(plant, _require_target(cfg))
    pkg = riccati_package(plant, gains, cfg.r)
    lines = [
        f"plant: k={fmt(plant.k)} zeta_ol={fmt(plant.zeta_ol)} "
        f"omega_n_ol={fmt(plant.omega_n_ol)}",
        f"gains: {_fmt_gains(gains)}",
        *_riccati_lines("inverse", pkg),
        f"care residual: {fmt(pkg.care_residual)}",
    ]
    text = "\n".join(lines) + "\n"
    out.write(text)
    if cfg.out is not None:
        _write_text(cfg.out, text, out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing and entry point
# ---------------------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="path to an INI config file")
    parser.add_argument("--preset", help=f"named preset ({', '.join(sorted(PRESETS))})")
    parser.add_argument("--out", help="output path for CSV (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracpid",
        description="PID tuning by dominant pole placement, inverse-LQR cost "
        "reconstruction, and fractional-order zero mapping",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_place = sub.add_parser("place", help="pole-placement gains and pole report")
    _add_common(p_place)

    p_tune = sub.add_parser("tune", help="two-stage suboptimal tuning report")
    _add_common(p_tune)
    p_tune.add_argument("--desired-zeta", dest="desired_zeta", type=float)
    p_tune.add_argument("--q-step", dest="q_step", type=float)
    p_tune.add_argument("--r", type=float)
    p_tune.add_argument("--refine", action="store_true")

    p_mcurve = sub.add_parser("mcurve", help="fractional-order sweep as CSV")
    _add_common(p_mcurve)
    p_mcurve.add_argument("--q-from", dest="q_from", type=float)
    p_mcurve.add_argument("--q-to", dest="q_to", type=float)
    p_mcurve.add_argument("--q-step", dest="q_step", type=float)
    p_mcurve.add_argument("--gains", help="explicit controller gains kp,ki,kd")

    p_sim = sub.add_parser("simulate", help="closed-loop step response as CSV")
    _add_common(p_sim)
    p_sim.add_argument("--gains", help="controller gains kp,ki,kd")
    p_sim.add_argument("--gains2", help="second controller gains kp,ki,kd")
    p_sim.add_argument("--compare", action="store_true",
                       help="simulate both two-stage and single-stage designs")
    p_sim.add_argument("--desired-zeta", dest="desired_zeta", type=float)
    p_sim.add_argument("--dt", type=float)
    p_sim.add_argument("--t-end", dest="t_end", type=float)
    p_sim.add_argument("--disturbance-amplitude", dest="disturbance_amplitude", type=float)
    p_sim.add_argument("--disturbance-time", dest="disturbance_time", type=float)
    p_sim.add_argument("--disturb", action="store_true",
                       help="enable the default load disturbance "
                       "(half the step, at 0.6 of the horizon)")

    p_inv = sub.add_parser("inverse", help="inverse Riccati package for gains")
    _add_common(p_inv)
    p_inv.add_argument("--gains", help="controller gains kp,ki,kd")
    p_inv.add_argument("--r", type=float)

    return parser


_COMMANDS = {
    "place": _cmd_place,
    "tune": _cmd_tune,
    "mcurve": _cmd_mcurve,
    "simulate": _cmd_simulate,
    "inverse": _cmd_inverse,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _q_flags_valid(args)
        return _COMMANDS[args.command](args, out)
    except (UnstableClosedLoop, UnstableGains, NonFiniteState, RealZeros, OutsideWedge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSTABLE
    except TargetUnreachable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNREACHABLE
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def _q_flags_valid(args: argparse.Namespace) -> None:
    step = getattr(args, "q_step", None)
    if step is not None and step <= 0.0:
        raise ConfigError("q step must be positive")


if __name__ == "__main__":
    sys.exit(main())
