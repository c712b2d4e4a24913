"""Acceptance suite: every shipped criterion at its stated tolerance.

Each test prints one ``[acceptance] ... PASS/FAIL`` line (run with ``-s`` to
see them all). Failures list the measured values that broke the bound.
"""

import time
import warnings

import numpy as np
from scipy.linalg import expm

from fracpid import (
    ClosedLoopTarget,
    Cubic,
    Plant,
    Sym3,
    closed_loop_poles,
    default_scenario,
    delta_p_eigenvalues,
    eig_sym3,
    equivalent_pid,
    m_study,
    metrics,
    p_from_gains,
    place_gains,
    q_from_p,
    riccati_package,
    s_zeros,
    simulate_closed_loop,
    solve_cubic,
    two_stage_tune,
)

from cases import (
    BENCHMARKS,
    DELTA_EIGS_PUBLISHED,
    OSCILLATORY,
    OSC_TARGET_HIGH,
    OSC_TARGET_LOW,
    P_HIGH_PUBLISHED,
    P_LOW_PUBLISHED,
    Q_HIGH_PUBLISHED,
    Q_LOW_PUBLISHED,
    gains_tuple,
    max_rel_err,
    p_rows,
    rel_err,
)


def finish(name: str, failures: list[str]) -> None:
    verdict = "FAIL" if failures else "PASS"
    print(f"[acceptance] {name}: {verdict}")
    for failure in failures:
        print(f"    - {failure}")
    assert not failures, f"{name}: {failures}"


def check(failures: list[str], ok: bool, message: str) -> None:
    if not ok:
        failures.append(message)


# ---------------------------------------------------------------------------
# criterion 1: gain-synthesis regression, 4 significant figures, < 1 ms/call
# ---------------------------------------------------------------------------

GAIN_CASES = [
    (Plant(1, 0.2, 0.1), ClosedLoopTarget(0.98, 2, 10), (80.822, 78.400, 23.480)),
    (Plant(1, 0.2, 0.1), ClosedLoopTarget(0.75, 2, 10), (48.99, 60.00, 17.96)),
    (Plant(9, 0.2, 3), ClosedLoopTarget(0.75, 7, 10), (65.6944, 285.8333, 6.8667)),
    (Plant(25, 1, 5), ClosedLoopTarget(0.75, 10, 10), (48.0, 300.0, 3.2)),
    (Plant(1, 5, 1), ClosedLoopTarget(0.75, 5, 10), (305.25, 937.5, 35.0)),
]


def test_c1_gain_synthesis_regression():
    failures = []
    for plant, target, expected in GAIN_CASES:
        got = gains_tuple(place_gains(plant, target))
        err = max_rel_err(got, expected)
        check(failures, err <= 5e-4, f"gains {got} vs {expected}: rel err {err:.2e}")
    start = time.perf_counter()
    for _ in range(1000):
        place_gains(GAIN_CASES[0][0], GAIN_CASES[0][1])
    elapsed = time.perf_counter() - start
    check(failures, elapsed < 1.0, f"1000 syntheses took {elapsed:.3f}s (>= 1 ms each)")
    finish("C1 gain-synthesis regression", failures)


# ---------------------------------------------------------------------------
# criterion 2: inverse-Riccati regression for the oscillatory plant, 0.5%
# ---------------------------------------------------------------------------

def test_c2_inverse_riccati_regression():
    failures = []
    for target, p_pub, q_pub, label in (
        (OSC_TARGET_HIGH, P_HIGH_PUBLISHED, Q_HIGH_PUBLISHED, "high damping"),
        (OSC_TARGET_LOW, P_LOW_PUBLISHED, Q_LOW_PUBLISHED, "low damping"),
    ):
        gains = place_gains(OSCILLATORY, target)
        p = p_from_gains(OSCILLATORY, gains, 1.0)
        q = q_from_p(OSCILLATORY, p, 1.0)
        err_p = max_rel_err(p_rows(p), p_rows(Sym3.from_matrix(p_pub)))
        err_q = max_rel_err(q, q_pub)
        check(failures, err_p <= 5e-3, f"{label} P rel err {err_p:.2e}")
        check(failures, err_q <= 5e-3, f"{label} Q rel err {err_q:.2e}")
    finish("C2 inverse-Riccati regression", failures)


# ---------------------------------------------------------------------------
# criterion 3: differential-cost regression, 1%, all positive
# ---------------------------------------------------------------------------

def test_c3_differential_cost_regression():
    failures = []
    delta = Sym3.from_matrix(P_HIGH_PUBLISHED - P_LOW_PUBLISHED)
    eigs = eig_sym3(delta)
    err = max_rel_err(eigs, DELTA_EIGS_PUBLISHED)
    check(
        failures,
        err <= 1e-2,
        f"eigs {eigs} vs {DELTA_EIGS_PUBLISHED}: rel err {err:.2e}",
    )
    check(failures, all(e > 0 for e in eigs), f"eigs not all positive: {eigs}")
    # same verdict from the exact (unrounded) construction
    p_high = p_from_gains(OSCILLATORY, place_gains(OSCILLATORY, OSC_TARGET_HIGH))
    p_low = p_from_gains(OSCILLATORY, place_gains(OSCILLATORY, OSC_TARGET_LOW))
    exact_eigs, definite = delta_p_eigenvalues(p_high, p_low)
    check(failures, definite, f"exact difference not positive definite: {exact_eigs}")
    finish("C3 differential-cost regression", failures)


# ---------------------------------------------------------------------------
# criterion 4: fractional-map regression at q = 0.9, gains 0.5%, poles 1%
# ---------------------------------------------------------------------------

def test_c4_fractional_map_regression():
    failures = []
    for bench in BENCHMARKS:
        ghat = equivalent_pid(bench.stage1_gains, 0.9)
        err = max_rel_err(gains_tuple(ghat), gains_tuple(bench.equivalent_gains))
        check(failures, err <= 5e-3, f"{bench.name} equivalent gains rel err {err:.2e}")
        report = closed_loop_poles(bench.plant, ghat)
        err_z = rel_err(report.dominant_zeta, bench.achieved[0])
        err_w = rel_err(report.dominant_omega_n, bench.achieved[1])
        check(failures, err_z <= 1e-2, f"{bench.name} damping rel err {err_z:.2e}")
        check(failures, err_w <= 1e-2, f"{bench.name} frequency rel err {err_w:.2e}")
    finish("C4 fractional-map regression", failures)


# ---------------------------------------------------------------------------
# criterion 5: comparator regression, single-stage gains and Riccati rows, 1%
# ---------------------------------------------------------------------------

def test_c5_comparator_regression():
    failures = []
    for bench in BENCHMARKS:
        # single-stage placement at the published achieved point
        lqr_gains = place_gains(bench.plant, ClosedLoopTarget(*bench.achieved, 10.0))
        err_g = max_rel_err(gains_tuple(lqr_gains), gains_tuple(bench.lqr_gains))
        check(failures, err_g <= 1e-2, f"{bench.name} single-stage gains rel err {err_g:.2e}")
        p_lqr = p_from_gains(bench.plant, lqr_gains, 1.0)
        err_p = max_rel_err(p_rows(p_lqr), bench.lqr_p)
        check(failures, err_p <= 1e-2, f"{bench.name} single-stage P rel err {err_p:.2e}")
        p_sub = p_from_gains(bench.plant, equivalent_pid(bench.stage1_gains, 0.9), 1.0)
        err_ps = max_rel_err(p_rows(p_sub), bench.subopt_p)
        check(failures, err_ps <= 1e-2, f"{bench.name} suboptimal P rel err {err_ps:.2e}")
    finish("C5 comparator regression", failures)


# ---------------------------------------------------------------------------
# criterion 6: cost ordering, difference eigenvalues all positive per plant
# ---------------------------------------------------------------------------

def test_c6_cost_ordering():
    failures = []
    for bench in BENCHMARKS:
        report = two_stage_tune(bench.plant, bench.stage1, bench.desired_zeta)
        eigs, definite = delta_p_eigenvalues(
            report.riccati_lqr.p, report.riccati_subopt.p
        )
        check(failures, definite, f"{bench.name}: difference eigs {eigs}")
    finish("C6 cost ordering", failures)


# ---------------------------------------------------------------------------
# criterion 7: effort ordering and trace overlap
# ---------------------------------------------------------------------------

def test_c7_effort_ordering_and_overlap():
    failures = []
    for bench in BENCHMARKS:
        report = two_stage_tune(bench.plant, bench.stage1, bench.desired_zeta)
        scenario = default_scenario(
            bench.plant, report.achieved_zeta, report.achieved_omega_n
        )
        trace_sub = simulate_closed_loop(bench.plant, report.suboptimal_gains, scenario)
        trace_lqr = simulate_closed_loop(bench.plant, report.single_stage_gains, scenario)
        m_sub = metrics(trace_sub, report.suboptimal_gains, scenario)
        m_lqr = metrics(trace_lqr, report.single_stage_gains, scenario)
        check(
            failures,
            m_sub.initial_control < m_lqr.initial_control,
            f"{bench.name}: initial control {m_sub.initial_control:.4g} !< "
            f"{m_lqr.initial_control:.4g}",
        )
        check(
            failures,
            m_sub.peak_control < m_lqr.peak_control,
            f"{bench.name}: peak control {m_sub.peak_control:.4g} !< "
            f"{m_lqr.peak_control:.4g}",
        )
        max_dy = float(np.abs(trace_sub.y - trace_lqr.y).max())
        check(
            failures,
            max_dy <= 0.05 * scenario.step_amplitude,
            f"{bench.name}: max output difference {max_dy:.4f} > 0.05 of the step",
        )
    finish("C7 effort ordering and trace overlap", failures)


# ---------------------------------------------------------------------------
# criterion 8: property suites with no published numbers
# ---------------------------------------------------------------------------

def test_c8_property_suites():
    failures = []

    # identity of the equivalent gains at q = 1
    for bench in BENCHMARKS:
        ghat = equivalent_pid(bench.stage1_gains, 1.0)
        err = max_rel_err(gains_tuple(ghat), gains_tuple(bench.stage1_gains))
        check(failures, err <= 1e-9, f"{bench.name} q=1 identity err {err:.2e}")

    # mapped zeros match the roots of the equivalent quadratic
    for bench in BENCHMARKS:
        for q in (0.95, 0.9, 0.85):
            ghat = equivalent_pid(bench.stage1_gains, q)
            upper, _ = s_zeros(bench.stage1_gains, q)
            roots = sorted(
                np.roots([ghat.kd, ghat.kp, ghat.ki]), key=lambda z: -z.imag
            )
            err = abs(roots[0] - upper) / abs(upper)
            check(failures, err <= 1e-9, f"{bench.name} q={q} zero roundtrip {err:.2e}")

    # pole-placement roundtrip
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(100):
        plant = Plant(
            k=float(rng.uniform(0.2, 30.0)),
            zeta_ol=float(rng.uniform(0.0, 4.0)),
            omega_n_ol=float(rng.uniform(0.05, 10.0)),
        )
        target = ClosedLoopTarget(
            zeta_cl=float(rng.uniform(0.2, 0.95)),
            omega_n_cl=float(rng.uniform(0.5, 20.0)),
            m=float(rng.uniform(3.0, 15.0)),
        )
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            gains = place_gains(plant, target)
        report = closed_loop_poles(plant, gains)
        worst = max(
            worst,
            rel_err(report.dominant_zeta, target.zeta_cl),
            rel_err(report.dominant_omega_n, target.omega_n_cl),
        )
    check(failures, worst <= 1e-9, f"placement roundtrip worst err {worst:.2e}")

    # constructed packages close the Riccati equation
    worst_res = 0.0
    for _ in range(50):
        plant = Plant(
            k=float(rng.uniform(0.2, 20.0)),
            zeta_ol=float(rng.uniform(0.0, 3.0)),
            omega_n_ol=float(rng.uniform(0.1, 8.0)),
        )
        target = ClosedLoopTarget(
            zeta_cl=float(rng.uniform(0.3, 0.95)),
            omega_n_cl=float(rng.uniform(0.5, 15.0)),
            m=float(rng.uniform(3.0, 12.0)),
        )
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            gains = place_gains(plant, target)
            pkg = riccati_package(plant, gains)
        worst_res = max(worst_res, pkg.care_residual)
    check(failures, worst_res <= 1e-8, f"worst constructed residual {worst_res:.2e}")

    # simulator against the exact sampled solution
    bench = BENCHMARKS[0]
    gains = place_gains(bench.plant, bench.stage1)
    scenario = default_scenario(bench.plant, bench.stage1.zeta_cl, bench.stage1.omega_n_cl)
    trace = simulate_closed_loop(bench.plant, gains, scenario)
    k, zo, wo = bench.plant.k, bench.plant.zeta_ol, bench.plant.omega_n_ol
    ac = np.array(
        [
            [0.0, 1.0, 0.0],
            [-(wo**2 + k * gains.kp), -(2 * zo * wo + k * gains.kd), k * gains.ki],
            [-1.0, 0.0, 0.0],
        ]
    )
    m4 = np.zeros((4, 4))
    m4[:3, :3] = ac
    m4[:3, 3] = [0.0, k * gains.kp, 1.0]
    stepper = expm(m4 * scenario.dt)
    aug = np.array([0.0, 0.0, 0.0, 1.0])
    worst_sim = 0.0
    for i in range(1, trace.t.size):
        aug = stepper @ aug
        worst_sim = max(worst_sim, abs(trace.y[i] - aug[0]))
    check(failures, worst_sim <= 1e-6, f"simulator vs exact solution {worst_sim:.2e}")

    # cubic solver against the companion-matrix oracle
    worst_cubic = 0.0
    for _ in range(1000):
        if rng.random() < 0.5:
            re = -rng.uniform(0.05, 50.0)
            im = rng.uniform(0.05, 50.0)
            roots = [complex(re, im), complex(re, -im), complex(-rng.uniform(0.05, 80.0), 0)]
        else:
            roots = [complex(-rng.uniform(0.05, 80.0), 0) for _ in range(3)]
        coeffs = np.real(np.poly(roots))
        ours = solve_cubic(Cubic(*coeffs)).roots
        oracle = sorted(np.roots(coeffs), key=lambda z: (abs(z.real), z.imag))
        for got, want in zip(ours, oracle):
            worst_cubic = max(worst_cubic, abs(got - want) / max(1.0, abs(want)))
    check(failures, worst_cubic <= 1e-8, f"cubic vs companion oracle {worst_cubic:.2e}")

    finish("C8 property suites", failures)


# ---------------------------------------------------------------------------
# criterion 9: dominance saturation on the oscillatory plant
# ---------------------------------------------------------------------------

def test_c9_dominance_saturation():
    failures = []
    records = m_study(OSCILLATORY, 0.98, 2.0, [3, 10, 20])
    by_m = {r.m: r.metrics for r in records}
    for metric_name, getter in (
        ("overshoot", lambda m: m.percent_overshoot),
        ("rise time", lambda m: m.rise_time_10_90),
    ):
        sat = rel_err(getter(by_m[20]), getter(by_m[10]))
        low = rel_err(getter(by_m[3]), getter(by_m[10]))
        check(
            failures,
            sat < 0.05,
            f"{metric_name}: m=20 vs m=10 differs by {sat:.1%} (bound 5%)",
        )
        check(
            failures,
            low > 0.05,
            f"{metric_name}: m=3 vs m=10 differs by only {low:.1%} (must exceed 5%)",
        )
    finish("C9 dominance saturation", failures)
