"""Exit criteria for the package, one test per criterion.

Each test records a one-line PASS/FAIL verdict; the lines are printed in
the pytest terminal summary (see conftest.py).
"""
import math
import subprocess
import sys
import time
from fractions import Fraction

import mpmath
import numpy as np

from gaussbound import constants as K
from gaussbound.harness import ExperimentConfig, run_config
from gaussbound.simplex import (
    equally_spaced_grid,
    lebesgue_bound,
    random_points_in_simplex,
    regular_simplex,
    reproduction_weights,
)
from gaussbound.suites import lebesgue_scan_1d, radial_moment_quadrature

LOG_GUARD = 1e-12
RESULTS: dict[int, str] = {}


def record(num, title, ok, detail=""):
    RESULTS[num] = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {title}" + (f" ({detail})" if detail else "")
    assert ok, RESULTS[num]


def _mp_constants(beta, b0, n=1):
    """Independent 40-digit evaluation of c1, c2, c3, delta0."""
    mp = mpmath.MPContext()
    mp.dps = 40
    beta, b0 = mp.mpf(beta), mp.mpf(b0)
    rho = mp.sqrt(3) / mp.e
    rho3 = mp.mpf(12) ** mp.mpf(0.25) * mp.sqrt(mp.e * beta)
    c2 = rho3**4 * 27 * 128 * b0**3
    alpha = mp.pi ** (mp.mpf(n) / 2) / mp.gamma(mp.mpf(n) / 2 + 1)
    if n % 2:
        dpp = (mp.sqrt(2 + 1 / mp.e) * mp.pi ** (mp.mpf(n - 1) / 4) * mp.sqrt(n * alpha)
               * mp.mpf(2) ** (mp.mpf(n) / 4) * rho ** (mp.mpf(n - 1) / 4))
    else:
        dpp = (mp.pi ** (mp.mpf(n - 1) / 4) * mp.sqrt(n * alpha)
               * mp.mpf(2) ** (mp.mpf(n + 1) / 4) * rho ** (mp.mpf(n - 2) / 4))
    c1 = dpp / mp.sqrt(16 * mp.pi) / mp.sqrt(b0)
    return mp, dict(c1=c1, c2=c2, c3=b0 / 4, delta0=min(b0, 1 / c2))


def test_criterion_1_gamma_golden():
    t0 = time.perf_counter()
    got = tuple(K.gamma_sequence(n) for n in range(1, 6))
    dt = time.perf_counter() - t0
    record(1, "gamma sequence golden values", got == (2, 12, 78, 632, 6330) and dt < 1e-3,
           f"{got}, {dt * 1e3:.3f} ms")


def test_criterion_2_stirling():
    t0 = time.perf_counter()
    lower_fail, upper_fail, kk1_fail = [], [], []
    for k in range(1, 171):
        exact = math.log(math.factorial(k))
        env = K.stirling_envelope(k)
        if not env.lower_log <= exact + LOG_GUARD:
            lower_fail.append(k)
        if not exact <= env.upper_log + LOG_GUARD:
            upper_fail.append(k)
        bound, _ = K.factorial_bound_22(k)
        if not exact <= bound + LOG_GUARD:
            kk1_fail.append(k)
    dt = time.perf_counter() - t0
    ok = lower_fail == [] and upper_fail == [2, 3] and kk1_fail == [3] and dt < 1.0
    record(2, "factorial envelopes vs exact factorials", ok,
           f"lower fails {lower_fail}, upper fails {upper_fail}, k^(k-1) fails {kk1_fail}, {dt:.3f} s")


def test_criterion_3_moment_oracle():
    t0 = time.perf_counter()
    violations = []
    for n in range(1, 7):
        for l in range(2, 41, 2):
            for beta in (0.1, 1.0, 4.0):
                if not K.moment_exact(n, l, beta) <= K.moment_upper_bound(n, l, beta) + LOG_GUARD:
                    violations.append((n, l, beta))
    worst_quad = 0.0
    for n in range(1, 4):
        for l in range(2, 11, 2):
            for beta in (0.1, 1.0, 4.0):
                ex = math.exp(K.moment_exact(n, l, beta))
                worst_quad = max(worst_quad, abs(radial_moment_quadrature(n, l, beta) - ex) / ex)
    dt = time.perf_counter() - t0
    ok = not violations and worst_quad <= 1e-9 and dt < 5.0
    record(3, "moment closed form <= moment bound, and == quadrature", ok,
           f"{len(violations)} bound violations {sorted({(n, l) for n, l, _ in violations})}, "
           f"quadrature rel err {worst_quad:.2e}, {dt:.3f} s")


def test_criterion_4_lebesgue():
    t0 = time.perf_counter()
    rng = np.random.default_rng(20240101)
    worst = 0.0
    for n in (1, 2, 3):
        s = regular_simplex(n, 1.0)
        for d in range(1, 6):
            g = equally_spaced_grid(s, d)
            for x in random_points_in_simplex(s, 100, rng):
                excess = reproduction_weights(g, x).l1_norm - lebesgue_bound(d)
                worst = max(worst, excess)
    peak = lebesgue_scan_1d(2, 1000)
    dt = time.perf_counter() - t0
    ok = worst <= 1e-9 and abs(peak - 1.25) <= 1e-6 and dt < 10.0
    record(4, "reproduction weights within C(2d-1, d)", ok,
           f"max excess {worst:.3g}, 1-D d=2 peak {peak:.9f}, {dt:.3f} s")


def test_criterion_5_constants():
    tc = K.theorem_constants(1, 1.0, 1.0)
    _, ref = _mp_constants(1.0, 1.0)
    errs = {name: abs(float(getattr(tc, name).value) - float(ref[name])) / float(ref[name])
            for name in ("c1", "c2", "delta0")}
    errs["c3"] = abs(tc.c3 - float(ref["c3"])) / float(ref["c3"])
    c2_closed = 12 * math.e**2 * 3456
    same = all(
        (t.c2, t.c3, t.delta0) == (tc.c2, tc.c3, tc.delta0)
        for t in (K.theorem_constants(n, 1.0, 1.0) for n in range(2, 11))
    )
    ok = (max(errs.values()) <= 1e-10 and same
          and abs(tc.c2.value - c2_closed) <= 1e-10 * c2_closed
          and abs(tc.c1.value - 0.36503) < 5e-5 and abs(tc.delta0.value - 3.263e-6) < 5e-10)
    record(5, "theorem constants vs 40-digit evaluation, dimension independence", ok,
           f"max rel err {max(errs.values()):.2e}, bit-identical over n=1..10: {same}")


def test_criterion_6_end_to_end():
    t0 = time.perf_counter()
    cfg = ExperimentConfig(n=1, beta=1.0, b0=0.05, delta=[0.010, 0.015, 0.020, 0.025],
                           test_function={"kind": "midpoint"})
    reports = run_config(cfg)
    dt = time.perf_counter() - t0
    _, ref = _mp_constants(1.0, 0.05)
    d = mpmath.mpf("0.02")
    expected = float(ref["c1"] * mpmath.sqrt(d) * (ref["c2"] * d) ** (ref["c3"] / d))
    at02 = next(r for r in reports if r.delta == 0.02)
    rel = abs(at02.bound_value / at02.norm_f - expected) / expected
    ok = (
        len(reports) == 4
        and all(r.status == "ok" for r in reports)
        and all(r.sup_error <= r.bound_value and r.margin_ratio <= 1 for r in reports)
        and rel <= 1e-6
        and dt < 5.0
    )
    margins = ", ".join(f"{r.delta:g}:{r.margin_ratio:.2e}" for r in reports)
    record(6, "sup error <= bound at desk scale (n=1, beta=1, b0=0.05)", ok,
           f"margins {margins}; bound(0.02)={at02.bound_value:.9f} vs {expected:.9f}; {dt:.3f} s")


def test_criterion_7_improvement():
    t0 = time.perf_counter()
    bad = []
    for n in range(1, 11):
        for beta in (0.1, 1.0):
            for b0 in (0.05, 1.0):
                cmp = K.compare_bounds(n, beta, b0)
                if not (cmp.log_a2 > cmp.log_c2 and cmp.c3 > cmp.a3
                        and cmp.c3_over_a3 == Fraction(2 * K.gamma_sequence(n))):
                    bad.append((n, beta, b0))
    spot = K.legacy_constants(1, 1.0, 1.0).a2.log10
    dt = time.perf_counter() - t0
    ok = not bad and abs(spot - 10.63) <= 0.01 and dt < 1.0
    record(7, "classical constants worse than improved ones", ok,
           f"failures {bad}, log10 a2(n=1)={spot:.4f}, {dt:.3f} s")


def test_criterion_8_monotone():
    t0 = time.perf_counter()
    rng = np.random.default_rng(8)
    bad = underflow = 0
    for _ in range(20):
        beta = float(10 ** rng.uniform(-1, 1))
        b0 = float(10 ** rng.uniform(-2, 0.3))
        tc = K.theorem_constants(1, beta, b0)
        d0 = tc.delta0.value
        grid = np.linspace(d0 / 50, d0, 50)
        # compared in log space: for large b0/delta the float value underflows to 0
        logs = [K.log_bound_value(tc, float(d), 1.0) for d in grid]
        vals = [K.bound_value(tc, float(d), 1.0) for d in grid]
        bad += not (all(b > a for a, b in zip(logs, logs[1:]))
                    and all(b >= a for a, b in zip(vals, vals[1:])))
        underflow += sum(v == 0.0 for v in vals)
    dt = time.perf_counter() - t0
    record(8, "bound strictly increasing in delta", bad == 0 and dt < 1.0,
           f"{bad} non-monotone sweeps of 20, {underflow} values below double range, {dt:.3f} s")


def test_criterion_9_determinism(write_config, tmp_path):
    path = write_config({
        "n": 2, "beta": 1.0, "b0": 0.05, "delta": [0.025, 0.015, 0.02], "seed": 11,
        "test_function": {"kind": "random", "count": 4, "coef_range": [-1.0, 1.0]},
    })
    outs = []
    for i in range(2):
        out = tmp_path / f"run{i}.csv"
        proc = subprocess.run(
            [sys.executable, "-m", "gaussbound", "experiment", "--config", str(path), "--out", str(out)],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0, proc.stderr
        outs.append(out.read_bytes())
    record(9, "experiment CSV byte-identical across invocations", outs[0] == outs[1],
           f"{len(outs[0])} bytes")
