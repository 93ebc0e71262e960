"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""
import math
import time

import numpy as np
import pytest

from oscitool.cli import fitted_slope, minkowski_draws
from oscitool.frft import frft_compose_check, frft_multipliers
from oscitool.hermite import HermiteCoeffs, multi_indices
from oscitool.modspace import hilbert_mod_norm, nu_omega_all, stft_rotation_check, verify_frft_mod_estimate
from oscitool.oscillator import (
    PropagatorSpec,
    apply_propagator,
    classify_growth,
    exceeds_polynomial_bounds,
    propagator_multipliers,
    witness_sequence,
)
from oscitool.strichartz import (
    InadmissibleExponentsError,
    TimeGrid,
    TimeSlices,
    duhamel_residual,
    hls_bound,
    solve,
    verify_strichartz,
)


@pytest.fixture
def report(capsys):
    def _report(number, name, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance {number:2d}] {'PASS' if ok else 'FAIL'}  {name}: {detail}")
        assert ok, detail

    return _report


def test_01_central_identity(report):
    rng = np.random.default_rng(1)
    start = time.perf_counter()
    worst = 0.0
    for d in (1, 2, 3):
        idx = multi_indices(d, 20)
        for _ in range(10):
            rho = rng.uniform(-1, 1, d) + 1j * rng.uniform(-0.3, 0.3, d)
            c = complex(rng.uniform(-3, 3), rng.uniform(-1, 1))
            lhs = propagator_multipliers(PropagatorSpec(-0.25j * math.pi, rho, c, 1.0), idx)
            rhs = np.exp(-0.25j * math.pi * (rho.sum() + c)) * frft_multipliers(idx, rho)
            worst = max(worst, float(np.max(np.abs(lhs - rhs) / np.abs(rhs))))
    elapsed = time.perf_counter() - start
    report(1, "central identity", worst <= 1e-13 and elapsed < 1.0,
           f"max rel error {worst:.2e} (tol 1e-13), {elapsed:.3f} s (limit 1 s)")


def test_02_route_agreement(report):
    from oscitool.frft import kernel_frft, spectral_frft
    from oscitool.hermite import synthesize, uniform_grid

    start = time.perf_counter()
    grid = uniform_grid(96, 8.0)
    worst = 0.0
    for k in range(7):
        c = HermiteCoeffs.unit((k,), 6)
        g = synthesize(c, grid)
        for rho in (0.25, 0.5, 1.0, 1.5):
            diff = kernel_frft(g, rho).values - synthesize(spectral_frft(c, rho), grid).values
            worst = max(worst, float(np.max(np.abs(diff))))
    elapsed = time.perf_counter() - start
    report(2, "kernel vs spectral route", worst <= 1e-5 and elapsed < 5.0,
           f"max abs error {worst:.2e} (tol 1e-5), {elapsed:.3f} s (limit 5 s)")


def test_03_group_law(report):
    rng = np.random.default_rng(3)
    worst_int, worst_real = 0.0, 0.0
    for _ in range(100):
        d = int(rng.integers(1, 4))
        v = rng.normal(size=len(multi_indices(d, 8))) + 1j * rng.normal(size=len(multi_indices(d, 8)))
        c = HermiteCoeffs(d, 8, v / np.max(np.abs(v)))
        r1, r2 = rng.integers(-9, 10, d), rng.integers(-9, 10, d)
        worst_int = max(worst_int, frft_compose_check(r1, r2, c))
        worst_real = max(worst_real, frft_compose_check(rng.uniform(-6, 6, d), rng.uniform(-6, 6, d), c))
    idx = multi_indices(3, 12)
    period = bool(np.all(frft_multipliers(idx, 4) == 1) and np.all(frft_multipliers(idx, [1, 3, -4]) ==
                                                                     frft_multipliers(idx, [5, -1, 0])))
    ok = worst_int == 0.0 and period and worst_real <= 1e-13
    report(3, "group law and period 4", ok,
           f"integer pairs max deviation {worst_int:g} (exact), period-4 exact={period}, "
           f"real pairs max deviation {worst_real:.1e} (rounding)")


def test_04_minkowski(report):
    start = time.perf_counter()
    draws = minkowski_draws(200, seed=0)
    elapsed = time.perf_counter() - start
    failures = [r for r in draws if not r["pass"]]
    worst = max(r["lhs"] / r["rhs"] for r in draws)
    report(4, "rotated Minkowski inequality", not failures and elapsed < 30.0,
           f"{len(failures)} of 200 draws violate lhs <= 1.02 rhs (max lhs/rhs {worst:.4f}), "
           f"{elapsed:.1f} s (limit 30 s)")


@pytest.mark.xfail(strict=True, reason="h0 is invariant under every F_rho, so the fitted slope is 0")
def test_05_scaling_exponent(report):
    f = HermiteCoeffs.unit((0,), 8)
    sweep = np.linspace(0.05, 0.5, 10)
    slopes = {}
    for (p, q), expected, tol in (((np.inf, 1.0), -1.0, 0.1), ((4.0, 2.0), -0.25, 0.05)):
        reps = [verify_frft_mod_estimate(f, rho, p, q) for rho in sweep]
        slopes[(p, q)] = (fitted_slope(reps, "M->M", p, q), expected, tol)
    ok = all(abs(s - e) <= t for s, e, t in slopes.values())
    detail = "; ".join(f"(p,q)=({p:g},{q:g}) slope {s:.3g} vs {e:g} +- {t:g}" for (p, q), (s, e, t) in slopes.items())
    report(5, "scaling exponent for h0", ok, detail)


def test_06_hilbert_isometry(report):
    rng = np.random.default_rng(6)
    weights = {
        "1": lambda r: np.ones(len(r)),
        "r^1/2": lambda r: np.prod(np.sqrt(r), axis=-1),
        "(1+r)^2": lambda r: np.prod((1.0 + r) ** 2, axis=-1),
    }
    worst = 0.0
    for name, w0 in weights.items():
        nus = {d: nu_omega_all(w0, d, 12) for d in (1, 2)}
        for _ in range(50):
            d = int(rng.integers(1, 3))
            n = len(nus[d])
            c = HermiteCoeffs(d, 12, rng.normal(size=n) + 1j * rng.normal(size=n))
            t, r = rng.uniform(-10, 10), rng.uniform(0.1, 3.0)
            e = apply_propagator(c, PropagatorSpec(1j * t, rng.uniform(0.2, 2.0, d), 0.0, r))
            a, b = hilbert_mod_norm(e, w0, nus[d]), hilbert_mod_norm(c, w0, nus[d])
            worst = max(worst, abs(a - b) / b)
    report(6, "Hilbert modulation isometry", worst <= 1e-12,
           f"max rel deviation {worst:.2e} over 150 draws (tol 1e-12)")


def test_07_nu_baseline(report):
    one = lambda r: np.ones(len(r))  # noqa: E731
    worst = max(float(np.max(np.abs(nu_omega_all(one, d, 40) - 1.0))) for d in (1, 2))
    report(7, "nu_omega baseline", worst <= 1e-10, f"max |nu - 1| over |alpha| <= 40, d = 1, 2: {worst:.2e}")


def test_08_ill_posedness_witness(report):
    w = witness_sequence("schwartz-log2", 1, 200)
    with np.errstate(over="ignore"):
        grown = apply_propagator(w, PropagatorSpec(zeta=1.0, rho=1.0, r=1.0))
    bounds = exceeds_polynomial_bounds(grown, 10)
    tag = classify_growth(grown).tag
    kept = [classify_growth(apply_propagator(w, PropagatorSpec(zeta=1j * t))).tag for t in (-2.0, 0.5, 3.0)]
    ok = all(bounds.values()) and tag == "Beyond" and all(k == "Schwartz" for k in kept)
    report(8, "ill-posedness witness", ok,
           f"bounds <alpha>^N violated for N=0..10: {all(bounds.values())}; zeta=1 tag {tag}; "
           f"zeta=it tags {kept}")


def test_09_stft_rotation_modulus(report):
    fs = {
        "h0": HermiteCoeffs.unit((0,), 2),
        "h1": HermiteCoeffs.unit((1,), 2),
        "h0+ih2": HermiteCoeffs.unit((0,), 2) + HermiteCoeffs.unit((2,), 2) * 1j,
    }
    worst = max(stft_rotation_check(c, rho) for c in fs.values() for rho in (0.3, 1.0, 1.7))
    report(9, "STFT rotation modulus", worst <= 1e-3, f"max deviation on 11x11 lattice {worst:.2e} (tol 1e-3)")


def test_10_duhamel_residual(report):
    u0 = HermiteCoeffs(1, 6, np.array([1, 0, 0.5j, 0, 0, 0, 0.25]))
    f = HermiteCoeffs(1, 6, np.array([0, 1, 0, 0.3, 0, 0, 0]))
    res = []
    for panels in (8, 16, 32, 64):
        grid = TimeGrid.uniform(1.0, panels, 3)
        F = TimeSlices.from_function(grid, lambda s: f * np.cos(2 * s), 1, 6)
        res.append(duhamel_residual(solve(u0, F, grid), F))
    orders = np.log2(np.array(res[:-1]) / np.array(res[1:]))
    report(10, "Duhamel residual order", bool(np.all(orders >= 1.8)),
           f"residuals {', '.join(f'{r:.2e}' for r in res)}; observed orders {np.round(orders, 3).tolist()}")


def test_11_hls_stability(report):
    vals = [hls_bound(2, 2, 2, T=1.0, panels=n) for n in (4, 8, 16)]
    spread = max(vals) / min(vals) - 1
    report(11, "HLS bound stability", bool(np.all(np.isfinite(vals))) and spread <= 0.05,
           f"C at 4/8/16 panels: {', '.join(f'{v:.5f}' for v in vals)}; spread {spread:.2%} (tol 5%)")


def test_12_strichartz_gate(report):
    rejected = []
    for kw, needle in (
        (dict(theorem="mod1", p=np.inf, q=1.0, p0=2.0, r0=2.0), "< 1"),
        (dict(theorem="mod1", p=4.0, q=1.0, p0=1.0, r0=np.inf), "1 + 1/r0 - 1/p0"),
        (dict(theorem="mod2", p=4.0, q=2.0, r0=3.0), "1/r0 = d(1/q - 1/p)"),
        (dict(theorem="mod3", p=1.5, p0=2.0), "2 <= p"),
        (dict(theorem="mod4", p1=4.0, p01=2.0, p2=4.0, p02=4 / 3), "2/p0'"),
    ):
        try:
            verify_strichartz(**kw)
            rejected.append(False)
        except InadmissibleExponentsError as exc:
            rejected.append(needle in str(exc))
    stable = []
    for kw in (
        dict(theorem="mod1", p=2.0, q=2.0, p0=2.0, r0=2.0),
        dict(theorem="mod1", p=4.0, q=2.0, p0=2.0, r0=2.0, variant=2),
        dict(theorem="mod2", p=4.0, q=2.0, r0=4.0),
        dict(theorem="mod3", p=4.0, p0=4 / 3),
        dict(theorem="mod4", p1=4.0, p01=4 / 3, p2=4.0, p02=4 / 3),
    ):
        a = verify_strichartz(panels=8, **kw)["ratio"]
        b = verify_strichartz(panels=16, **kw)["ratio"]
        stable.append(bool(np.isfinite(a) and np.isfinite(b) and abs(b / a - 1) <= 0.05))
    report(12, "Strichartz admissibility gate", all(rejected) and all(stable),
           f"inadmissible rejected with named inequality: {rejected}; admissible ratios stable: {stable}")
