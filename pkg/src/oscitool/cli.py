"""Command line entry point ``oscitool``.

Every verb reads coefficient files in the ``HermiteCoeffs`` JSON layout,
writes CSV/JSON artifacts into the output directory (``--out-dir``, else
``$OSCITOOL_OUTPUT_DIR``, else the working directory) and prints a JSON
summary on stdout.

Exit codes: 0 success, 1 a numeric check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .frft import frft_multipliers, kernel_frft, spectral_frft
from .hermite import GridFunction, HermiteCoeffs, multi_indices, synthesize, uniform_grid
from .modspace import (
    MixedNormSpec,
    StftMatrix,
    Weight,
    default_lattice,
    hilbert_mod_norm,
    mixed_norm,
    nu_omega_all,
    stft_matrix,
    verify_frft_mod_estimate,
    verify_minkowski,
)
from .oscillator import PropagatorSpec, apply_propagator, classify_growth, eigenvalues
from .strichartz import (
    InadmissibleExponentsError,
    TimeGrid,
    TimeSlices,
    duhamel_S,
    evolve_E,
    strichartz_sweep,
    verify_strichartz,
)

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2
ENV_OUTPUT = "OSCITOOL_OUTPUT_DIR"


class UsageError(Exception):
    pass


# --- helpers -------------------------------------------------------------------


def _complex(text):
    try:
        return complex(str(text).replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _complex_list(text):
    return [_complex(t) for t in str(text).split(",")]


def _real_list(text):
    return [float(t) for t in str(text).split(",")]


def _exponent(text):
    if str(text).lower() in ("inf", "infinity", "oo"):
        return np.inf
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("exponents must be positive")
    return value


def _sweep(text):
    """``rho=a:b:n`` (linspace) or ``rho=v1,v2,...``."""
    name, _, body = str(text).partition("=")
    if name != "rho" or not body:
        raise argparse.ArgumentTypeError("sweep must look like rho=0.05:0.5:10 or rho=0.1,0.2")
    if ":" in body:
        a, b, n = body.split(":")
        return np.linspace(float(a), float(b), int(n)).tolist()
    return _real_list(body)


def _weight(text):
    """``constant``, ``polynomial:R``, ``rotational-power:S`` (``w0(r) = prod (1 + r_j)^S``)."""
    kind, _, arg = str(text or "constant").partition(":")
    if kind == "constant":
        return Weight.constant(float(arg) if arg else 1.0)
    if kind == "polynomial":
        return Weight.polynomial(float(arg or 1.0))
    if kind == "rotational-power":
        s = float(arg or 1.0)
        return Weight.rotational(lambda r: np.prod((1.0 + r) ** s, axis=-1))
    raise argparse.ArgumentTypeError(f"unknown weight {text!r}")


def _w0(text):
    """``one``, ``sqrt``, ``power:S`` (``prod r_j^S``), ``poly:S`` (``prod (1 + r_j)^S``)."""
    kind, _, arg = str(text).partition(":")
    if kind == "one":
        return lambda r: np.ones(len(r))
    if kind == "sqrt":
        return lambda r: np.prod(np.sqrt(r), axis=-1)
    if kind == "power":
        return lambda r: np.prod(r ** float(arg), axis=-1)
    if kind == "poly":
        return lambda r: np.prod((1.0 + r) ** float(arg), axis=-1)
    raise argparse.ArgumentTypeError(f"unknown w0 {text!r}")


def _out_dir(args):
    d = Path(args.out_dir or os.environ.get(ENV_OUTPUT) or ".")
    d.mkdir(parents=True, exist_ok=True)
    return d


def _load(path):
    p = Path(path)
    if not p.exists():
        raise UsageError(f"input file not found: {path}")
    try:
        return HermiteCoeffs.from_json(p)
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _fmt(x):
    return format(float(x), ".17g")


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([v if isinstance(v, str) else _fmt(v) for v in row])


def _emit(summary):
    print(json.dumps(summary, sort_keys=True, default=float))


def _spec(args):
    return PropagatorSpec(getattr(args, "zeta", 0.0), args.rho, args.c, args.r)


# --- verbs ---------------------------------------------------------------------


def cmd_frft(args):
    c = _load(args.input)
    rho = args.rho if len(args.rho) > 1 else args.rho[0]
    out = _out_dir(args) / (args.output or "frft.json")
    if args.route == "spectral":
        res = spectral_frft(c, rho)
        res.to_json(out)
        _emit({"route": "spectral", "output": str(out), "norm": res.norm()})
        return EXIT_OK
    if np.any(np.imag(rho) != 0):
        raise UsageError("kernel route needs real orders")
    grid = uniform_grid(args.nodes, args.half_width, c.dim)
    g = synthesize(c, grid)
    res = kernel_frft(g, np.real(rho))
    res.to_json(out)
    _emit({"route": "kernel", "output": str(out), "l2_norm": res.l2_norm()})
    return EXIT_OK


def cmd_stft(args):
    c = _load(args.input)
    lattice = default_lattice(c.trunc, c.dim, args.points)
    if args.half_width:
        nodes = np.linspace(-args.half_width, args.half_width, len(lattice[0][0]))
        lattice = ((nodes,) * c.dim, (nodes,) * c.dim)
    S = stft_matrix(c, lattice)
    X, XI = S.points()
    d = c.dim
    header = [f"x{j + 1}" for j in range(d)] + [f"xi{j + 1}" for j in range(d)] + ["re", "im", "abs"]
    v = S.values.reshape(-1)
    rows = np.column_stack([X.reshape(-1, d), XI.reshape(-1, d), v.real, v.imag, np.abs(v)])
    out = _out_dir(args) / (args.output or "stft.csv")
    _write_csv(out, header, rows)
    _emit({"output": str(out), "points": int(v.size), "max_abs": float(np.abs(v).max())})
    return EXIT_OK


def cmd_propagate(args):
    c = _load(args.input)
    res = apply_propagator(c, _spec(args))
    out = _out_dir(args) / (args.output or "propagated.json")
    finite = bool(np.all(np.isfinite(res.data)))
    if finite:
        res.to_json(out)
    _emit({"output": str(out) if finite else None, "finite": finite, "norm": res.norm() if finite else None})
    return EXIT_OK if finite else EXIT_CHECK


def cmd_classify(args):
    c = _load(args.input)
    res = classify_growth(c)
    _emit(res.to_dict())
    if args.expect and res.tag != args.expect:
        return EXIT_CHECK
    return EXIT_OK


def cmd_norm(args):
    c = _load(args.input)
    S = stft_matrix(c, default_lattice(c.trunc, c.dim, args.points))
    spec = MixedNormSpec(args.p, args.q, args.space, _weight(args.weight))
    _emit({"space": args.space, "p": args.p, "q": args.q, "norm": mixed_norm(S, spec)})
    return EXIT_OK


def _trajectory_csv(args, slices: TimeSlices, name):
    out = _out_dir(args) / (args.output or name)
    norms = np.linalg.norm(slices.data, axis=1)
    _write_csv(out, ["t", "norm"], zip(slices.grid.nodes, norms))
    return out, norms


def cmd_evolve(args):
    u0 = _load(args.input)
    grid = TimeGrid.uniform(args.T, args.panels, args.order)
    u = evolve_E(u0, grid, args.rho, args.c, args.r)
    out, norms = _trajectory_csv(args, u, "evolve.csv")
    _emit({"output": str(out), "nodes": len(grid), "max_norm": float(norms.max())})
    return EXIT_OK


def cmd_duhamel(args):
    f = _load(args.input)
    grid = TimeGrid.uniform(args.T, args.panels, args.order)
    F = TimeSlices.from_function(grid, lambda s: f, f.dim, f.trunc)
    S = duhamel_S(F, grid, args.rho, args.c, args.r, args.variant)
    out, norms = _trajectory_csv(args, S, f"duhamel_{args.variant.lower()}.csv")
    _emit({"output": str(out), "variant": args.variant.upper(), "max_norm": float(norms.max())})
    return EXIT_OK


def cmd_strichartz(args):
    kw = dict(d=args.d, p=args.p, q=args.q, p0=args.p0, r0=args.r0, T=args.T, rho=args.rho_real,
              c=args.c, r=args.r, operator=args.operator, variant=args.variant, panels=args.panels,
              p1=args.p1, p01=args.p01, p2=args.p2, p02=args.p02)
    try:
        if args.sweep:
            rep = strichartz_sweep(args.theorem, trunc=args.N, seed=args.seed, **kw)
        else:
            data = _load(args.input) if args.input else None
            rep = verify_strichartz(args.theorem, data=data, **kw)
    except InadmissibleExponentsError as exc:
        _emit({"theorem": args.theorem, "admissible": False, "reason": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    summary = {k: rep[k] for k in ("theorem", "lhs", "rhs", "ratio", "admissible")}
    out = _out_dir(args) / (args.output or "strichartz.json")
    out.write_text(json.dumps(summary, sort_keys=True, indent=1))
    _emit(summary)
    return EXIT_OK if np.isfinite(rep["ratio"]) else EXIT_CHECK


def cmd_verify_identity(args):
    idx = multi_indices(args.d, args.N)
    rho = np.resize(np.asarray(args.rho, complex), args.d)
    lhs = eigenvalues(PropagatorSpec(0.0, rho, args.c, 1.0), idx)
    lhs = np.exp(-0.25j * np.pi * lhs)
    rhs = np.exp(-0.25j * np.pi * (rho.sum() + args.c)) * frft_multipliers(idx, rho)
    dev = float(np.max(np.abs(lhs - rhs) / np.abs(rhs)))
    ok = dev <= args.tol
    _emit({"check": "identity", "max_rel_deviation": dev, "tol": args.tol, "pass": ok})
    return EXIT_OK if ok else EXIT_CHECK


def _random_phase_function(rng):
    # sum of a few anisotropic Gaussians on R^2 (one position, one frequency axis)
    k = rng.integers(1, 4)
    cx, cxi = rng.uniform(-2, 2, (2, k))
    sx, sxi = rng.uniform(0.4, 2.0, (2, k))
    amp = rng.uniform(0.5, 1.5, k)

    def f(x, xi):
        x, xi = x[..., 0], xi[..., 0]
        out = np.zeros(np.broadcast(x, xi).shape)
        for j in range(k):
            out = out + amp[j] * np.exp(-((x - cx[j]) / sx[j]) ** 2 - ((xi - cxi[j]) / sxi[j]) ** 2)
        return out

    return f


def minkowski_draws(draws, seed, points=201, half_width=8.0):
    """Random ``(f, p, q <= p, rho)`` draws for the rotated Minkowski inequality."""
    rng = np.random.default_rng(seed)
    nodes = np.linspace(-half_width, half_width, points)
    template = StftMatrix((nodes,), (nodes,), np.zeros((points, points)))
    X, XI = template.points()
    choices = [0.5, 1.0, 1.5, 2.0, 3.0, 4.0, np.inf]
    results = []
    for _ in range(draws):
        f = _random_phase_function(rng)
        p, q = sorted(rng.choice(choices, 2))[::-1]
        rho = float(rng.uniform(0.05, 1.95))
        form = "sin" if rng.random() < 0.5 else "cos"
        if form == "cos" and abs(np.cos(0.5 * np.pi * rho)) < 0.05:
            form = "sin"
        flavor = "M" if rng.random() < 0.5 else "W"
        S = template.with_values(f(X, XI))
        lhs, rhs, ok = verify_minkowski(S, p, q, rho, form=form, flavor=flavor, func=f)
        results.append({"p": float(p), "q": float(q), "rho": rho, "form": form, "flavor": flavor,
                        "lhs": lhs, "rhs": rhs, "pass": ok})
    return results


def cmd_verify_minkowski(args):
    res = minkowski_draws(args.draws, args.seed)
    out = _out_dir(args) / (args.output or "minkowski.csv")
    _write_csv(out, ["p", "q", "rho", "form", "flavor", "lhs", "rhs", "pass"],
               [[r["p"], r["q"], r["rho"], r["form"], r["flavor"], r["lhs"], r["rhs"], str(r["pass"])]
                for r in res])
    ok = all(r["pass"] for r in res)
    _emit({"check": "minkowski", "draws": len(res), "failures": sum(not r["pass"] for r in res),
           "output": str(out), "pass": ok})
    return EXIT_OK if ok else EXIT_CHECK


def fitted_slope(reports, direction, p, q):
    """Log-log slope of ``lhs / source norm`` against ``|sin|`` (or ``|cos|``) of ``pi rho/2``."""
    trig = np.sin if direction in ("M->M", "W->W") else np.cos
    xs, ys = [], []
    for rep in reports:
        rho = np.asarray(rep["rho"])
        xs.append(np.sum(np.log(np.abs(trig(0.5 * np.pi * rho)))) / len(rho))
        ys.append(np.log(rep["lhs"] / (rep["rhs"] / rep["factor"])))
    return float(np.polyfit(xs, ys, 1)[0])


def cmd_verify_frft_estimate(args):
    c = _load(args.input) if args.input else HermiteCoeffs.unit((0,), args.N)
    reps = [verify_frft_mod_estimate(c, rho, args.p, args.q, _weight(args.weight), args.direction)
            for rho in args.sweep]
    slope = fitted_slope(reps, args.direction, args.p, args.q)
    out = _out_dir(args) / (args.output or "frft_estimate.csv")
    _write_csv(out, ["rho", "lhs", "rhs", "ratio", "fitted_slope"],
               [[r["rho"][0], r["lhs"], r["rhs"], r["ratio"], slope] for r in reps])
    summary = {"check": "frft-estimate", "direction": args.direction, "fitted_slope": slope,
               "output": str(out)}
    status = EXIT_OK
    if args.expect_slope is not None:
        summary["expected_slope"] = args.expect_slope
        summary["pass"] = abs(slope - args.expect_slope) <= args.tol
        status = EXIT_OK if summary["pass"] else EXIT_CHECK
    _emit(summary)
    return status


def cmd_verify_isometry(args):
    rng = np.random.default_rng(args.seed)
    idx = multi_indices(args.d, args.N)
    w0 = _w0(args.w0)
    nu = nu_omega_all(w0, args.d, args.N)
    worst = 0.0
    for _ in range(args.draws):
        c = HermiteCoeffs(args.d, args.N, rng.normal(size=len(idx)) + 1j * rng.normal(size=len(idx)))
        t, r = rng.uniform(-5, 5), rng.uniform(0.1, 3.0)
        e = apply_propagator(c, PropagatorSpec(-1j * t, 1.0, 0.0, r))
        a, b = hilbert_mod_norm(e, w0, nu), hilbert_mod_norm(c, w0, nu)
        worst = max(worst, abs(a - b) / b)
    ok = worst <= args.tol
    _emit({"check": "isometry", "max_rel_deviation": worst, "tol": args.tol, "pass": ok})
    return EXIT_OK if ok else EXIT_CHECK


# --- parser --------------------------------------------------------------------


def _common(p):
    p.add_argument("--out-dir", help=f"output directory (default ${ENV_OUTPUT} or cwd)")
    p.add_argument("--output", help="output file name inside the output directory")


def _operator_flags(p, zeta=False):
    if zeta:
        p.add_argument("--zeta", type=_complex, default=0.0)
    p.add_argument("--rho", type=_complex_list, default=[1.0])
    p.add_argument("--c", type=_complex, default=0.0)
    p.add_argument("--r", type=float, default=1.0)


def _time_flags(p):
    p.add_argument("--T", type=float, default=1.0)
    p.add_argument("--panels", type=int, default=8)
    p.add_argument("--order", type=int, default=8)


def build_parser():
    ap = argparse.ArgumentParser(prog="oscitool", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("frft", help="fractional Fourier transform of a coefficient file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--rho", type=_complex_list, required=True)
    p.add_argument("--route", choices=("spectral", "kernel"), default="spectral")
    p.add_argument("--nodes", type=int, default=96)
    p.add_argument("--half-width", type=float, default=8.0)
    _common(p)
    p.set_defaults(func=cmd_frft)

    p = sub.add_parser("stft", help="Gaussian-window STFT on a lattice (CSV)")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--points", type=int)
    p.add_argument("--half-width", type=float)
    _common(p)
    p.set_defaults(func=cmd_stft)

    p = sub.add_parser("propagate", help="apply exp(zeta H^r)")
    p.add_argument("--in", dest="input", required=True)
    _operator_flags(p, zeta=True)
    _common(p)
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser("classify", help="growth class of a coefficient sequence")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--expect", help="exit 1 unless this tag is returned")
    _common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("norm", help="modulation / amalgam quasi-norm")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--space", choices=("M", "W"), default="M")
    p.add_argument("--p", type=_exponent, default=2.0)
    p.add_argument("--q", type=_exponent, default=2.0)
    p.add_argument("--weight", default="constant")
    p.add_argument("--points", type=int)
    _common(p)
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("evolve", help="homogeneous evolution E u0 (CSV t, norm)")
    p.add_argument("--in", dest="input", required=True)
    _operator_flags(p)
    _time_flags(p)
    _common(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("duhamel", help="S1/S2 of a time-constant forcing (CSV t, norm)")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--variant", type=str.upper, choices=("S1", "S2"), default="S1")
    _operator_flags(p)
    _time_flags(p)
    _common(p)
    p.set_defaults(func=cmd_duhamel)

    p = sub.add_parser("strichartz", help="evaluate a Strichartz-type estimate")
    p.add_argument("--theorem", type=str.lower, choices=("mod1", "mod2", "mod3", "mod4"), required=True)
    p.add_argument("--in", dest="input")
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--N", type=int, default=8)
    for name, default in (("p", 2.0), ("q", 2.0), ("p0", 2.0), ("r0", 2.0)):
        p.add_argument(f"--{name}", type=_exponent, default=default)
    for name in ("p1", "p01", "p2", "p02"):
        p.add_argument(f"--{name}", type=_exponent)
    p.add_argument("--operator", type=str.upper, choices=("S1", "S2"), default="S2")
    p.add_argument("--variant", type=int, choices=(1, 2, 3, 4), default=1)
    p.add_argument("--rho", dest="rho_real", type=float, default=1.0)
    p.add_argument("--c", type=float, default=0.0)
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--T", type=float, default=1.0)
    p.add_argument("--panels", type=int, default=8)
    p.add_argument("--sweep", action="store_true", help="max ratio over a fixed family")
    p.add_argument("--seed", type=int, default=0)
    _common(p)
    p.set_defaults(func=cmd_strichartz)

    pv = sub.add_parser("verify", help="numerical checks")
    vsub = pv.add_subparsers(dest="check", required=True)

    p = vsub.add_parser("identity", help="exp(-i pi H/4) against the FrFT multiplier")
    p.add_argument("--rho", type=_complex_list, default=[1.0])
    p.add_argument("--c", type=_complex, default=0.0)
    p.add_argument("--N", type=int, default=16)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--tol", type=float, default=1e-14)
    _common(p)
    p.set_defaults(func=cmd_verify_identity)

    p = vsub.add_parser("minkowski", help="random draws of the rotated Minkowski inequality")
    p.add_argument("--draws", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    _common(p)
    p.set_defaults(func=cmd_verify_minkowski)

    p = vsub.add_parser("frft-estimate", help="FrFT estimate between modulation spaces")
    p.add_argument("--in", dest="input")
    p.add_argument("--N", type=int, default=8)
    p.add_argument("--p", type=_exponent, default=np.inf)
    p.add_argument("--q", type=_exponent, default=1.0)
    p.add_argument("--direction", choices=("M->M", "W->W", "M->W", "W->M"), default="M->M")
    p.add_argument("--weight", default="constant")
    p.add_argument("--sweep", type=_sweep, default=_sweep("rho=0.05:0.5:10"))
    p.add_argument("--expect-slope", type=float)
    p.add_argument("--tol", type=float, default=0.1)
    _common(p)
    p.set_defaults(func=cmd_verify_frft_estimate)

    p = vsub.add_parser("isometry", help="Hilbert modulation norm under exp(itH^r)")
    p.add_argument("--w0", default="one")
    p.add_argument("--N", type=int, default=20)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--draws", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-12)
    _common(p)
    p.set_defaults(func=cmd_verify_isometry)

    p = sub.add_parser("run", help="run an experiment described by a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--check", action="store_true", help="exit 1 if the run's check fails")
    _common(p)
    p.set_defaults(func=cmd_run)
    return ap


# --- config runner -------------------------------------------------------------

CONFIG_SCHEMA = {
    "type": "object",
    "required": ["verb"],
    "additionalProperties": False,
    "properties": {
        "verb": {
            "enum": ["frft", "stft", "propagate", "classify", "norm", "evolve", "duhamel",
                     "strichartz", "verify identity", "verify minkowski",
                     "verify frft-estimate", "verify isometry"],
        },
        "d": {"type": "integer", "minimum": 1, "maximum": 3},
        "N": {"type": "integer", "minimum": 0},
        "input": {"type": "string"},
        "output": {"type": "string"},
        "output_dir": {"type": "string"},
        "seed": {"type": "integer", "minimum": 0},
        "lattice": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"points": {"type": "integer", "minimum": 3},
                           "half_width": {"type": "number", "exclusiveMinimum": 0}},
        },
        "exponents": {
            "type": "object",
            "additionalProperties": False,
            "properties": {k: {"type": ["number", "string"]}
                           for k in ("p", "q", "p0", "r0", "p1", "p01", "p2", "p02")},
        },
        "weight": {"type": "string"},
        "sweep": {
            "type": "object",
            "additionalProperties": False,
            "required": ["rho"],
            "properties": {"rho": {"type": "array", "minItems": 1, "items": {"type": "number"}}},
        },
        "options": {
            "type": "object",
            "additionalProperties": {"type": ["number", "string", "boolean", "array"]},
        },
    },
}


def _config_argv(cfg):
    argv = cfg["verb"].split()
    if "input" in cfg:
        argv += ["--in", cfg["input"]]
    if "output" in cfg:
        argv += ["--output", cfg["output"]]
    if "output_dir" in cfg:
        argv += ["--out-dir", cfg["output_dir"]]
    for key in ("d", "N", "seed"):
        if key in cfg:
            argv += [f"--{key}", str(cfg[key])]
    lat = cfg.get("lattice", {})
    if "points" in lat:
        argv += ["--points", str(lat["points"])]
    if "half_width" in lat:
        argv += ["--half-width", str(lat["half_width"])]
    for k, v in cfg.get("exponents", {}).items():
        argv += [f"--{k}", str(v)]
    if "weight" in cfg:
        argv += ["--weight", cfg["weight"]]
    if "sweep" in cfg:
        argv += ["--sweep", "rho=" + ",".join(repr(float(v)) for v in cfg["sweep"]["rho"])]
    for k, v in cfg.get("options", {}).items():
        flag = "--" + k.replace("_", "-")
        if isinstance(v, bool):
            if v:
                argv.append(flag)
        elif isinstance(v, list):
            argv += [flag, ",".join(str(x) for x in v)]
        else:
            argv += [flag, str(v)]
    return argv


def cmd_run(args):
    import jsonschema

    path = Path(args.config)
    if not path.exists():
        raise UsageError(f"config not found: {path}")
    try:
        cfg = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from None
    errors = sorted(jsonschema.Draft202012Validator(CONFIG_SCHEMA).iter_errors(cfg), key=lambda e: list(e.path))
    if errors:
        msgs = ["/".join(str(x) for x in e.path) or "<root>" for e in errors]
        raise UsageError("; ".join(f"{m}: {e.message}" for m, e in zip(msgs, errors)))
    if "input" in cfg:
        inp = Path(cfg["input"])
        if not inp.is_absolute():
            inp = path.parent / inp
        if not inp.exists():
            raise UsageError(f"input: file not found: {cfg['input']}")
        cfg["input"] = str(inp)
    if "output_dir" not in cfg and args.out_dir:
        cfg["output_dir"] = args.out_dir
    status = main(_config_argv(cfg))
    if status == EXIT_CHECK and not args.check:
        return EXIT_OK
    return status


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, argparse.ArgumentTypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
