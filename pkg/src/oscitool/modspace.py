"""Weighted mixed norms of the Gaussian STFT on a phase-space lattice.

Modulation (``M``) and Wiener amalgam (``W``) quasi-norms are Riemann sums
of ``|V_phi f| * omega`` over a symmetric lattice. The exponent ``p`` always
belongs to the ``x`` variables and ``q`` to the ``xi`` variables; the flavor
only decides which variable is integrated first.

Also here: the phase-space rotation ``T_rho``, the rotated Minkowski
inequality, the fractional Fourier estimates between these spaces, and the
discrete weights ``nu_omega`` of the Hermite-side Hilbert norms.
"""
from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.interpolate import RegularGridInterpolator
from scipy.special import roots_genlaguerre

from .bargmann import stft_gaussian
from .frft import frac_order, frft_phase_map, phase_rotation, spectral_frft
from .hermite import HermiteCoeffs, multi_indices

__all__ = [
    "DivergentWeightError",
    "InadmissibleOrderError",
    "MixedNormSpec",
    "StftMatrix",
    "Weight",
    "default_lattice",
    "hilbert_mod_norm",
    "mixed_norm",
    "nu_omega",
    "nu_omega_all",
    "rotate_samples",
    "rotate_weight",
    "stft_matrix",
    "stft_rotation_check",
    "verify_frft_mod_estimate",
    "verify_minkowski",
]

BOUNDARY_MASS_TOL = 1e-6


class DivergentWeightError(ValueError):
    """The integral defining ``nu_omega`` diverges."""


class InadmissibleOrderError(ValueError):
    """Order excluded by the chosen estimate (sin factor at 2Z, cos factor at 2Z+1)."""


# --- weights ---------------------------------------------------------------


@dataclass
class Weight:
    """Phase-space weight ``omega(x, xi)``.

    Parameters
    ----------
    kind : {"constant", "polynomial", "rotational", "custom"}
    r : float
        Exponent for ``polynomial``: ``<(x, xi)>^r = (1 + |x|^2 + |xi|^2)^{r/2}``.
    w0 : callable, optional
        For ``rotational``: ``omega(x, xi) = w0(x_j^2 + xi_j^2)``; receives an
        array of shape ``(..., d)``.
    func : callable, optional
        For ``custom``: ``func(x, xi)`` on arrays of shape ``(..., d)``.
    scale : float
        Constant factor (the value of a constant weight).
    """

    kind: str = "constant"
    r: float = 0.0
    w0: Callable | None = None
    func: Callable | None = None
    scale: float = 1.0

    def __post_init__(self):
        if self.kind not in ("constant", "polynomial", "rotational", "custom"):
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if self.kind == "rotational" and self.w0 is None:
            raise ValueError("rotational weight needs w0")
        if self.kind == "custom" and self.func is None:
            raise ValueError("custom weight needs func")

    @classmethod
    def constant(cls, value=1.0):
        return cls("constant", scale=value)

    @classmethod
    def polynomial(cls, r):
        return cls("polynomial", r=r)

    @classmethod
    def rotational(cls, w0):
        return cls("rotational", w0=w0)

    def __call__(self, x, xi):
        x = np.asarray(x, float)
        xi = np.asarray(xi, float)
        if self.kind == "constant":
            return np.full(x.shape[:-1], self.scale)
        if self.kind == "polynomial":
            return self.scale * (1.0 + np.sum(x * x + xi * xi, axis=-1)) ** (0.5 * self.r)
        if self.kind == "rotational":
            return self.scale * np.asarray(self.w0(x * x + xi * xi), float)
        return self.scale * np.asarray(self.func(x, xi), float)

    def moderate_witness(self, x, xi, shift_x, shift_xi, rate):
        """Check ``omega(X + Y) <= omega(X) exp(rate |Y|)`` on the given samples."""
        lhs = self(np.asarray(x) + shift_x, np.asarray(xi) + shift_xi)
        norm_y = np.sqrt(np.sum(np.square(shift_x) + np.square(shift_xi), axis=-1))
        return bool(np.all(lhs <= self(x, xi) * np.exp(rate * norm_y) * (1 + 1e-12)))


def rotate_weight(w: Weight, rho) -> Weight:
    """``omega_rho(X) = omega(P_rho X)``, with ``P_rho`` the phase map of ``F_rho``.

    Constant, polynomial and rotational weights are fixed points and come
    back unchanged.
    """
    if w.kind in ("constant", "polynomial", "rotational"):
        return w
    rho = np.asarray(rho, float)

    def rotated(x, xi):
        return w(*frft_phase_map(x, xi, rho))

    return Weight("custom", func=rotated)


# --- lattice samples -------------------------------------------------------


@dataclass
class StftMatrix:
    """Samples of a phase-space function on a tensor lattice.

    ``values`` has shape ``(nx_1, ..., nx_d, nxi_1, ..., nxi_d)``; all node
    vectors are uniform and symmetric about the origin.
    """

    x_nodes: tuple
    xi_nodes: tuple
    values: np.ndarray
    window: str = "gaussian"
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.x_nodes = tuple(np.asarray(n, float) for n in self.x_nodes)
        self.xi_nodes = tuple(np.asarray(n, float) for n in self.xi_nodes)
        self.values = np.asarray(self.values)
        if len(self.x_nodes) != len(self.xi_nodes):
            raise ValueError("x and xi lattices must have the same dimension")
        shape = tuple(len(n) for n in self.x_nodes + self.xi_nodes)
        if self.values.shape != shape:
            raise ValueError(f"values have shape {self.values.shape}, lattice needs {shape}")
        for n in self.x_nodes + self.xi_nodes:
            if len(n) > 1 and not np.allclose(n, -n[::-1], atol=1e-12 * max(1.0, abs(n[-1]))):
                raise ValueError("lattice must be symmetric about the origin")

    @property
    def dim(self):
        return len(self.x_nodes)

    @property
    def dx(self):
        return tuple(float(n[1] - n[0]) if len(n) > 1 else 1.0 for n in self.x_nodes)

    @property
    def dxi(self):
        return tuple(float(n[1] - n[0]) if len(n) > 1 else 1.0 for n in self.xi_nodes)

    def points(self):
        """Lattice points as two arrays of shape ``values.shape + (d,)``."""
        mesh = np.meshgrid(*self.x_nodes, *self.xi_nodes, indexing="ij")
        d = self.dim
        return np.stack(mesh[:d], axis=-1), np.stack(mesh[d:], axis=-1)

    def with_values(self, values, **meta):
        return StftMatrix(self.x_nodes, self.xi_nodes, values, self.window, {**self.meta, **meta})

    def abs(self):
        return self.with_values(np.abs(self.values))


def default_lattice(trunc, dim=1, points=None):
    """Symmetric lattice ``[-L, L]`` per axis with ``L = sqrt(2N) + 4``.

    129 points per axis for ``d = 1``; fewer in higher dimension to keep the
    ``2d``-dimensional lattice tractable.
    """
    if points is None:
        points = {1: 129, 2: 25}.get(dim, 11)
    L = math.sqrt(2.0 * trunc) + 4.0
    nodes = np.linspace(-L, L, points)
    return (nodes,) * dim, (nodes,) * dim


def stft_matrix(f: HermiteCoeffs, lattice=None, chunk=65536) -> StftMatrix:
    """Sample ``V_phi f`` on a lattice (default: :func:`default_lattice`)."""
    if lattice is None:
        lattice = default_lattice(f.trunc, f.dim)
    x_nodes, xi_nodes = lattice
    S = StftMatrix(x_nodes, xi_nodes, np.zeros(tuple(len(n) for n in (*x_nodes, *xi_nodes)), complex))
    X, XI = S.points()
    flat_x = X.reshape(-1, f.dim)
    flat_xi = XI.reshape(-1, f.dim)
    out = np.empty(len(flat_x), complex)
    for start in range(0, len(flat_x), chunk):
        sl = slice(start, start + chunk)
        out[sl] = stft_gaussian(f, flat_x[sl], flat_xi[sl])
    S.values = out.reshape(S.values.shape)
    return S


# --- mixed norms -----------------------------------------------------------


@dataclass
class MixedNormSpec:
    """``p`` on ``x``, ``q`` on ``xi``; flavor ``M`` integrates ``x`` first, ``W`` ``xi`` first."""

    p: float = 2.0
    q: float = 2.0
    flavor: str = "M"
    weight: Weight = field(default_factory=Weight)

    def __post_init__(self):
        self.p, self.q = float(self.p), float(self.q)
        if not (self.p > 0 and self.q > 0):
            raise ValueError("exponents must be positive or inf")
        if self.flavor not in ("M", "W"):
            raise ValueError("flavor must be 'M' or 'W'")


def _lp_reduce(a, p, axes, cell):
    if np.isinf(p):
        return np.max(a, axis=axes)
    return (np.sum(a**p, axis=axes) * cell) ** (1.0 / p)


def mixed_norm(S: StftMatrix, spec: MixedNormSpec) -> float:
    """Discrete ``L^{p,q}`` (flavor M) or ``L^{p,q}_*`` (flavor W) norm of ``|S| * omega``."""
    if np.any(np.isnan(S.values)):
        raise ValueError("STFT samples contain NaN")
    d = S.dim
    X, XI = S.points()
    w = spec.weight(X, XI)
    if not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise ValueError("weight must be positive and finite on the lattice")
    F = np.abs(S.values) * w
    x_axes = tuple(range(d))
    cell_x = float(np.prod(S.dx))
    cell_xi = float(np.prod(S.dxi))
    if spec.flavor == "M":
        inner = _lp_reduce(F, spec.p, x_axes, cell_x)  # remaining axes: xi
        return float(_lp_reduce(inner, spec.q, tuple(range(d)), cell_xi))
    inner = _lp_reduce(F, spec.q, tuple(range(d, 2 * d)), cell_xi)
    return float(_lp_reduce(inner, spec.p, x_axes, cell_x))


# --- rotations ---------------------------------------------------------------


def _boundary_mass(S: StftMatrix):
    # share of |S|^2 carried by points outside the inscribed disc in some plane
    X, XI = S.points()
    L = min(min(abs(n[0]) for n in S.x_nodes), min(abs(n[0]) for n in S.xi_nodes))
    outside = np.any(X * X + XI * XI > L * L, axis=-1)
    mass = np.abs(S.values) ** 2
    total = mass.sum()
    return float(mass[outside].sum() / total) if total > 0 else 0.0


def rotate_samples(S: StftMatrix, rho, func=None) -> StftMatrix:
    """``(T_rho F)(x, xi) = F(A_rho(x, xi))`` on the lattice of ``S``.

    ``A_rho`` is :func:`oscitool.frft.phase_rotation`. Values are resampled
    by multilinear interpolation (zero outside the lattice) unless an exact
    callable ``func(x, xi)`` is supplied. A ``RuntimeWarning`` reports the
    share of mass sitting where a rotation can push it off the lattice.
    """
    rho = float(rho)
    X, XI = S.points()
    if func is not None:
        return S.with_values(np.asarray(func(*phase_rotation(X, XI, rho))), rho=rho)
    if np.mod(rho, 4.0) == 0.0:
        return S.with_values(S.values.copy(), rho=rho)
    est = _boundary_mass(S)
    if est > BOUNDARY_MASS_TOL:
        warnings.warn(
            f"rotation may carry up to {est:.2e} of the sample mass off the lattice",
            RuntimeWarning,
            stacklevel=2,
        )
    Y, ETA = phase_rotation(X, XI, rho)
    pts = np.concatenate([Y, ETA], axis=-1).reshape(-1, 2 * S.dim)
    # rounding in the rotation must not push lattice points just off the edge
    lo = np.array([n[0] for n in S.x_nodes + S.xi_nodes])
    hi = np.array([n[-1] for n in S.x_nodes + S.xi_nodes])
    slack = 1e-9 * np.maximum(np.abs(lo), np.abs(hi))
    inside = (pts >= lo - slack) & (pts <= hi + slack)
    pts = np.where(inside, np.clip(pts, lo, hi), pts)
    interp = RegularGridInterpolator(
        S.x_nodes + S.xi_nodes, S.values, method="linear", bounds_error=False, fill_value=0.0
    )
    return S.with_values(interp(pts).reshape(S.values.shape), rho=rho)


def _power_factor(value, p, q, d):
    expo = d * ((0.0 if np.isinf(p) else 1.0 / p) - (0.0 if np.isinf(q) else 1.0 / q))
    return abs(value) ** expo, expo


def verify_minkowski(S: StftMatrix, p, q, rho, form="sin", flavor="M", func=None, slack=0.02):
    """Both sides of the rotated Minkowski inequality on the lattice.

    ``form="sin"``: ``||T_rho F||_{L^{q,p}} <= |sin(pi rho/2)|^{d(1/p-1/q)} ||F||_{L^{p,q}}``;
    ``form="cos"``: ``||T_rho F||_{L^{p,q}_*} <= |cos(pi rho/2)|^{d(1/p-1/q)} ||F||_{L^{p,q}}``.
    ``flavor="W"`` selects the starred companions (``L^{q,p}_* -> L^{p,q}_*``
    and ``L^{q,p}_* -> L^{q,p}``).

    Returns
    -------
    (lhs, rhs, passed)
        ``passed`` is ``lhs <= rhs * (1 + slack)``.
    """
    if q > p:
        raise ValueError("the inequality needs q <= p")
    theta = 0.5 * np.pi * float(rho)
    trig = np.sin(theta) if form == "sin" else np.cos(theta)
    if abs(trig) < 1e-12:
        raise InadmissibleOrderError(f"{form} factor vanishes at rho={rho}")
    factor, _ = _power_factor(trig, p, q, S.dim)
    T = rotate_samples(S, rho, func=func)
    if form == "sin" and flavor == "M":
        lhs_spec, rhs_spec = MixedNormSpec(q, p, "M"), MixedNormSpec(p, q, "M")
    elif form == "sin":
        lhs_spec, rhs_spec = MixedNormSpec(p, q, "W"), MixedNormSpec(q, p, "W")
    elif flavor == "M":
        lhs_spec, rhs_spec = MixedNormSpec(p, q, "W"), MixedNormSpec(p, q, "M")
    else:
        lhs_spec, rhs_spec = MixedNormSpec(q, p, "M"), MixedNormSpec(q, p, "W")
    lhs = mixed_norm(T, lhs_spec)
    rhs = factor * mixed_norm(S, rhs_spec)
    return lhs, rhs, bool(lhs <= rhs * (1.0 + slack))


def stft_rotation_check(c: HermiteCoeffs, rho, check_points=11, check_half_width=4.0,
                        fine_points=401, fine_half_width=8.0):
    """Max deviation of ``|V(F_rho f)|`` from ``|Vf|`` read off the rotated lattice.

    ``|V(F_rho f)(X)|`` is evaluated exactly at a ``check_points``-square
    lattice; ``|Vf|`` is sampled on a fine lattice and linearly interpolated
    at the phase-map images of those points, as a lattice pipeline would.
    ``d = 1`` only.
    """
    if c.dim != 1:
        raise ValueError("the rotation check is implemented for d = 1")
    rho = float(rho)
    fine = np.linspace(-fine_half_width, fine_half_width, fine_points)
    S = stft_matrix(c, ((fine,), (fine,)))
    chk = np.linspace(-check_half_width, check_half_width, check_points)
    X, XI = np.meshgrid(chk, chk, indexing="ij")
    lhs = np.abs(stft_gaussian(spectral_frft(c, rho), X[..., None], XI[..., None]))
    Y, ETA = frft_phase_map(X, XI, rho)
    interp = RegularGridInterpolator((fine, fine), np.abs(S.values), method="linear",
                                     bounds_error=False, fill_value=0.0)
    rhs = interp(np.stack([Y, ETA], axis=-1).reshape(-1, 2)).reshape(X.shape)
    return float(np.max(np.abs(lhs - rhs)))


# (target flavor, target swaps exponents, source flavor, source swaps, trig)
_DIRECTIONS = {
    "M->M": ("M", True, "M", False, "sin"),
    "W->W": ("W", False, "W", True, "sin"),
    "M->W": ("W", False, "M", False, "cos"),
    "W->M": ("M", True, "W", True, "cos"),
}


def verify_frft_mod_estimate(c: HermiteCoeffs, rho, p, q, weight: Weight | None = None,
                             direction="M->M", lattice=None):
    """Compare ``F_rho f`` in the target space with the source norm of ``f``.

    ``M->M``: ``||F_rho f||_{M^{q,p}(omega_rho)}`` against
    ``prod_j |sin(pi rho_j/2)|^{1/p-1/q} ||f||_{M^{p,q}(omega)}``;
    ``W->W`` is its amalgam companion, ``M->W`` and ``W->M`` use cosines.
    ``rho`` may be a scalar or one real order per axis.

    Returns
    -------
    dict
        ``lhs``, ``rhs`` and ``ratio = lhs / rhs``. The estimates hold up to a
        constant, so the ratio is reported, not judged.
    """
    if direction not in _DIRECTIONS:
        raise ValueError(f"direction must be one of {sorted(_DIRECTIONS)}")
    if q > p:
        raise ValueError("the estimates need q <= p")
    weight = weight or Weight()
    rho_v = frac_order(rho, c.dim)
    if np.any(rho_v.imag != 0):
        raise InadmissibleOrderError("estimates are stated for real orders")
    rho_v = rho_v.real
    t_flavor, t_swap, s_flavor, s_swap, trig = _DIRECTIONS[direction]
    theta = 0.5 * np.pi * rho_v
    vals = np.sin(theta) if trig == "sin" else np.cos(theta)
    if np.any(np.abs(vals) < 1e-12):
        excluded = "2Z" if trig == "sin" else "2Z+1"
        raise InadmissibleOrderError(f"{direction} excludes orders in {excluded}; got rho={rho}")
    expo = (0.0 if np.isinf(p) else 1.0 / p) - (0.0 if np.isinf(q) else 1.0 / q)
    factor = float(np.prod(np.abs(vals) ** expo))

    lattice = lattice or default_lattice(c.trunc, c.dim)
    S_src = stft_matrix(c, lattice)
    S_tgt = stft_matrix(spectral_frft(c, rho_v), lattice)
    w_rho = Weight("custom", func=lambda x, xi: weight(*frft_phase_map(x, xi, rho_v)))
    if weight.kind in ("constant", "polynomial", "rotational"):
        w_rho = weight
    tp, tq = (q, p) if t_swap else (p, q)
    sp, sq = (q, p) if s_swap else (p, q)
    lhs = mixed_norm(S_tgt, MixedNormSpec(tp, tq, t_flavor, w_rho))
    rhs = factor * mixed_norm(S_src, MixedNormSpec(sp, sq, s_flavor, weight))
    return {"rho": rho_v.tolist(), "lhs": lhs, "rhs": rhs, "ratio": lhs / rhs, "factor": factor}


# --- Hilbert modulation weights -------------------------------------------

LAGUERRE_NODES = 64


@functools.lru_cache(maxsize=512)
def _laguerre(n, a):
    x, w = roots_genlaguerre(n, a)
    return x, w * math.exp(-math.lgamma(a + 1))


def _exp_rate(w0, dim, axis, r1=200.0, r2=400.0):
    # growth rate k of log(w0^2) along one axis, so w0^2 ~ exp(k r)
    pts = np.ones((2, dim))
    pts[:, axis] = (r1, r2)
    with np.errstate(over="ignore", divide="ignore"):
        v = np.asarray(w0(pts), float) ** 2
    if not np.all(np.isfinite(v)):
        return np.inf
    if np.any(v <= 0):
        return -np.inf
    return float((np.log(v[1]) - np.log(v[0])) / (r2 - r1))


def nu_omega(w0, alpha, nodes=LAGUERRE_NODES):
    """``nu(alpha) = (alpha!^{-1} int_{R_+^d} r^alpha w0(r)^2 exp(-sum r) dr)^{1/2}``.

    Tensor Gauss-Laguerre quadrature with parameter ``alpha_j`` on each axis.
    An exponential factor ``w0^2 ~ exp(k r_j)`` with ``k > 0.05`` is absorbed
    by rescaling the rule; ``k >= 1`` means divergence.

    Parameters
    ----------
    w0 : callable
        Positive function receiving an array of shape ``(n, d)``.
    alpha : sequence of int
    """
    alpha = np.atleast_1d(np.asarray(alpha, dtype=np.int64))
    d = len(alpha)
    grids, weights = [], []
    for j, a in enumerate(alpha):
        k = _exp_rate(w0, d, j)
        if k >= 1.0 - 1e-9:
            raise DivergentWeightError(
                f"w0(r)^2 grows like exp({k:.3g} r) along axis {j}; the integral diverges"
            )
        x, w = _laguerre(nodes, float(a))
        if k > 0.05:
            # r = u / (1 - k): e^{-r} = e^{-u} e^{-k r}, folded back into the integrand
            s = 1.0 / (1.0 - k)
            r = x * s
            w = w * s ** (a + 1) * np.exp(-k * r)
            x = r
        grids.append(x)
        weights.append(w)
    mesh = np.stack(np.meshgrid(*grids, indexing="ij"), axis=-1).reshape(-1, d)
    W = functools.reduce(np.multiply.outer, weights).reshape(-1)
    val = np.asarray(w0(mesh), float) ** 2
    total = float(W @ val)
    if not np.isfinite(total) or total < 0:
        raise DivergentWeightError("nu_omega quadrature did not produce a finite value")
    return math.sqrt(total)


def nu_omega_all(w0, dim, trunc):
    """``nu_omega`` on the whole truncation simplex, in coefficient order."""
    return np.array([nu_omega(w0, a) for a in multi_indices(dim, trunc)])


def hilbert_mod_norm(c: HermiteCoeffs, w0, nu=None) -> float:
    """``(sum |c(alpha) nu(alpha)|^2)^{1/2}``; pass precomputed ``nu`` to reuse weights."""
    if nu is None:
        nu = nu_omega_all(w0, c.dim, c.trunc)
    return float(np.sqrt(np.sum(np.abs(c.data * nu) ** 2)))
