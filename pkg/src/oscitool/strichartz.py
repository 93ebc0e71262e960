"""Time-dependent propagators in Hermite coordinates and Strichartz-type checks.

With ``lambda_alpha = (2<alpha, rho> + sum(rho) + c)^r`` the operators act
mode by mode:

* ``(E u0)(t) = exp(-i t lambda) u0``,
* ``(S1 F)(t) = int_0^t exp(-i (t - s) lambda) F(s) ds``,
* ``(S2 F)(t) = int_0^T exp(-i (t - s) lambda) F(s) ds``,
* ``E* F = int_0^T exp(i s lambda) F(s) ds``,

and ``u = E u0 - i S1 F`` solves ``i u' - H^r u = F`` with ``u(0) = u0``.
Time integrals use composite Gauss rules on a panel mesh; the singular
Hardy-Littlewood-Sobolev convolutions use meshes graded toward the kernel
singularities.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import legendre as L
from scipy.special import roots_legendre

from .hermite import HermiteCoeffs, multi_indices
from .modspace import MixedNormSpec, Weight, default_lattice, mixed_norm, stft_matrix
from .oscillator import PropagatorSpec, eigenvalues

__all__ = [
    "CoarseGridWarning",
    "InadmissibleExponentsError",
    "TimeGrid",
    "TimeSlices",
    "adjoint_E",
    "check_admissible",
    "duhamel_residual",
    "duhamel_S",
    "evolve_E",
    "hls_apply",
    "hls_bound",
    "modulation_trajectory",
    "solve",
    "time_norm",
    "verify_strichartz",
]

RICHARDSON_TOL = 0.01


class CoarseGridWarning(RuntimeWarning):
    """Panel rule and its lower-order companion disagree by more than 1%."""


class InadmissibleExponentsError(ValueError):
    """Exponents outside the range where an estimate is asserted."""


# --- time grids --------------------------------------------------------------


def _lobatto(n):
    # n >= 2 nodes on [-1, 1] including the endpoints
    if n == 2:
        return np.array([-1.0, 1.0]), np.array([1.0, 1.0])
    Pn1 = np.zeros(n)
    Pn1[-1] = 1.0
    inner = L.legroots(L.legder(Pn1))
    x = np.concatenate([[-1.0], np.sort(inner.real), [1.0]])
    w = 2.0 / (n * (n - 1) * L.legval(x, Pn1) ** 2)
    return x, w


def _panel_rule(n, kind):
    if kind == "lobatto":
        return _lobatto(n)
    x, w = roots_legendre(n)
    return x, w


def _cumulative_matrix(x, drop=0):
    # Q[i, j] = int_{-1}^{x_i} l_j(s) ds for the Lagrange basis on nodes x;
    # drop > 0 discards the top Legendre modes (a lower-order companion rule)
    n = len(x)
    V = L.legvander(x, n - 1)  # V[i, k] = P_k(x_i)
    Vinv = np.linalg.inv(V)
    if drop:
        Vinv[n - drop :] = 0.0
    A = np.empty((n, n))
    A[:, 0] = x + 1.0
    for k in range(1, n):
        ck = np.zeros(n + 1)
        ck[k + 1] = 1.0 / (2 * k + 1)
        ck[k - 1] = -1.0 / (2 * k + 1)
        A[:, k] = L.legval(x, ck)
    return A @ Vinv


def graded_breakpoints(T, panels, grade=None, ratio=0.25, layers=8):
    """Panel breakpoints on ``[0, T]``.

    ``grade`` is ``None`` (uniform), ``"left"``, ``"right"`` or ``"both"``;
    graded ends get ``layers`` geometric panels shrinking by ``ratio``.
    """
    if grade is None:
        return np.linspace(0.0, T, panels + 1)
    if grade not in ("left", "right", "both"):
        raise ValueError("grade must be None, 'left', 'right' or 'both'")
    if grade == "both":
        half = graded_breakpoints(0.5 * T, max(panels // 2, 1), "left", ratio, layers)
        return np.concatenate([half, T - half[::-1][1:]])
    geo = ratio ** np.arange(layers, 0, -1) * T / max(panels, 1)
    body = np.linspace(T / max(panels, 1), T, max(panels, 1))
    pts = np.concatenate([[0.0], geo, body])
    if grade == "right":
        pts = T - pts[::-1]
    return pts


@dataclass
class TimeGrid:
    """Composite quadrature on ``[0, T]``.

    ``kind="lobatto"`` (closed, default) has ``t_0 = 0`` and ``t_K = T`` as
    nodes; ``kind="legendre"`` (open) avoids the endpoints, which suits
    integrands singular there. Weights are positive and sum to ``T``.
    """

    T: float
    breakpoints: np.ndarray
    order: int = 8
    kind: str = "lobatto"
    nodes: np.ndarray = field(init=False)
    weights: np.ndarray = field(init=False)

    def __post_init__(self):
        self.breakpoints = np.asarray(self.breakpoints, float)
        b = self.breakpoints
        if self.T <= 0 or b[0] != 0.0 or not np.isclose(b[-1], self.T) or np.any(np.diff(b) <= 0):
            raise ValueError("breakpoints must increase strictly from 0 to T")
        if self.kind not in ("lobatto", "legendre"):
            raise ValueError("kind must be 'lobatto' or 'legendre'")
        x, w = _panel_rule(self.order, self.kind)
        nodes, weights, owner = [], [], []
        for p, (a, bb) in enumerate(zip(b[:-1], b[1:])):
            h = 0.5 * (bb - a)
            t = a + h * (x + 1.0)
            ww = h * w
            if self.kind == "lobatto" and p > 0:
                weights[-1] += ww[0]
                t, ww = t[1:], ww[1:]
            nodes.extend(t)
            weights.extend(ww)
            owner.extend([p] * len(t))
        self.nodes = np.array(nodes)
        self.weights = np.array(weights)
        self._owner = np.array(owner)

    @classmethod
    def uniform(cls, T, panels=8, order=8, kind="lobatto"):
        return cls(T, np.linspace(0.0, T, panels + 1), order, kind)

    @classmethod
    def graded(cls, T, panels=8, order=8, kind="legendre", grade="left", ratio=0.25, layers=8):
        return cls(T, graded_breakpoints(T, panels, grade, ratio, layers), order, kind)

    def refine(self):
        """Split every panel in two."""
        b = self.breakpoints
        mid = 0.5 * (b[:-1] + b[1:])
        nb = np.empty(2 * len(b) - 1)
        nb[0::2], nb[1::2] = b, mid
        return TimeGrid(self.T, nb, self.order, self.kind)

    def __len__(self):
        return len(self.nodes)

    def cumulative_matrix(self, drop=0):
        """``C`` with ``(C g)_k ~ int_0^{t_k} g(s) ds`` for samples ``g`` on the nodes.

        Closed grids only: the rule needs each panel's left end as a node.
        ``drop`` removes the highest Legendre modes of each panel interpolant,
        giving the lower-order companion used for the coarse-grid check.
        """
        if self.kind != "lobatto":
            raise ValueError("cumulative integration needs a closed (lobatto) grid")
        x, _ = _panel_rule(self.order, "lobatto")
        Q = _cumulative_matrix(x, drop)
        K = len(self.nodes)
        C = np.zeros((K, K))
        b = self.breakpoints
        m = self.order - 1
        full = np.zeros(K)  # weights of the completed panels so far
        for p in range(len(b) - 1):
            h = 0.5 * (b[p + 1] - b[p])
            cols = np.arange(p * m, p * m + self.order)
            rows = cols[1:] if p > 0 else cols
            qrows = Q[1:] if p > 0 else Q
            C[np.ix_(rows, cols)] += h * qrows
            C[rows] += full
            full = full.copy()
            full[cols] += h * Q[-1]
        return C

    def to_dict(self):
        return {"T": self.T, "breakpoints": self.breakpoints.tolist(), "order": self.order, "kind": self.kind}


@dataclass
class TimeSlices:
    """Per-node payload on a :class:`TimeGrid`.

    ``data`` is either a ``(K, M)`` coefficient array (states, with ``dim`` and
    ``trunc`` set) or a ``(K,)`` array of scalars (a norm trajectory).
    """

    grid: TimeGrid
    data: np.ndarray
    dim: int | None = None
    trunc: int | None = None

    def __post_init__(self):
        self.data = np.asarray(self.data)
        if self.data.shape[0] != len(self.grid):
            raise ValueError(f"{self.data.shape[0]} slices for {len(self.grid)} time nodes")
        if self.data.ndim == 2 and (self.dim is None or self.trunc is None):
            raise ValueError("state slices need dim and trunc")

    @classmethod
    def from_function(cls, grid, func, dim, trunc):
        """Slices ``func(t) -> HermiteCoeffs`` at every node."""
        rows = []
        for t in grid.nodes:
            c = func(t)
            if c.dim != dim or c.trunc != trunc:
                raise ValueError("all slices must share dimension and truncation")
            rows.append(c.data)
        return cls(grid, np.array(rows, complex), dim, trunc)

    @property
    def is_state(self):
        return self.data.ndim == 2

    def __len__(self):
        return self.data.shape[0]

    def slice(self, k) -> HermiteCoeffs:
        return HermiteCoeffs(self.dim, self.trunc, self.data[k])

    def map_norm(self, norm):
        """Scalar trajectory ``t_k -> norm(slice_k)``."""
        return TimeSlices(self.grid, np.array([norm(self.slice(k)) for k in range(len(self))]))


# --- propagators -------------------------------------------------------------


def _lambdas(dim, trunc, rho, c, r):
    return eigenvalues(PropagatorSpec(0.0, rho, c, r), multi_indices(dim, trunc))


def evolve_E(u0: HermiteCoeffs, grid: TimeGrid, rho=1.0, c=0.0, r=1.0) -> TimeSlices:
    """Slices ``exp(-i t_k lambda) u0``."""
    lam = _lambdas(u0.dim, u0.trunc, rho, c, r)
    with np.errstate(over="ignore", invalid="ignore"):
        data = np.exp(-1j * np.outer(grid.nodes, lam)) * u0.data
    return TimeSlices(grid, data, u0.dim, u0.trunc)


def adjoint_E(F: TimeSlices, rho=1.0, c=0.0, r=1.0) -> HermiteCoeffs:
    """``int_0^T exp(i s lambda) F(s) ds`` with the grid weights."""
    lam = _lambdas(F.dim, F.trunc, rho, c, r)
    phase = np.exp(1j * np.outer(F.grid.nodes, lam))
    return HermiteCoeffs(F.dim, F.trunc, F.grid.weights @ (phase * F.data))


def duhamel_S(F: TimeSlices, grid: TimeGrid | None = None, rho=1.0, c=0.0, r=1.0,
              variant="S1", check=True) -> TimeSlices:
    """``S1`` (integral over ``[0, t]``) or ``S2`` (over ``[0, T]``) of ``F``.

    ``grid`` defaults to ``F.grid``. With ``check`` (closed grids) the result
    is recomputed with each panel interpolant cut by two degrees and a
    :class:`CoarseGridWarning` is issued above 1% disagreement.
    """
    grid = grid or F.grid
    if grid is not F.grid and not np.array_equal(grid.nodes, F.grid.nodes):
        raise ValueError("F must be sampled on the requested grid")
    variant = variant.upper()
    if variant not in ("S1", "S2"):
        raise ValueError("variant must be 'S1' or 'S2'")
    lam = _lambdas(F.dim, F.trunc, rho, c, r)
    t = grid.nodes
    G = np.exp(1j * np.outer(t, lam)) * F.data  # exp(i s lambda) F(s)
    back = np.exp(-1j * np.outer(t, lam))
    check = check and grid.kind == "lobatto" and grid.order > 3
    # compare against the integral of |F|, so cancelling integrals are not flagged
    scale = float(np.max(grid.weights @ np.abs(G))) if check else 0.0
    if variant == "S2":
        total = grid.weights @ G
        if check:
            _flag(total, grid.cumulative_matrix(drop=2)[-1] @ G, scale)
        return TimeSlices(grid, back * total, F.dim, F.trunc)
    cum = grid.cumulative_matrix() @ G
    if check:
        _flag(cum, grid.cumulative_matrix(drop=2) @ G, scale)
    return TimeSlices(grid, back * cum, F.dim, F.trunc)


def _flag(fine, coarse, scale):
    if scale == 0:
        return
    gap = np.max(np.abs(fine - coarse)) / scale
    if gap > RICHARDSON_TOL:
        warnings.warn(
            f"time grid too coarse: quadrature rules disagree by {gap:.2%}",
            CoarseGridWarning,
            stacklevel=3,
        )


def solve(u0: HermiteCoeffs, F: TimeSlices | None, grid: TimeGrid, rho=1.0, c=0.0, r=1.0):
    """``u = E u0 - i S1 F``, the solution of ``i u' - H^r u = F``, ``u(0) = u0``."""
    u = evolve_E(u0, grid, rho, c, r)
    if F is None:
        return u
    s1 = duhamel_S(F, grid, rho, c, r, "S1")
    return TimeSlices(grid, u.data - 1j * s1.data, u0.dim, u0.trunc)


def _time_derivative(t, U):
    # second-order three-point derivative on a non-uniform mesh, interior nodes
    h1 = (t[1:-1] - t[:-2])[:, None]
    h2 = (t[2:] - t[1:-1])[:, None]
    return (-h2 / (h1 * (h1 + h2)) * U[:-2] + (h2 - h1) / (h1 * h2) * U[1:-1]
            + h1 / (h2 * (h1 + h2)) * U[2:])


def duhamel_residual(u: TimeSlices, F: TimeSlices | None, rho=1.0, c=0.0, r=1.0) -> float:
    """Max over interior nodes of ``||i D u - lambda u - F||_{l^2}``."""
    lam = _lambdas(u.dim, u.trunc, rho, c, r)
    t = u.grid.nodes
    res = 1j * _time_derivative(t, u.data) - lam * u.data[1:-1]
    if F is not None:
        res -= F.data[1:-1]
    return float(np.max(np.linalg.norm(res, axis=1)))


# --- time norms ---------------------------------------------------------------


def time_norm(traj: TimeSlices, r0, weak=False) -> float:
    """Strong or weak ``L^{r0}([0, T])`` norm of a scalar trajectory.

    Strong: ``(sum_k w_k g_k^{r0})^{1/r0}`` (max for ``r0 = inf``).
    Weak: ``sup_lambda lambda * mu{g >= lambda}^{1/r0}`` with ``lambda``
    running over the sample values and ``mu`` the quadrature measure.
    """
    g = np.asarray(traj.data, float)
    if g.ndim != 1:
        raise ValueError("time_norm needs a scalar trajectory")
    if np.any(g < 0):
        raise ValueError("trajectory must be nonnegative")
    r0 = float(r0)
    if r0 <= 0:
        raise ValueError("r0 must be positive")
    w = traj.grid.weights
    if np.isinf(r0):
        return float(np.max(g))
    if not weak:
        return float((w @ g**r0) ** (1.0 / r0))
    order = np.argsort(-g)
    levels = g[order]
    mu = np.cumsum(w[order])  # mu{g >= levels[i]} (ties resolved below)
    last = np.r_[levels[1:] != levels[:-1], True]
    return float(np.max(levels[last] * mu[last] ** (1.0 / r0)))


# --- Hardy-Littlewood-Sobolev helper -----------------------------------------


def _kernel(phi, q0):
    if phi == "sin":
        return lambda u: np.abs(np.sin(u)) ** (-1.0 / q0)
    if phi == "cos":
        return lambda u: np.abs(np.cos(u)) ** (-1.0 / q0)
    raise ValueError("phi must be 'sin' or 'cos'")


def _singular_points(t, lo, hi, phi):
    # s in (lo, hi) with t - s in pi Z (sin) or pi/2 + pi Z (cos)
    shift = 0.0 if phi == "sin" else 0.5 * np.pi
    kmin = math.ceil((t - hi - shift) / np.pi)
    kmax = math.floor((t - lo - shift) / np.pi)
    return [t - shift - k * np.pi for k in range(kmin, kmax + 1) if lo <= t - shift - k * np.pi <= hi]


def _graded_offsets(length, order, layers, ratio):
    # Gauss-Legendre nodes on [0, length] graded toward 0, as offsets from 0
    x, w = roots_legendre(order)
    edges = np.concatenate([[0.0], length * ratio ** np.arange(layers, -1, -1)])
    h = 0.5 * np.diff(edges)
    off = (edges[:-1, None] + h[:, None] * (x + 1)).ravel()
    return off, (h[:, None] * w).ravel()


def _panel_integral(a, b, left, right, t, kernel, dist_kernel, hf, order, layers, ratio):
    if left and right:
        m = 0.5 * (a + b)
        return (_panel_integral(a, m, True, False, t, kernel, dist_kernel, hf, order, layers, ratio)
                + _panel_integral(m, b, False, True, t, kernel, dist_kernel, hf, order, layers, ratio))
    if left or right:
        off, w = _graded_offsets(b - a, order, layers, ratio)
        s = a + off if left else b - off
        # near a singular point the kernel depends only on the distance to it
        return float(w @ (dist_kernel(off) * hf(s)))
    x, w = roots_legendre(order)
    h = 0.5 * (b - a)
    s = a + h * (x + 1)
    return float((h * w) @ (kernel(t - s) * hf(s)))


def _as_callable(h):
    if callable(h):
        return h
    if isinstance(h, TimeSlices):
        t, v = h.grid.nodes, np.asarray(h.data, float)
        return lambda s: np.interp(s, t, v)
    raise TypeError("h must be a callable or a scalar TimeSlices")


def hls_apply(h, grid: TimeGrid, q0, variant="T1", phi="sin", order=12, layers=24) -> TimeSlices:
    """``(T1 h)(t) = int_0^T phi(t - s) h(s) ds`` or the causal ``T2`` (over ``[0, t]``).

    ``phi(u) = |sin u|^{-1/q0}`` or ``|cos u|^{-1/q0}``. For each output node
    the ``s`` interval is split at the kernel singularities and integrated
    with Gauss-Legendre panels graded geometrically toward them.

    Parameters
    ----------
    h : callable or TimeSlices
        Vectorized function of ``s``, or scalar samples (linearly interpolated).
    grid : TimeGrid
        Output nodes; ``grid.T`` is the horizon.
    """
    if q0 <= 1:
        raise ValueError(f"q0 = {q0} <= 1: the kernel is not locally integrable")
    if variant not in ("T1", "T2"):
        raise ValueError("variant must be 'T1' or 'T2'")
    K = _kernel(phi, q0)
    Kd = lambda u: np.abs(np.sin(u)) ** (-1.0 / q0)  # noqa: E731
    hf = _as_callable(h)
    T = grid.T
    out = np.empty(len(grid))
    for k, t in enumerate(grid.nodes):
        hi = T if variant == "T1" else t
        if hi <= 0:
            out[k] = 0.0
            continue
        sing = _singular_points(t, 0.0, hi, phi)
        cuts = sorted(set([0.0, hi] + sing))
        total = 0.0
        for a, b in zip(cuts[:-1], cuts[1:]):
            left = any(abs(a - s) < 1e-14 for s in sing)
            right = any(abs(b - s) < 1e-14 for s in sing)
            total += _panel_integral(a, b, left, right, t, K, Kd, hf, order, layers, 0.3)
        out[k] = total
    return TimeSlices(grid, out)


def _lp_time(grid, values, p):
    traj = TimeSlices(grid, np.abs(values))
    return time_norm(traj, p)


def default_hls_family(T, seed=0, n_random=20):
    """Fixed test family: constants, monomials, cosines, bumps and random trigonometric sums."""
    rng = np.random.default_rng(seed)
    fam = [lambda s: np.ones_like(s), lambda s: s / T, lambda s: 1 - s / T]
    for k in range(1, 4):
        fam.append(lambda s, k=k: np.cos(k * np.pi * s / T))
    for m in (0.25, 0.5, 0.75):
        fam.append(lambda s, m=m: np.exp(-(((s / T) - m) / 0.15) ** 2))
    for _ in range(n_random):
        a = rng.normal(size=4)
        fam.append(lambda s, a=a: sum(a[j] * np.cos(j * np.pi * s / T) for j in range(4)))
    return fam


def hls_bound(q0, p0, r0, T=1.0, panels=8, variant="T1", phi="sin", family=None, order=8):
    """Largest ratio ``||T h||_{L^{r0}} / ||h||_{L^{p0}}`` over a fixed family.

    A lower bound for the operator norm; the family defaults to
    :func:`default_hls_family`.
    """
    fam = family or default_hls_family(T)
    grid = TimeGrid.uniform(T, panels, order, kind="legendre")
    best = 0.0
    for h in fam:
        num = _lp_time(grid, hls_apply(h, grid, q0, variant, phi).data, r0)
        den = _lp_time(grid, h(grid.nodes), p0)
        if den > 0:
            best = max(best, num / den)
    return best


# --- Strichartz admissibility and verification ---------------------------------


def _inv(p):
    return 0.0 if np.isinf(p) else 1.0 / p


def _conj(p):
    if p == 1:
        return np.inf
    if np.isinf(p):
        return 1.0
    return p / (p - 1.0)


def check_admissible(theorem, d, p=None, q=None, p0=None, r0=None, p1=None, p01=None, p2=None, p02=None):
    """Whether the exponents lie in the asserted range.

    Returns
    -------
    (bool, str)
        Flag and a message naming the violated inequality (empty when
        admissible).
    """
    tol = 1e-12
    theorem = theorem.lower()
    if theorem == "mod1":
        for name, val in (("p", p), ("q", q), ("p0", p0)):
            if val is None or val < 1:
                return False, f"{name} must lie in [1, inf]"
        if r0 is None or r0 <= 0:
            return False, "r0 must lie in (0, inf]"
        gap = d * (_inv(q) - _inv(p))
        if gap < -tol:
            return False, f"violates 0 <= d(1/q - 1/p): got {gap:.6g}"
        if gap >= 1 - tol:
            return False, f"violates d(1/q - 1/p) < 1: got {gap:.6g}"
        bound = 1 + _inv(r0) - _inv(p0)
        strict = q < p and (p0 == 1 or np.isinf(r0))
        if gap > bound + tol or (strict and gap >= bound - tol):
            rel = "<" if strict else "<="
            return False, f"violates d(1/q - 1/p) {rel} 1 + 1/r0 - 1/p0: {gap:.6g} vs {bound:.6g}"
        return True, ""
    if theorem == "mod2":
        if p is None or q is None or r0 is None or min(p, q, r0) <= 0:
            return False, "p, q, r0 must lie in (0, inf]"
        if q > p:
            return False, "violates q <= p"
        gap = d * (_inv(q) - _inv(p))
        if abs(_inv(r0) - gap) > tol:
            return False, f"violates 1/r0 = d(1/q - 1/p): {_inv(r0):.6g} vs {gap:.6g}"
        return True, ""
    if theorem in ("mod3", "mod4"):
        pairs = [(p, p0)] if theorem == "mod3" else [(p1, p01), (p2, p02)]
        for pj, p0j in pairs:
            if pj is None or p0j is None or pj < 1 or p0j < 1:
                return False, "p and p0 must lie in [1, inf]"
            upper = np.inf if d == 1 else 2 * d / (d - 1)
            if not (2 <= pj < upper):
                return False, f"violates 2 <= p < 2d/(d-1): p = {pj}"
            lhs = d * (1 - 2 / pj)
            rhs = 2 * _inv(_conj(p0j))
            if abs(lhs - rhs) > tol:
                return False, f"violates d(1 - 2/p) = 2/p0': {lhs:.6g} vs {rhs:.6g}"
        return True, ""
    raise ValueError(f"unknown theorem {theorem!r}")


# Mod1 source/target spaces: (flavor, swap exponents) for source and target
_MOD1_VARIANTS = {
    1: (("M", False), ("M", True)),
    2: (("M", False), ("W", False)),
    3: (("W", True), ("M", True)),
    4: (("W", True), ("W", False)),
}


class _StftNorm:
    """Mixed norm of coefficient vectors through a precomputed STFT basis."""

    def __init__(self, dim, trunc, lattice=None):
        self.lattice = lattice or default_lattice(trunc, dim)
        idx = multi_indices(dim, trunc)
        basis = [stft_matrix(HermiteCoeffs.unit(a, trunc), self.lattice) for a in idx]
        self.template = basis[0]
        self.B = np.stack([b.values.reshape(-1) for b in basis])

    def __call__(self, data, spec: MixedNormSpec):
        vals = (np.asarray(data) @ self.B).reshape(self.template.values.shape)
        return mixed_norm(self.template.with_values(vals), spec)


def modulation_trajectory(slices: TimeSlices, spec: MixedNormSpec, lattice=None, _norm=None):
    """Scalar trajectory ``t -> ||slice(t)||`` in a modulation/amalgam space."""
    norm = _norm or _StftNorm(slices.dim, slices.trunc, lattice)
    return TimeSlices(slices.grid, np.array([norm(row, spec) for row in slices.data]))


def verify_strichartz(theorem, d=1, p=2.0, q=2.0, p0=2.0, r0=2.0, data=None, T=1.0,
                      rho=1.0, c=0.0, r=1.0, operator="S2", variant=1, panels=8, order=8,
                      weight: Weight | None = None, p1=None, p01=None, p2=None, p02=None,
                      lattice=None, _norm=None):
    """Evaluate one Strichartz-type estimate on concrete data.

    Parameters
    ----------
    theorem : {"mod1", "mod2", "mod3", "mod4"}
        ``mod1``: ``S1``/``S2`` from ``L^{p0}(X)`` to ``L^{r0}(Y)`` with
        ``(X, Y)`` chosen by ``variant`` (1: M^{p,q} -> M^{q,p}, 2: M^{p,q} ->
        W^{p,q}, 3: W^{q,p} -> M^{q,p}, 4: W^{q,p} -> W^{p,q}).
        ``mod2``: ``E`` from ``M^{p,q}`` to weak ``L^{r0}(M^{q,p})``; the strong
        norm is reported too. ``mod3``: ``E`` from ``L^2`` to
        ``L^{p0'}(M^{p',p})``. ``mod4``: ``S2`` from ``L^{p01}(M^{p1,p1'})`` to
        ``L^{p02'}(M^{p2',p2})``.
    data : HermiteCoeffs or callable, optional
        Initial state for ``E`` (default ``h_0``) or forcing ``s -> HermiteCoeffs``
        for ``S`` (default ``h_0`` constant in time).

    Returns
    -------
    dict
        ``lhs``, ``rhs``, ``ratio`` and ``admissible``.

    Raises
    ------
    InadmissibleExponentsError
        With the violated inequality in the message.
    """
    theorem = theorem.lower()
    ok, why = check_admissible(theorem, d, p=p, q=q, p0=p0, r0=r0, p1=p1, p01=p01, p2=p2, p02=p02)
    if not ok:
        raise InadmissibleExponentsError(f"{theorem}: {why}")
    weight = weight or Weight()
    grid = TimeGrid.uniform(T, panels, order)
    trunc = data.trunc if isinstance(data, HermiteCoeffs) else 8
    norm = _norm or _StftNorm(d, trunc, lattice)

    def forcing():
        if data is None:
            return TimeSlices.from_function(grid, lambda s: HermiteCoeffs.unit((0,) * d, trunc), d, trunc)
        if callable(data):
            first = data(0.0)
            return TimeSlices.from_function(grid, data, first.dim, first.trunc)
        return TimeSlices.from_function(grid, lambda s: data, data.dim, data.trunc)

    report = {"theorem": theorem, "admissible": True, "T": T, "panels": panels}
    if theorem == "mod1":
        (sf, ss), (tf, ts) = _MOD1_VARIANTS[int(variant)]
        src = MixedNormSpec(*((q, p) if ss else (p, q)), sf, weight)
        tgt = MixedNormSpec(*((q, p) if ts else (p, q)), tf, weight)
        F = forcing()
        out = duhamel_S(F, grid, rho, c, r, operator)
        lhs = time_norm(modulation_trajectory(out, tgt, _norm=norm), r0)
        rhs = time_norm(modulation_trajectory(F, src, _norm=norm), p0)
    elif theorem == "mod2":
        u0 = data if isinstance(data, HermiteCoeffs) else HermiteCoeffs.unit((0,) * d, trunc)
        u = evolve_E(u0, grid, rho, c, r)
        traj = modulation_trajectory(u, MixedNormSpec(q, p, "M", weight), _norm=norm)
        lhs = time_norm(traj, r0, weak=True)
        report["lhs_strong"] = time_norm(traj, r0)
        rhs = norm(u0.data, MixedNormSpec(p, q, "M", weight))
    elif theorem == "mod3":
        u0 = data if isinstance(data, HermiteCoeffs) else HermiteCoeffs.unit((0,) * d, trunc)
        u = evolve_E(u0, grid, rho, c, r)
        pc = _conj(p)
        lhs = time_norm(modulation_trajectory(u, MixedNormSpec(pc, p, "M"), _norm=norm), _conj(p0))
        rhs = u0.norm()
    else:
        F = forcing()
        out = duhamel_S(F, grid, rho, c, r, "S2")
        lhs = time_norm(modulation_trajectory(out, MixedNormSpec(_conj(p2), p2, "M"), _norm=norm), _conj(p02))
        rhs = time_norm(modulation_trajectory(F, MixedNormSpec(p1, _conj(p1), "M"), _norm=norm), p01)
    report.update(lhs=float(lhs), rhs=float(rhs), ratio=float(lhs / rhs) if rhs > 0 else np.inf)
    return report


def strichartz_sweep(theorem, d=1, trunc=8, seed=0, n_random=20, **kwargs):
    """Max ratio over ``h_0 .. h_trunc`` (d = 1 modes) and random coefficient vectors.

    An empirical lower bound for the operator norm of the estimate.
    """
    rng = np.random.default_rng(seed)
    idx = multi_indices(d, trunc)
    family = [HermiteCoeffs.unit(a, trunc) for a in idx if d == 1 or a.sum() <= 2]
    for _ in range(n_random):
        v = rng.normal(size=len(idx)) + 1j * rng.normal(size=len(idx))
        family.append(HermiteCoeffs(d, trunc, v / np.linalg.norm(v)))
    norm = _StftNorm(d, trunc, kwargs.pop("lattice", None))
    best = None
    for f in family:
        rep = verify_strichartz(theorem, d=d, data=f, _norm=norm, **kwargs)
        if best is None or rep["ratio"] > best["ratio"]:
            best = rep
    best = dict(best)
    best["family_size"] = len(family)
    return best
