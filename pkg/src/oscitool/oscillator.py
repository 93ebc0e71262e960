"""Powers and propagators of the anisotropic harmonic oscillator.

``H_{x,rho,c} = sum_j rho_j (x_j^2 - d^2/dx_j^2) + c`` acts on ``h_alpha`` by
``2<alpha, rho> + sum(rho) + c``. Powers ``H^r`` and propagators
``exp(zeta H^r)`` are therefore coefficient multipliers; complex powers use
the principal branch.

The module also holds the growth classifier for Hermite coefficient
sequences (Pilipovic / Schwartz / tempered scales) and the continuity
decision table for propagators on those spaces.
"""
from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import curve_fit
from scipy.special import gammaln

from .frft import frac_order
from .hermite import HermiteCoeffs, multi_indices

__all__ = [
    "Continuity",
    "EmptyClassificationError",
    "PilipovicClass",
    "PropagatorSpec",
    "SingularEigenvalueError",
    "apply_power",
    "apply_propagator",
    "classify_continuity",
    "classify_growth",
    "eigenvalue",
    "eigenvalues",
    "exceeds_polynomial_bounds",
    "witness_sequence",
]


class SingularEigenvalueError(ZeroDivisionError):
    """Negative power of a zero eigenvalue."""


class EmptyClassificationError(ValueError):
    """Growth classification of an all-zero sequence."""


@dataclass
class PropagatorSpec:
    """Parameters of ``exp(zeta H^r_{x,rho,c})``."""

    zeta: complex = 0.0
    rho: object = 1.0
    c: complex = 0.0
    r: float = 1.0

    def __post_init__(self):
        self.zeta = complex(self.zeta)
        self.c = complex(self.c)
        self.r = float(self.r)
        self.rho = np.atleast_1d(np.asarray(self.rho, dtype=complex))

    def rho_for(self, dim):
        return frac_order(self.rho, dim)

    def sum_rho(self, dim):
        return complex(np.sum(self.rho_for(dim)))

    def base(self, indices):
        """``2<alpha, rho> + sum(rho) + c`` for each row of ``indices``."""
        indices = np.asarray(indices)
        rho = self.rho_for(indices.shape[1])
        return 2.0 * (indices @ rho) + rho.sum() + self.c

    def conditions(self, dim, trunc=200):
        """Which of the two admissibility conditions hold.

        ``nonzero_spectrum``: no eigenvalue base vanishes for ``|alpha| <= trunc``
        (the infinite exclusion set is only checked on that simplex).
        ``nonnegative_power``: ``r >= 0``.
        """
        base = self.base(multi_indices(dim, trunc))
        return {
            "nonzero_spectrum": bool(np.all(base != 0)),
            "nonnegative_power": self.r >= 0,
        }


def _power(base, r):
    base = np.asarray(base, complex)
    if r == 1:
        return base.copy()
    if r == 0:
        return np.ones_like(base)
    zero = base == 0
    if r < 0 and np.any(zero):
        raise SingularEigenvalueError(f"eigenvalue base vanishes with negative power r={r}")
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.power(base, r)
    out[zero] = 0.0
    return out


def eigenvalues(spec: PropagatorSpec, indices):
    """``(2<alpha, rho> + sum(rho) + c)^r`` for each row of ``indices``."""
    return _power(spec.base(indices), spec.r)


def eigenvalue(spec: PropagatorSpec, alpha) -> complex:
    alpha = np.atleast_2d(np.asarray(alpha, dtype=np.int64))
    return complex(eigenvalues(spec, alpha)[0])


def apply_power(c: HermiteCoeffs, spec: PropagatorSpec) -> HermiteCoeffs:
    """``H^r_{x,rho,c}`` on coefficients; ``spec.zeta`` is ignored."""
    return c.with_data(c.data * eigenvalues(spec, c.indices))


def propagator_multipliers(spec: PropagatorSpec, indices):
    lam = eigenvalues(spec, indices)
    with np.errstate(over="ignore", invalid="ignore"):
        return np.exp(spec.zeta * lam)


def apply_propagator(c: HermiteCoeffs, spec: PropagatorSpec) -> HermiteCoeffs:
    """``exp(zeta H^r_{x,rho,c})`` on coefficients.

    Overflowing multipliers produce non-finite coefficients and a
    ``RuntimeWarning``; that is the expected outcome in ill-posed regimes.
    """
    mult = propagator_multipliers(spec, c.indices)
    with np.errstate(over="ignore", invalid="ignore"):
        data = c.data * mult
    bad = ~np.isfinite(data) & (c.data != 0)
    if bad.any():
        warnings.warn(
            f"{int(bad.sum())} propagated coefficients overflowed", RuntimeWarning, stacklevel=2
        )
    return c.with_data(data)


def witness_sequence(kind, dim, trunc, s=None) -> HermiteCoeffs:
    """Coefficient sequences separating the function spaces.

    ``"schwartz-log2"``: ``exp(-(log(1 + |alpha|))^2)``, Schwartz but in no
    ``H_{0,s}``. ``"beurling"``: ``exp(-(1 + |alpha|)^{1/(2s)})``.
    """
    if trunc < 1:
        raise ValueError("witness sequences need trunc >= 1")
    n = multi_indices(dim, trunc).sum(axis=1).astype(float)
    if kind == "schwartz-log2":
        data = np.exp(-np.log1p(n) ** 2)
    elif kind == "beurling":
        if s is None or s <= 0:
            raise ValueError("beurling witness needs s > 0")
        data = np.exp(-((1.0 + n) ** (1.0 / (2.0 * s))))
    else:
        raise ValueError(f"unknown witness kind {kind!r}")
    return HermiteCoeffs(dim, trunc, data)


# --- growth classification -------------------------------------------------

RESIDUAL_THRESHOLD = 0.05


@dataclass
class PilipovicClass:
    """Result of :func:`classify_growth`.

    ``tag`` is one of ``"H_s"``, ``"H0_s"``, ``"Flat_sigma"``, ``"Schwartz"``,
    ``"Tempered"``, ``"Beyond"``. For ``"H0_s"`` the parameter is the boundary
    order ``s``: a sequence ``exp(-r n^{1/(2s)})`` lies in ``H_s`` and in every
    ``H_{0,s'}`` with ``s' > s``. For ``"Tempered"`` it is the polynomial
    exponent, for ``"Flat_sigma"`` the order ``sigma``.
    """

    tag: str
    parameter: float | None
    residual: float
    law: str
    accepted: bool

    def to_dict(self):
        return {
            "tag": self.tag,
            "parameter": self.parameter,
            "residual": self.residual,
            "law": self.law,
            "accepted": self.accepted,
        }


def _order_profile(c: HermiteCoeffs):
    mags = np.abs(c.data)
    prof = np.zeros(c.trunc + 1)
    np.maximum.at(prof, c.orders, mags)
    return prof


def _fit(model, n, y, p0):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            popt, _ = curve_fit(model, n, y, p0=p0, maxfev=20000)
        except (RuntimeError, ValueError):
            return None, np.inf
    res = np.sqrt(np.mean((model(n, *popt) - y) ** 2))
    return popt, float(res) if np.isfinite(res) else np.inf


def _linear_fit(columns, y):
    A = np.column_stack(columns)
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    return coef, float(np.sqrt(np.mean((A @ coef - y) ** 2)))


def classify_growth(c: HermiteCoeffs) -> PilipovicClass:
    """Fit the order profile ``max_{|alpha|=n} |c(alpha)|`` against growth laws.

    The profile ``y(n) = log max|c|`` is fitted on ``n in [N/2, N]`` with

    * ``a + k log<n>`` (polynomial: tempered),
    * ``a - k (log(1+n))^g`` (log-power; ``g > 1`` with decay is Schwartz),
    * ``a -/+ r (1+n)^b`` (stretched exponential: ``H0_s`` with ``s = 1/(2b)``
      when decaying, beyond tempered when growing),
    * ``a -/+ log(n!)/(2 sigma) + n log R`` (factorial: ``Flat_sigma``).

    The law with the smallest RMS residual wins; ``accepted`` records whether
    it is below 0.05.
    """
    prof = _order_profile(c)
    if not np.any(prof > 0):
        raise EmptyClassificationError("cannot classify an all-zero sequence")
    N = c.trunc
    n = np.arange(N // 2, N + 1, dtype=float)
    vals = prof[N // 2 :]
    keep = vals > 0
    if np.sum(keep) < 4:
        raise EmptyClassificationError("fewer than four non-zero orders in the fit window")
    n, vals = n[keep], vals[keep]
    if not np.all(np.isfinite(vals)):
        return PilipovicClass("Beyond", None, 0.0, "overflow", True)
    y = np.log(vals)
    logj = 0.5 * np.log1p(n * n)
    l1 = np.log1p(n)
    one = np.ones_like(n)

    fits = []
    coef, res = _linear_fit([one, logj], y)
    fits.append(("polynomial", res, 2, coef))
    coef, res = _linear_fit([one, gammaln(n + 1), n], y)
    fits.append(("factorial", res, 3, coef))

    slope = (y[-1] - y[0]) / max(n[-1] - n[0], 1.0)

    def stretched(nn, a, lr, b):
        return a + np.sign(slope) * np.exp(lr) * (1 + nn) ** b

    popt, res = _fit(stretched, n, y, [y[0], np.log(abs(slope) + 1e-3), 1.0])
    if popt is not None:
        fits.append(("stretched", res, 3, popt))

    def logpower(nn, a, k, g):
        return a - k * np.log1p(nn) ** g

    popt, res = _fit(logpower, n, y, [y[0], 1.0, 2.0])
    if popt is not None:
        fits.append(("logpower", res, 3, popt))

    # fewer parameters win near-ties
    best = min(fits, key=lambda f: (f[1] + 1e-9 * f[2]))
    law, res, _, p = best
    accepted = res < RESIDUAL_THRESHOLD
    if law == "polynomial":
        k = float(p[1])
        return PilipovicClass("Tempered", k, res, law, accepted)
    if law == "factorial":
        inv2sigma = -float(p[1])
        if abs(inv2sigma) < 1e-6:
            # no factorial part left: geometric sequence R^n
            logR = float(p[2])
            if logR < 0:
                return PilipovicClass("H0_s", 0.5, res, "stretched", accepted)
            if logR > 0:
                return PilipovicClass("Beyond", None, res, "stretched", accepted)
            return PilipovicClass("Tempered", 0.0, res, "polynomial", accepted)
        if inv2sigma > 0:
            return PilipovicClass("Flat_sigma", 1.0 / (2 * inv2sigma), res, law, accepted)
        return PilipovicClass("Beyond", None, res, law, accepted)
    if law == "stretched":
        b = float(p[2])
        if slope < 0 and b > 0:
            return PilipovicClass("H0_s", 1.0 / (2 * b), res, law, accepted)
        if slope > 0 and b > 0:
            return PilipovicClass("Beyond", None, res, law, accepted)
        return PilipovicClass("Tempered", float(np.polyfit(logj, y, 1)[0]), res, law, accepted)
    # logpower
    k, g = float(p[1]), float(p[2])
    if k > 0 and g > 1:
        return PilipovicClass("Schwartz", g, res, law, accepted)
    if k < 0 and g > 1:
        return PilipovicClass("Beyond", None, res, law, accepted)
    return PilipovicClass("Tempered", float(np.polyfit(logj, y, 1)[0]), res, law, accepted)


def exceeds_polynomial_bounds(c: HermiteCoeffs, max_power=10):
    """Monotone log-ratio test against ``|c(alpha)| <= C <alpha>^N``, ``N <= max_power``.

    For each ``N`` the ratio ``log max_{|alpha|=n}|c| - N log<n>`` must be
    strictly increasing over the window ``n in [trunc/2, trunc]`` and end above
    its starting value; then no constant ``C`` works. Returns a dict
    ``N -> bool``.
    """
    prof = _order_profile(c)
    n = np.arange(c.trunc // 2, c.trunc + 1, dtype=float)
    with np.errstate(divide="ignore"):
        y = np.log(prof[c.trunc // 2 :])
    out = {}
    for N in range(max_power + 1):
        g = y - N * 0.5 * np.log1p(n * n)
        out[N] = bool(np.all(np.diff(g) > 0) and g[-1] > g[0])
    return out


# --- continuity decision table ---------------------------------------------


class Continuity(str, enum.Enum):
    HOMEOMORPHISM = "homeomorphism"
    CONTINUOUS = "continuous"
    DISCONTINUOUS = "discontinuous"
    NOT_COVERED = "not covered"


SPACES = ("Schwartz", "Tempered", "H_s", "H0_s", "H_s'", "H0_s'")


def classify_continuity(spec: PropagatorSpec, space, s=None, dim=None, quantifier="every"):
    """Continuity of ``exp(zeta H^r_{x,rho,c})`` on a function space.

    Parameters
    ----------
    spec : PropagatorSpec
    space : str
        One of ``"Schwartz"``, ``"Tempered"``, ``"H_s"``, ``"H0_s"``,
        ``"H_s'"``, ``"H0_s'"``.
    s : float, optional
        Order of the Pilipovic space.
    dim : int, optional
        Dimension; defaults to the length of ``spec.rho``.
    quantifier : {"every", "some"}
        Reading of the positivity hypothesis ``Re(zeta rho_j^r) > 0`` in the
        discontinuity statement.

    Returns
    -------
    (Continuity, str)
        Decision and the rule that produced it. Cases outside the proven
        statements return ``Continuity.NOT_COVERED``.
    """
    if space not in SPACES:
        raise ValueError(f"unknown space {space!r}; expected one of {SPACES}")
    pilipovic = space in ("H_s", "H0_s", "H_s'", "H0_s'")
    if pilipovic and (s is None or s <= 0):
        raise ValueError("Pilipovic spaces need an order s > 0")
    if quantifier not in ("every", "some"):
        raise ValueError("quantifier must be 'every' or 'some'")
    dim = dim or len(spec.rho)
    rho = spec.rho_for(dim)
    r = spec.r
    w = spec.zeta * np.power(rho, r)
    re = np.round(w.real, 14)

    if np.all(re == 0):
        return Continuity.HOMEOMORPHISM, "zeta rho_j^r imaginary for every j: homeomorphic on all spaces"

    if r > 0 and pilipovic:
        crit = 1.0 / (2.0 * r)
        beurling = space.startswith("H0_s")
        if (beurling and s <= crit) or (not beurling and s < crit):
            rel = "<=" if beurling else "<"
            return Continuity.HOMEOMORPHISM, f"order s={s} {rel} 1/(2r)={crit}: homeomorphism"

    positive = re > 0
    hit = positive.all() if quantifier == "every" else positive.any()
    if r > 0 and hit:
        if space in ("Schwartz", "Tempered"):
            why = "Re(zeta rho_j^r) > 0: discontinuous from Schwartz to tempered distributions"
            if space == "Tempered":
                why += " (hence not continuous on tempered distributions, which contain Schwartz)"
            return Continuity.DISCONTINUOUS, why
        crit = 1.0 / (2.0 * r)
        beurling = space.startswith("H0_s")
        if (beurling and s > crit) or (not beurling and s >= crit):
            rel = ">" if beurling else ">="
            return Continuity.DISCONTINUOUS, f"order s={s} {rel} 1/(2r)={crit} with growing multipliers"

    return Continuity.NOT_COVERED, "parameters outside the proven continuity/discontinuity statements"
