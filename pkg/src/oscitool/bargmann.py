"""Bargmann transform, Fock-space power series and the Gaussian-window STFT.

The Bargmann transform sends ``h_alpha`` to ``e_alpha(z) = z^alpha / sqrt(alpha!)``,
so on Hermite coefficients it is a relabelling. The STFT with window
``phi(x) = pi^{-d/4} exp(-|x|^2 / 2)`` is read off the Bargmann image through

    V_phi f(x, xi) = (2 pi)^{-d/2} exp(-|z|^2/4) exp(-i <x, xi>/2) (V_d f)(conj(z)/sqrt 2),

with ``z = x + i xi``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hermite import GridFunction, HermiteCoeffs, analyze

__all__ = [
    "FockSeries",
    "PhasePoint",
    "bargmann_from_coeffs",
    "bargmann_kernel",
    "stft_direct",
    "stft_gaussian",
]

TAIL_TOL = 1e-14


@dataclass(frozen=True)
class PhasePoint:
    x: np.ndarray
    xi: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", np.atleast_1d(np.asarray(self.x, float)))
        object.__setattr__(self, "xi", np.atleast_1d(np.asarray(self.xi, float)))
        if self.x.shape != self.xi.shape:
            raise ValueError("x and xi must have the same shape")
        if not (np.all(np.isfinite(self.x)) and np.all(np.isfinite(self.xi))):
            raise ValueError("phase point must be finite")

    @property
    def z(self):
        return self.x + 1j * self.xi


class FockSeries:
    """``F(z) = sum c(alpha) z^alpha / sqrt(alpha!)`` on the coefficient carrier."""

    def __init__(self, coeffs: HermiteCoeffs):
        self.coeffs = coeffs

    @property
    def dim(self):
        return self.coeffs.dim

    def norm(self):
        """A^2 norm, equal to the l^2 norm of the coefficients."""
        return self.coeffs.norm()

    def _monomials(self, z):
        # e_k(z_j) per axis via e_k = z/sqrt(k) e_{k-1}; shape (d, N+1, npts)
        N = self.coeffs.trunc
        E = np.empty((z.shape[1], N + 1, z.shape[0]), complex)
        E[:, 0] = 1.0
        for k in range(1, N + 1):
            E[:, k] = E[:, k - 1] * z.T / np.sqrt(k)
        return E

    def __call__(self, z):
        """Evaluate at ``z`` of shape ``(d,)`` or ``(npts, d)``.

        Summation runs order by order and stops once the remaining coefficient
        mass times ``exp(|z|^2/2)`` is below ``1e-14``.
        """
        z = np.asarray(z, complex)
        single = z.ndim == 1
        z = np.atleast_2d(z)
        if z.shape[1] != self.dim:
            raise ValueError(f"points have dimension {z.shape[1]}, series has {self.dim}")
        c = self.coeffs
        E = self._monomials(z)
        orders = c.orders
        mass_by_order = np.bincount(orders, weights=np.abs(c.data) ** 2, minlength=c.trunc + 1)
        tail = np.cumsum(mass_by_order[::-1])[::-1]  # tail[n] = mass of orders >= n
        growth = np.exp(0.5 * np.max(np.sum(np.abs(z) ** 2, axis=1)))
        total = np.zeros(z.shape[0], complex)
        for n in range(c.trunc + 1):
            sel = np.nonzero(orders == n)[0]
            terms = np.ones((len(sel), z.shape[0]), complex)
            for j in range(self.dim):
                terms *= E[j, c.indices[sel, j]]
            total += c.data[sel] @ terms
            if n < c.trunc and np.sqrt(tail[n + 1]) * growth < TAIL_TOL:
                break
        return total[0] if single else total


def bargmann_from_coeffs(c: HermiteCoeffs) -> FockSeries:
    """Bargmann image of ``sum c(alpha) h_alpha``; coefficients carry over unchanged."""
    return FockSeries(c)


def bargmann_kernel(f: GridFunction, z):
    """Bargmann transform by quadrature of the kernel integral.

    ``(V_d f)(z) = pi^{-d/4} int exp(-(<z,z> + |y|^2)/2 + sqrt2 <z, y>) f(y) dy``.
    """
    z = np.atleast_1d(np.asarray(z, complex))
    if z.shape != (f.dim,):
        raise ValueError(f"z must have shape ({f.dim},)")
    values = f.values
    for axis in reversed(range(f.dim)):
        y, w, zj = f.nodes[axis], f.weights[axis], z[axis]
        expo = -0.5 * (zj * zj + y * y) + np.sqrt(2.0) * zj * y
        if np.max(expo.real) > 700:
            raise OverflowError(f"Bargmann kernel overflows for Re z = {zj.real:.3g} on this grid")
        kern = np.pi ** -0.25 * np.exp(expo) * w
        values = values @ kern
    return complex(values)


def _points(x, xi):
    x = np.asarray(x, float)
    xi = np.asarray(xi, float)
    x, xi = np.broadcast_arrays(x, xi)
    return x, xi


def stft_gaussian(f, x, xi):
    """``V_phi f(x, xi)`` with the normalized Gaussian window.

    Parameters
    ----------
    f : HermiteCoeffs or GridFunction
        Grid samples are first expanded in Hermite functions up to the grid's
        resolvable order.
    x, xi : array_like
        Phase-space points, shape ``(..., d)`` (or scalars when ``d = 1``).
    """
    if isinstance(f, GridFunction):
        f = analyze(f, min(len(n) for n in f.nodes) - 1)
    d = f.dim
    x, xi = _points(x, xi)
    if d == 1 and (x.ndim == 0 or x.shape[-1] != 1):
        x, xi = x[..., None], xi[..., None]
    shape = x.shape[:-1]
    z = (x + 1j * xi).reshape(-1, d)
    F = FockSeries(f)(np.conj(z) / np.sqrt(2.0))
    xr = x.reshape(-1, d)
    xir = xi.reshape(-1, d)
    pref = (2 * np.pi) ** (-d / 2) * np.exp(
        -0.25 * np.sum(np.abs(z) ** 2, axis=1) - 0.5j * np.sum(xr * xir, axis=1)
    )
    out = pref * np.atleast_1d(F)
    return out.reshape(shape) if shape else complex(out[0])


def stft_direct(f: GridFunction, x, xi):
    """Direct quadrature of ``(2 pi)^{-d/2} int f(y) phi(y - x) exp(-i <y, xi>) dy``.

    Independent of the Bargmann route; used as a cross-check.
    """
    x = np.atleast_1d(np.asarray(x, float))
    xi = np.atleast_1d(np.asarray(xi, float))
    values = f.values
    for axis in reversed(range(f.dim)):
        y, w = f.nodes[axis], f.weights[axis]
        win = np.pi ** -0.25 * np.exp(-0.5 * (y - x[axis]) ** 2)
        values = values @ (win * np.exp(-1j * y * xi[axis]) * w)
    return complex(values) * (2 * np.pi) ** (-f.dim / 2)
