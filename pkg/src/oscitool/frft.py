"""Fractional Fourier transforms of multiple, possibly complex, order.

Two independent routes are provided:

* :func:`spectral_frft` multiplies Hermite coefficients by
  ``exp(-i pi/2 * <rho, alpha>)``; this works for any ``rho`` in C^d.
* :func:`kernel_frft` integrates the chirp kernel against grid samples;
  real orders only.

``F_1`` is the unitary Fourier transform with kernel
``(2 pi)^{-d/2} exp(-i <x, xi>)`` and ``F_rho1 F_rho2 = F_{rho1 + rho2}``.
"""
from __future__ import annotations

import numpy as np

from .hermite import GridFunction, HermiteCoeffs

__all__ = [
    "SingularOrderError",
    "frac_order",
    "frft_compose_check",
    "frft_kernel",
    "frft_multipliers",
    "frft_phase_map",
    "kernel_frft",
    "phase_rotation",
    "spectral_frft",
]

SIN_THRESHOLD = 1e-3

_QUARTER_TURNS = np.array([1, -1j, -1, 1j])


class SingularOrderError(ValueError):
    """Kernel route requested at an order where the chirp kernel degenerates."""


def frac_order(rho, dim):
    """Order vector in C^dim; a scalar is replicated on every axis."""
    arr = np.atleast_1d(np.asarray(rho, dtype=complex))
    if arr.size == 1:
        arr = np.full(dim, arr[0])
    if arr.shape != (dim,):
        raise ValueError(f"order has {arr.size} entries, operand has dimension {dim}")
    return arr


def frft_multipliers(indices, rho):
    """``exp(-i pi/2 <rho, alpha>)`` for each row of ``indices``.

    Integer phases ``<rho, alpha>`` are looked up as exact quarter turns, so
    integer orders compose without rounding.
    """
    indices = np.asarray(indices)
    rho = frac_order(rho, indices.shape[1])
    phase = indices @ rho
    # the period is 4 in the real part; reducing first keeps the exp argument small
    out = np.exp(-0.5j * np.pi * (np.mod(phase.real, 4.0) + 1j * phase.imag))
    exact = (phase.imag == 0) & (phase.real == np.round(phase.real))
    out[exact] = _QUARTER_TURNS[np.mod(np.round(phase.real[exact]).astype(np.int64), 4)]
    return out


def spectral_frft(c: HermiteCoeffs, rho) -> HermiteCoeffs:
    """Apply ``F_rho`` on the Hermite side (exact on the truncation simplex)."""
    return c.with_data(c.data * frft_multipliers(c.indices, rho))


def frft_compose_check(rho1, rho2, c: HermiteCoeffs) -> float:
    """Max deviation between ``F_rho1(F_rho2 c)`` and ``F_{rho1+rho2} c``."""
    rho1 = frac_order(rho1, c.dim)
    rho2 = frac_order(rho2, c.dim)
    lhs = spectral_frft(spectral_frft(c, rho2), rho1)
    rhs = spectral_frft(c, rho1 + rho2)
    return float(np.max(np.abs(lhs.data - rhs.data), initial=0.0))


def frft_kernel(rho, xi, x):
    """One-dimensional kernel ``K_rho(xi, x)`` for real ``rho`` outside ``2Z``.

    The square root is the principal branch; with it, ``rho -> 0+`` tends to
    the identity and the kernel route agrees with :func:`spectral_frft`.
    """
    theta = 0.5 * np.pi * float(rho)
    s, co = np.sin(theta), np.cos(theta)
    if abs(s) < SIN_THRESHOLD:
        raise SingularOrderError(
            f"|sin(pi*rho/2)| = {abs(s):.2e} < {SIN_THRESHOLD}; use spectral_frft for rho={rho}"
        )
    pre = np.sqrt((1.0 - 1j * co / s) / (2.0 * np.pi))
    xi = np.asarray(xi, float)
    x = np.asarray(x, float)
    return pre * np.exp(1j * ((x * x + xi * xi) * co - 2.0 * xi * x) / (2.0 * s))


def _trapezoid_weights(nodes):
    if len(nodes) == 1:
        return np.ones(1)
    gaps = np.diff(nodes)
    w = np.zeros_like(nodes)
    w[:-1] += 0.5 * gaps
    w[1:] += 0.5 * gaps
    return w


def _split_order(r):
    """Write a real order (mod 4, in (-2, 2]) as steps with ``0.5 <= |step| <= 1.5``.

    Orders near ``2Z`` carry chirps too fast for the grid; going through
    ``F_{+-1}`` keeps every kernel well resolved.
    """
    r = float(np.mod(r + 2.0, 4.0) - 2.0)
    if r == -2.0:
        r = 2.0
    if 0.5 <= abs(r) <= 1.5:
        return [r]
    sign = 1.0 if r >= 0 else -1.0
    return [r - sign, sign]


def kernel_frft(f: GridFunction, rho, out_nodes=None, out_weights=None) -> GridFunction:
    """Apply ``F_rho`` (real order) by quadrature of the chirp kernel, axis by axis.

    Orders with ``|sin(pi rho/2)| < sin(pi/4)`` are applied in two kernel steps
    through ``F_{+-1}``.

    Parameters
    ----------
    f : GridFunction
        Samples of a function decaying at the grid boundary.
    rho : float or sequence of float
        Order per axis. Even integers are dispatched to the exact identity or
        parity maps, which require the output grid to be the input grid.
    out_nodes : sequence of arrays, optional
        Output points per axis. Defaults to the input nodes.
    out_weights : sequence of arrays, optional
        Weights attached to the output grid. Defaults to the input weights
        when ``out_nodes`` is omitted, trapezoid weights otherwise.
    """
    rho = frac_order(rho, f.dim)
    if np.any(rho.imag != 0):
        raise ValueError("kernel route supports real orders only; use spectral_frft")
    rho = rho.real
    if out_nodes is None:
        out_nodes, out_weights = f.nodes, f.weights
    else:
        out_nodes = tuple(np.asarray(n, float) for n in out_nodes)
        if out_weights is None:
            out_weights = tuple(_trapezoid_weights(n) for n in out_nodes)
    values = f.values
    for axis, r in enumerate(rho):
        x, w, xi = f.nodes[axis], f.weights[axis], out_nodes[axis]
        quarter = np.mod(r, 4.0)
        if quarter in (0.0, 2.0):
            if not (len(xi) == len(x) and np.allclose(xi, x)):
                raise ValueError("even orders need the output grid to equal the input grid")
            if quarter == 2.0:
                if not np.allclose(x, -x[::-1]):
                    raise ValueError("parity map needs a grid symmetric about the origin")
                values = np.flip(values, axis=axis)
            continue
        steps = _split_order(r)
        for k, step in enumerate(steps):
            target = xi if k == len(steps) - 1 else x
            K = frft_kernel(step, target[:, None], x[None, :]) * w[None, :]
            values = np.moveaxis(np.tensordot(values, K, axes=([axis], [1])), -1, axis)
    return GridFunction(out_nodes, out_weights, values)


def phase_rotation(x, xi, rho):
    """Per-axis phase-space rotation by ``theta_j = pi rho_j / 2``.

    Maps ``(x_j, xi_j)`` to ``(cos t x_j + sin t xi_j, -sin t x_j + cos t xi_j)``,
    i.e. ``x + i xi -> exp(-i theta)(x + i xi)`` on each pair. ``x`` and ``xi``
    have shape ``(..., d)``.
    """
    x = np.asarray(x, float)
    xi = np.asarray(xi, float)
    rho = np.asarray(frac_order(rho, x.shape[-1]).real)
    theta = 0.5 * np.pi * rho
    c, s = np.cos(theta), np.sin(theta)
    return c * x + s * xi, -s * x + c * xi


def frft_phase_map(x, xi, rho):
    """Phase-space map carried by ``F_rho`` on STFT moduli.

    ``|V(F_rho f)(x, xi)| = |V f(frft_phase_map(x, xi, rho))|``, a rotation of
    each ``(x_j, xi_j)`` plane by ``+pi rho_j / 2``.
    """
    return phase_rotation(x, xi, -np.asarray(rho, float))
