"""Hermite functions, Gauss-Hermite quadrature and Hermite coefficient sequences.

Functions on R^d are carried by their Hermite coefficients
``c(alpha) = (f, h_alpha)`` truncated to the simplex ``|alpha| <= N``.
Multi-indices are enumerated in graded lexicographic order, which fixes the
layout of :attr:`HermiteCoeffs.data` and the JSON serialization.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np
from scipy.special import roots_hermite

__all__ = [
    "AliasingError",
    "GridFunction",
    "HermiteCoeffs",
    "analyze",
    "gauss_hermite_rule",
    "hermite_grid",
    "hermite_values",
    "multi_indices",
    "synthesize",
    "uniform_grid",
]


class AliasingError(ValueError):
    """The grid cannot resolve the requested truncation order."""


@lru_cache(maxsize=64)
def _multi_indices(dim, trunc):
    out = []
    for order in range(trunc + 1):
        for combo in itertools.product(range(order + 1), repeat=dim):
            if sum(combo) == order:
                out.append(combo)
    arr = np.array(out, dtype=np.int64).reshape(-1, dim)
    arr.setflags(write=False)
    return arr


def multi_indices(dim, trunc):
    """All ``alpha`` in ``N^dim`` with ``|alpha| <= trunc``, graded-lex ordered.

    Returns a read-only integer array of shape ``(M, dim)``.
    """
    if dim < 1:
        raise ValueError(f"dimension must be >= 1, got {dim}")
    if trunc < 0:
        raise ValueError(f"truncation must be >= 0, got {trunc}")
    return _multi_indices(int(dim), int(trunc))


@lru_cache(maxsize=64)
def _index_lookup(dim, trunc):
    return {tuple(a): i for i, a in enumerate(_multi_indices(dim, trunc))}


@dataclass
class HermiteCoeffs:
    """Truncated Hermite coefficient sequence ``alpha -> c(alpha)``.

    ``data[i]`` is the coefficient of ``indices[i]``; entries with
    ``|alpha| > trunc`` do not exist.
    """

    dim: int
    trunc: int
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.dim = int(self.dim)
        self.trunc = int(self.trunc)
        self.data = np.asarray(self.data, dtype=complex).reshape(-1)
        expected = len(multi_indices(self.dim, self.trunc))
        if self.data.shape[0] != expected:
            raise ValueError(
                f"expected {expected} coefficients for dim={self.dim}, "
                f"trunc={self.trunc}, got {self.data.shape[0]}"
            )

    @classmethod
    def zeros(cls, dim, trunc):
        return cls(dim, trunc, np.zeros(len(multi_indices(dim, trunc)), complex))

    @classmethod
    def unit(cls, alpha, trunc, value=1.0):
        """Coefficients of ``value * h_alpha``."""
        alpha = tuple(int(a) for a in np.atleast_1d(alpha))
        out = cls.zeros(len(alpha), trunc)
        out[alpha] = value
        return out

    @classmethod
    def from_function(cls, func, dim, trunc):
        """Coefficients of ``sum_alpha func(alpha) h_alpha``; ``func`` gets the index array."""
        idx = multi_indices(dim, trunc)
        return cls(dim, trunc, np.asarray(func(idx), dtype=complex))

    @property
    def indices(self):
        return multi_indices(self.dim, self.trunc)

    @property
    def orders(self):
        return self.indices.sum(axis=1)

    def position(self, alpha):
        alpha = tuple(int(a) for a in np.atleast_1d(alpha))
        if len(alpha) != self.dim:
            raise ValueError(f"multi-index {alpha} has wrong length for dim={self.dim}")
        try:
            return _index_lookup(self.dim, self.trunc)[alpha]
        except KeyError:
            raise KeyError(f"{alpha} outside truncation |alpha| <= {self.trunc}") from None

    def __getitem__(self, alpha):
        return self.data[self.position(alpha)]

    def __setitem__(self, alpha, value):
        self.data[self.position(alpha)] = value

    def with_data(self, data):
        return HermiteCoeffs(self.dim, self.trunc, data)

    def copy(self):
        return self.with_data(self.data.copy())

    def _check_compatible(self, other):
        if (self.dim, self.trunc) != (other.dim, other.trunc):
            raise ValueError(
                f"incompatible carriers ({self.dim}, {self.trunc}) and ({other.dim}, {other.trunc})"
            )

    def __add__(self, other):
        self._check_compatible(other)
        return self.with_data(self.data + other.data)

    def __sub__(self, other):
        self._check_compatible(other)
        return self.with_data(self.data - other.data)

    def __mul__(self, scalar):
        return self.with_data(self.data * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return self.with_data(-self.data)

    def mass(self):
        """The l^2 mass ``sum |c(alpha)|^2``."""
        return float(np.sum(np.abs(self.data) ** 2))

    def norm(self):
        # scaled so that huge but finite coefficients do not overflow
        scale = float(np.max(np.abs(self.data), initial=0.0))
        if scale == 0.0 or not np.isfinite(scale):
            return scale
        return scale * float(np.sqrt(np.sum(np.abs(self.data / scale) ** 2)))

    def retruncate(self, trunc):
        """Same sequence on a different simplex (zero padded or cut)."""
        out = HermiteCoeffs.zeros(self.dim, trunc)
        lookup = _index_lookup(self.dim, trunc)
        for i, alpha in enumerate(self.indices):
            j = lookup.get(tuple(alpha))
            if j is not None:
                out.data[j] = self.data[i]
        return out

    def box(self):
        """Dense ``(trunc+1,)*dim`` tensor holding the coefficients (zeros off the simplex)."""
        out = np.zeros((self.trunc + 1,) * self.dim, complex)
        out[tuple(self.indices.T)] = self.data
        return out

    def to_dict(self):
        return {
            "dim": self.dim,
            "trunc": self.trunc,
            "entries": [
                {"alpha": [int(a) for a in alpha], "re": float(v.real), "im": float(v.imag)}
                for alpha, v in zip(self.indices, self.data)
            ],
        }

    @classmethod
    def from_dict(cls, doc):
        try:
            out = cls.zeros(int(doc["dim"]), int(doc["trunc"]))
            for entry in doc["entries"]:
                out[entry["alpha"]] = complex(float(entry["re"]), float(entry.get("im", 0.0)))
        except KeyError as exc:
            raise ValueError(f"coefficient record missing field {exc}") from None
        return out

    def to_json(self, path):
        Path(path).write_text(json.dumps(self.to_dict(), indent=1))

    @classmethod
    def from_json(cls, path):
        return cls.from_dict(json.loads(Path(path).read_text()))


def hermite_values(N, points):
    """L^2-normalized Hermite functions ``h_0..h_N`` at ``points``.

    Uses the recurrence on normalized functions,
    ``h_{k+1} = x sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1}``, so no
    factorials appear.

    Parameters
    ----------
    N : int
        Highest order.
    points : array_like
        Real evaluation points, any shape.

    Returns
    -------
    ndarray
        Shape ``(N + 1,) + points.shape``.
    """
    if N < 0:
        raise ValueError(f"order must be >= 0, got {N}")
    x = np.asarray(points, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("points must be finite")
    out = np.empty((N + 1,) + x.shape)
    out[0] = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    if N >= 1:
        out[1] = np.sqrt(2.0) * x * out[0]
    for k in range(1, N):
        out[k + 1] = np.sqrt(2.0 / (k + 1)) * x * out[k] - np.sqrt(k / (k + 1)) * out[k - 1]
    bad = ~np.isfinite(out)
    if bad.any():
        k, *pos = np.argwhere(bad)[0]
        raise FloatingPointError(
            f"Hermite recurrence overflow at order {k}, point {x[tuple(pos)]!r}"
        )
    return out


def gauss_hermite_rule(n):
    """Nodes and weights for ``int f(x) exp(-x^2) dx`` with ``n`` nodes."""
    if n < 1:
        raise ValueError(f"node count must be >= 1, got {n}")
    nodes, weights = roots_hermite(int(n))
    if not (np.all(np.isfinite(nodes)) and np.all(np.diff(nodes) > 0)):
        raise RuntimeError(f"Hermite root finder failed for n={n}")
    return nodes, weights


def _lebesgue_weights(nodes):
    # w_i exp(x_i^2) = 1 / sum_{k<n} h_k(x_i)^2 (Christoffel function); avoids exp overflow
    H = hermite_values(len(nodes) - 1, nodes)
    return 1.0 / np.sum(H * H, axis=0)


def hermite_grid(n, dim=1):
    """Gauss-Hermite tensor grid with weights for Lebesgue measure.

    Exact for ``int p(x) exp(-x^2) dx`` with ``deg p <= 2n - 1`` per axis,
    in particular for products ``h_j h_k`` with ``j + k <= 2n - 1``.
    Returns ``(nodes, weights)`` as tuples of per-axis arrays.
    """
    nodes, _ = gauss_hermite_rule(n)
    weights = _lebesgue_weights(nodes)
    return (nodes,) * dim, (weights,) * dim


def uniform_grid(n, half_width, dim=1):
    """Equispaced trapezoid grid on ``[-half_width, half_width]`` per axis."""
    nodes = np.linspace(-half_width, half_width, int(n))
    weights = np.full(nodes.shape, nodes[1] - nodes[0])
    weights[[0, -1]] *= 0.5
    return (nodes,) * dim, (weights,) * dim


@dataclass
class GridFunction:
    """Complex samples on a tensor-product grid, with per-axis quadrature weights."""

    nodes: tuple
    weights: tuple
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.nodes = tuple(np.asarray(n, dtype=float) for n in self.nodes)
        self.weights = tuple(np.asarray(w, dtype=float) for w in self.weights)
        self.values = np.asarray(self.values, dtype=complex)
        if len(self.nodes) != len(self.weights):
            raise ValueError("nodes and weights must have one array per axis")
        shape = tuple(len(n) for n in self.nodes)
        if self.values.shape != shape:
            raise ValueError(f"values shape {self.values.shape} does not match grid {shape}")
        for n, w in zip(self.nodes, self.weights):
            if n.shape != w.shape:
                raise ValueError("per-axis nodes and weights differ in length")
            if len(n) > 1 and not np.all(np.diff(n) > 0):
                raise ValueError("nodes must be strictly increasing")
            if not np.all(w > 0):
                raise ValueError("quadrature weights must be positive")

    @classmethod
    def sample(cls, func, grid):
        """Evaluate ``func(*mesh)`` on ``grid = (nodes, weights)``."""
        nodes, weights = grid
        mesh = np.meshgrid(*nodes, indexing="ij")
        values = np.broadcast_to(np.asarray(func(*mesh), dtype=complex), mesh[0].shape)
        return cls(nodes, weights, values)

    @property
    def dim(self):
        return len(self.nodes)

    @property
    def grid(self):
        return self.nodes, self.weights

    def integrate(self, values=None):
        v = self.values if values is None else values
        for w in reversed(self.weights):
            v = v @ w
        return v

    def l2_norm(self):
        return float(np.sqrt(self.integrate(np.abs(self.values) ** 2).real))

    def to_dict(self):
        return {
            "dim": self.dim,
            "nodes": [n.tolist() for n in self.nodes],
            "weights": [w.tolist() for w in self.weights],
            "values_re": self.values.real.ravel().tolist(),
            "values_im": self.values.imag.ravel().tolist(),
        }

    @classmethod
    def from_dict(cls, doc):
        try:
            nodes = [np.asarray(n, float) for n in doc["nodes"]]
            shape = tuple(len(n) for n in nodes)
            values = np.asarray(doc["values_re"], float) + 1j * np.asarray(
                doc.get("values_im", np.zeros(int(np.prod(shape)))), float
            )
            return cls(nodes, doc["weights"], values.reshape(shape))
        except KeyError as exc:
            raise ValueError(f"grid record missing field {exc}") from None

    def to_json(self, path):
        Path(path).write_text(json.dumps(self.to_dict()))

    @classmethod
    def from_json(cls, path):
        return cls.from_dict(json.loads(Path(path).read_text()))


def _grid_of(grid):
    if isinstance(grid, GridFunction):
        return grid.nodes, grid.weights
    nodes, weights = grid
    return tuple(np.asarray(n, float) for n in nodes), tuple(np.asarray(w, float) for w in weights)


def analyze(f, N, grid=None, dim=1):
    """Hermite coefficients ``c(alpha) = (f, h_alpha)`` for ``|alpha| <= N``.

    ``f`` is a :class:`GridFunction`, or a callable taking ``dim`` meshgrid
    arrays; callables are sampled on ``grid`` (default: ``2N + 1`` Gauss-Hermite
    nodes per axis).
    """
    if isinstance(f, GridFunction):
        gf = f
    else:
        if grid is None:
            grid = hermite_grid(2 * N + 1, dim)
        gf = GridFunction.sample(f, _grid_of(grid))
    for axis, n in enumerate(gf.nodes):
        if len(n) < N + 1:
            raise AliasingError(
                f"axis {axis} has {len(n)} nodes; resolving order {N} needs at least {N + 1}"
            )
    box = gf.values
    for axis, (n, w) in enumerate(zip(gf.nodes, gf.weights)):
        M = hermite_values(N, n) * w
        box = np.moveaxis(np.tensordot(box, M, axes=([axis], [1])), -1, axis)
    idx = multi_indices(gf.dim, N)
    return HermiteCoeffs(gf.dim, N, box[tuple(idx.T)])


def synthesize(c, grid):
    """Evaluate ``sum c(alpha) h_alpha`` on ``grid`` (GridFunction or ``(nodes, weights)``)."""
    nodes, weights = _grid_of(grid)
    if len(nodes) != c.dim:
        raise ValueError(f"grid has {len(nodes)} axes, coefficients have dim {c.dim}")
    box = c.box()
    for axis, n in enumerate(nodes):
        H = hermite_values(c.trunc, n)
        box = np.moveaxis(np.tensordot(box, H, axes=([axis], [0])), -1, axis)
    return GridFunction(nodes, weights, box)
