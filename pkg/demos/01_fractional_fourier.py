"""Fractional Fourier transforms two ways, and what they do to phase space.

Run with ``python demos/01_fractional_fourier.py``.
"""
import numpy as np

from oscitool.bargmann import stft_gaussian
from oscitool.frft import frft_compose_check, frft_phase_map, kernel_frft, spectral_frft
from oscitool.hermite import HermiteCoeffs, synthesize, uniform_grid

# %% A small superposition of Hermite modes
rng = np.random.default_rng(0)
c = HermiteCoeffs(1, 6, rng.normal(size=7) + 1j * rng.normal(size=7))
grid = uniform_grid(96, 8.0)
f = synthesize(c, grid)
print("l2 norm on the grid:", f.l2_norm(), "coefficient norm:", c.norm())

# %% The spectral route multiplies coefficients; the kernel route integrates a chirp
for rho in (0.1, 0.25, 0.5, 1.0, 1.5, 1.9):
    err = np.max(np.abs(kernel_frft(f, rho).values - synthesize(spectral_frft(c, rho), grid).values))
    print(f"rho={rho:4}: kernel vs spectral max error {err:.1e}")

# %% Orders add, and four quarter turns are the identity
print("F_1 F_3 vs F_4:", frft_compose_check(1, 3, c))
print("F_0.3 F_-0.3 vs F_0:", frft_compose_check(0.3, -0.3, c))

# %% |V(F_rho f)| is |Vf| read at rotated phase-space points
x = np.linspace(-2, 2, 5)
X, XI = np.meshgrid(x, x, indexing="ij")
for rho in (0.3, 1.0):
    lhs = np.abs(stft_gaussian(spectral_frft(c, rho), X, XI))
    Y, ETA = frft_phase_map(X, XI, rho)
    rhs = np.abs(stft_gaussian(c, Y, ETA))
    print(f"rho={rho}: max modulus mismatch {np.max(np.abs(lhs - rhs)):.1e}")
