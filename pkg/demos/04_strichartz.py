"""Time evolution, Duhamel integrals and Strichartz-type ratios.

Run with ``python demos/04_strichartz.py``.
"""
import numpy as np

from oscitool.hermite import HermiteCoeffs
from oscitool.strichartz import (
    TimeGrid,
    TimeSlices,
    check_admissible,
    duhamel_residual,
    evolve_E,
    hls_bound,
    solve,
    strichartz_sweep,
    verify_strichartz,
)

# %% Evolution is a phase per mode; u(pi) = -u(0) for the isotropic oscillator
u0 = HermiteCoeffs(1, 6, np.arange(7.0))
u = evolve_E(u0, TimeGrid.uniform(np.pi, 4, 6))
print("u(pi) + u0 =", np.max(np.abs(u.data[-1] + u0.data)))

# %% The forced problem: residual of i u' - H u = F shrinks like dt^2
f = HermiteCoeffs(1, 6, np.array([0, 1, 0, 0.3, 0, 0, 0]))
for panels in (8, 16, 32):
    grid = TimeGrid.uniform(1.0, panels, 3)
    F = TimeSlices.from_function(grid, lambda s: f * np.cos(2 * s), 1, 6)
    print(f"{panels:3d} panels: residual {duhamel_residual(solve(u0, F, grid), F):.3e}")

# %% The singular convolution bound behind the inhomogeneous estimates
for panels in (4, 8, 16):
    print(f"HLS (2,2,2) bound with {panels} panels: {hls_bound(2, 2, 2, panels=panels):.5f}")

# %% Ratios for admissible exponents, and a rejection
print(verify_strichartz("mod2", p=4, q=2, r0=4))
print(verify_strichartz("mod3", p=4, p0=4 / 3))
print(check_admissible("mod1", 1, p=np.inf, q=1, p0=2, r0=2))
print("sweep lower bound:", strichartz_sweep("mod1", trunc=6, n_random=5)["ratio"])
