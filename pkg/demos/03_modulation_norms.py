"""Mixed STFT norms, rotated Minkowski inequalities and FrFT estimates.

Run with ``python demos/03_modulation_norms.py``.
"""
import numpy as np

from oscitool.cli import fitted_slope, minkowski_draws
from oscitool.hermite import HermiteCoeffs, analyze
from oscitool.modspace import (
    MixedNormSpec,
    Weight,
    default_lattice,
    hilbert_mod_norm,
    mixed_norm,
    nu_omega,
    stft_matrix,
    verify_frft_mod_estimate,
)

# %% Norms of the ground state
h0 = HermiteCoeffs.unit((0,), 4)
S = stft_matrix(h0, default_lattice(4, 1, 161))
print("M^{2,2}:", mixed_norm(S, MixedNormSpec(2, 2)), "(Moyal: 1)")
print("M^{inf,inf}:", mixed_norm(S, MixedNormSpec(np.inf, np.inf)), "(peak (2 pi)^{-1/2})")
print("M^{1,2} with <.>^2 weight:", mixed_norm(S, MixedNormSpec(1, 2, weight=Weight.polynomial(2))))

# %% The rotated Minkowski inequality on random phase-space functions
draws = minkowski_draws(40, seed=1)
print("Minkowski draws passing:", sum(d["pass"] for d in draws), "of", len(draws))

# %% h0 is FrFT-invariant, so its M^{1,inf} norm ignores rho ...
sweep = np.linspace(0.05, 0.5, 10)
reps = [verify_frft_mod_estimate(h0, r, np.inf, 1) for r in sweep]
print("h0 slope:", fitted_slope(reps, "M->M", np.inf, 1))

# %% ... while a wide Gaussian shows the |sin|-power growth
wide = analyze(lambda x: np.exp(-x * x / 18.0), 160)
lat = default_lattice(160, 1, 301)
reps = [verify_frft_mod_estimate(wide, r, np.inf, 1, lattice=lat) for r in sweep]
print("wide Gaussian slope:", fitted_slope(reps, "M->M", np.inf, 1), "(bound: -1)")

# %% Hermite-side weights nu(alpha) for w0(r) = sqrt(r): exactly sqrt(alpha + 1)
print([round(nu_omega(lambda r: np.sqrt(r[:, 0]), (a,)), 12) for a in range(5)])
print("weighted l2 norm of h_3:", hilbert_mod_norm(HermiteCoeffs.unit((3,), 5), lambda r: np.sqrt(r[:, 0])))
