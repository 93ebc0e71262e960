"""Oscillator propagators on coefficient sequences, and when they blow up.

Run with ``python demos/02_propagators_and_growth.py``.
"""
import numpy as np

from oscitool.frft import spectral_frft
from oscitool.hermite import HermiteCoeffs
from oscitool.oscillator import (
    PropagatorSpec,
    apply_propagator,
    classify_continuity,
    classify_growth,
    exceeds_polynomial_bounds,
    witness_sequence,
)

# %% exp(-i pi H/4) is a fractional Fourier transform up to a constant phase
rho, shift = 0.37 + 0.05j, 1.2
c = HermiteCoeffs(2, 10, np.ones(66, complex))
lhs = apply_propagator(c, PropagatorSpec(-0.25j * np.pi, rho, shift, 1.0))
rhs = spectral_frft(c, rho) * np.exp(-0.25j * np.pi * (2 * rho + shift))
print("max relative deviation:", np.max(np.abs(lhs.data - rhs.data) / np.abs(rhs.data)))

# %% A Schwartz sequence that is in no Pilipovic space
w = witness_sequence("schwartz-log2", 1, 200)
print("witness:", classify_growth(w).to_dict())

# %% Imaginary time keeps it Schwartz; real time sends it past every polynomial bound
print("zeta = 0.7i:", classify_growth(apply_propagator(w, PropagatorSpec(zeta=0.7j))).tag)
with np.errstate(over="ignore"):
    grown = apply_propagator(w, PropagatorSpec(zeta=1.0))
print("zeta = 1:", classify_growth(grown).tag)
print("violates <alpha>^N for N <= 10:", all(exceeds_polynomial_bounds(grown).values()))

# %% The continuity table
for space, s in (("Schwartz", None), ("H0_s", 0.5), ("H_s", 0.5), ("H0_s", 2.0)):
    dec, why = classify_continuity(PropagatorSpec(zeta=1.0), space, s=s)
    print(f"{space:8} s={s}: {dec.value:15} ({why})")
