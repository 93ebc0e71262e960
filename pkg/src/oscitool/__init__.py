"""Hermite-coordinate tools for fractional Fourier transforms, oscillator
propagators, modulation-space norms and Strichartz-type estimates."""
__version__ = "0.1.0"
