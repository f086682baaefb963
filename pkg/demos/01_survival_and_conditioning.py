"""Empirical survival functions and why the inversion is hard.

Generates exponential waiting times, builds the empirical survival
function on an integer-second grid, and prints the dynamic-range
diagnostic of the discretized exponential kernel that makes the
spectrum inversion ill-conditioned.
"""

import numpy as np

import spectrakit as sk

# 50k exponential durations with a tick-data-like mean of 8.85 s
rate = 1 / 8.85
series = sk.gen_mixture(sk.MixtureSpec(weights=[1.0], rates=[rate]),
                        n=50000, seed=1)
print(f"n = {series.n}, mean = {series.mean:.3f} s, max = {series.max:.1f} s")

taus = sk.default_tau_grid(series)
curve = sk.empirical_survival(series, taus)
print(f"Psi(1) = {curve.psi[0]:.4f}   (ideal e^-rate = {np.exp(-rate):.4f})")

at_max = sk.empirical_survival(series, [series.max]).psi[0]
print(f"Psi at the largest sample = 1/n = {at_max:.2e}")
print(f"dynamic range of Psi over the data support: {curve.psi[0] / at_max:.0f}")

# the kernel's own dynamic range exp(h*(n^2-1)) dwarfs that of the data
K = sk.assemble_kernel(h=0.0015, n=196)
print(f"\nkernel 196x196, h=0.0015:")
print(f"  largest entry  = {K.entries.max():.6f}")
print(f"  smallest entry = {K.entries.min():.3e}")
print(f"  conditioning ratio = {sk.conditioning_ratio(K):.3e}")
