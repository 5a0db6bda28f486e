"""Physical constants (SI, 2019 redefinition)."""

C_LIGHT = 299_792_458.0
"""Speed of light in vacuum, m/s (exact)."""

HBAR = 1.054_571_817e-34
"""Reduced Planck constant, J s (exact Planck constant / 2 pi, truncated)."""

EPSILON_0 = 8.854_187_8128e-12
"""Vacuum permittivity, F/m (CODATA 2018)."""

MU_0 = 1.0 / (EPSILON_0 * C_LIGHT**2)
"""Vacuum permeability, H/m. Defined through eps0 c^2 mu0 = 1 so the wave
equation closes to machine precision; differs from CODATA mu0 by < 1e-10
relative, which is below every tolerance used here."""
