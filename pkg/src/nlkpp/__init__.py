"""Traveling-wave numerics for the nonlocal KPP-Fisher equation
u_t = u_xx + u (1 - K * u).

Subpackages group by task: `kernels` (interaction measures), `spectral`
(characteristic roots and censuses), `regimes` (bounds and admissible-set
geometry), `profiles` (wave-profile construction by monotone iteration),
`dde` (the associated Wright-type delay equation: periodic orbits, Floquet
analysis, connecting orbits), `pdesim` (direct PDE simulation for
cross-validation), and `cli` (command-line entry point).
"""

__version__ = "0.1.0"
