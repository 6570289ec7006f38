"""curvealg: exact-arithmetic workbench for quiver algebra deformations,
bigraded Hochschild cohomology, gauge normal forms of truncated minimal
A-infinity structures, special-curve coordinate rings and their
Grassmannian/Krichever data, and the explicit genus-1 chart computations.
"""

__version__ = "0.1.0"
