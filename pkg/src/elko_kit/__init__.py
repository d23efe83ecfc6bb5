"""Numerical toolkit for ELKO spinors: construction, field equations,
Poincare generators, finite boosts and the sign-orbit toy model.
"""

__version__ = "0.1.0"

from .clifford import build_basis, slash, sigma_p, DegenerateMomentum  # noqa: F401
from .spinors import elko, elko_quad, projector, u_transform  # noqa: F401
