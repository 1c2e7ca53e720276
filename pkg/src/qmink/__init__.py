"""Exact symbolic engine for the differential calculus on q-Minkowski space."""

from . import scalars, algebra, matrices, derivatives, lorentz, waves, surface

__all__ = ["scalars", "algebra", "matrices", "derivatives", "lorentz",
           "waves", "surface"]
__version__ = "0.1.0"
