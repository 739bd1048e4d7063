"""Exact verification of triality: so(8), G2, octonions, characteristic classes
and the D4 singularity."""

from .errors import TrialityLabError
from .poly import MultiPoly, gens, parse_poly
from .scalars import GF, QSqrt3, SQRT3

__all__ = ["GF", "MultiPoly", "QSqrt3", "SQRT3", "TrialityLabError", "gens", "parse_poly"]
__version__ = "0.1.0"
