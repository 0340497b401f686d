"""Cubical loop and path space models, cobar constructions and homotopy G-algebra checks."""

from .chain import Z2, ZZ, FreeChainComplex, Ring, betti_numbers, homology, homology_table, verify_d_squared
from .simplicial import SimplicialSet, minimal_sphere, simplex_mod_1skeleton, standard_simplex, suspension, wedge
from .spaces import resolve

__version__ = "0.1.0"

__all__ = [
    "FreeChainComplex", "Ring", "SimplicialSet", "Z2", "ZZ", "betti_numbers", "homology", "homology_table",
    "minimal_sphere", "resolve", "simplex_mod_1skeleton", "standard_simplex", "suspension", "verify_d_squared",
    "wedge",
]
