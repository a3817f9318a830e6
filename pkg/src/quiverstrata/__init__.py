"""Exact combinatorics for quiver varieties.

Submodules
----------
kmcore
    Graphs, Cartan matrices, dimension vectors and affine weights.
stability
    Stability parameters, slopes and faces of the chamber structure.
modrep
    Finite-field modules of the preprojective algebra, HN and JH filtrations.
mult
    Root and weight multiplicities.
nonempty
    Nonemptiness criteria for stable loci and strata.
strata
    Stratum indices and local models at Levi and ALE faces.
crystal
    Kashiwara crystals on colored partitions and their tensor products.
levelrank
    Generalized Young diagrams, Maya diagrams and level-rank duality.
verify
    The numbered acceptance checks.
cli
    Command line entry point.
"""
from .errors import (
    BudgetError,
    ConsistencyError,
    InconclusiveDepthError,
    ParseError,
    PreconditionError,
    QuiverError,
)
from .kmcore import AffineWeight, CartanMatrix, QuiverGraph, cartan_from_graph
from .stability import StabilityParam

__version__ = "0.1.0"

__all__ = [
    "AffineWeight",
    "BudgetError",
    "CartanMatrix",
    "ConsistencyError",
    "InconclusiveDepthError",
    "ParseError",
    "PreconditionError",
    "QuiverError",
    "QuiverGraph",
    "StabilityParam",
    "cartan_from_graph",
]
