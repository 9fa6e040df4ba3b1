"""Galois torus workbench - core modules"""

from .analyzer import TorusAnalyzer
from .catalog import preset
from .cohomology import CoefficientModule, cohomology_group
from .galois_lattice import FiniteGroup, GaloisLattice, LocalArithmeticData
from .integer_linalg import FinGenAbGroup, IntegerMatrix, RationalLattice
from .oracle import OracleHarness

__version__ = "1.0.0"
__all__ = [
    "TorusAnalyzer",
    "preset",
    "CoefficientModule",
    "cohomology_group",
    "FiniteGroup",
    "GaloisLattice",
    "LocalArithmeticData",
    "FinGenAbGroup",
    "IntegerMatrix",
    "RationalLattice",
    "OracleHarness",
]
