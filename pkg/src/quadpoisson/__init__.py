"""Exact construction and verification of quadratic Poisson brackets
compatible with finite-dimensional associative algebras."""

__version__ = "0.1.0"

from .algebra import (
    Algebra,
    AlgebraError,
    DimensionError,
    LieStructure,
    NoUnitError,
    Tensor,
    lie_structure,
    multiply,
    validate_algebra,
)
from .poisson import (
    PolyTensor,
    ResidualReport,
    canonicalize,
    jacobi_mixed,
    jacobiator,
    multiplicativity_residual,
    unit_vanishing,
)
from .yang_baxter import RMatrix, cybe_residual, quadratic_from_r, schouten
from .catalog import get_algebra
