"""Exact computations with quasi-Frobenius Lie superalgebras."""

__version__ = "0.1.0"

from .algebra import LieSuperalgebra, SuperDim, is_solvable, validate_algebra
from .double_extension import ExtensionData, decompose, double_extend
from .field import QQ, Field
from .forms import BilinearForm, FormFamily, solve_closed_antisymmetric_forms
from .lagrangian import Connection, lagrangian_cohomology, tstar_extend

__all__ = [
    "LieSuperalgebra", "SuperDim", "is_solvable", "validate_algebra",
    "ExtensionData", "decompose", "double_extend",
    "QQ", "Field", "BilinearForm", "FormFamily", "solve_closed_antisymmetric_forms",
    "Connection", "lagrangian_cohomology", "tstar_extend",
]
