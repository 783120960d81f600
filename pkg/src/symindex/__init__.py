"""Index of symmetry and leaf of symmetry for compact homogeneous spaces."""
from .catalog import build_normal, build_so, build_su3, build_triple_scaled, get_entry, named_catalog
from .errors import NumericalError, SymIndexError, ValidationError
from .homogeneous import Assumptions, Explicit, HomogeneousSpace, Normal, build_space, fixed_vectors, u_tensor
from .killing import EXACT, LOWER_BOUND, cartan_subspace, index_of_symmetry, is_symmetric
from .kostant import classify_metric, kostant_form, transvection_algebra
from .leaf import bracket_formula_check, leaf_decomposition, symmetric_isotropy, theorem1_check
from .lie import BilinearForm, LieAlgebra, Subspace, ideal_decomposition, invariant_forms, killing_form
from .report import analyze

__version__ = "0.1.0"

__all__ = [
    "Assumptions", "BilinearForm", "EXACT", "Explicit", "HomogeneousSpace", "LOWER_BOUND", "LieAlgebra",
    "Normal", "NumericalError", "Subspace", "SymIndexError", "ValidationError", "analyze",
    "bracket_formula_check", "build_normal", "build_so", "build_space", "build_su3", "build_triple_scaled",
    "cartan_subspace", "classify_metric", "fixed_vectors", "get_entry", "ideal_decomposition",
    "index_of_symmetry", "invariant_forms", "is_symmetric", "killing_form", "kostant_form",
    "leaf_decomposition", "named_catalog", "symmetric_isotropy", "theorem1_check", "transvection_algebra",
    "u_tensor",
]
