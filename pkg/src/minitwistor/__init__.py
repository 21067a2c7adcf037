"""Exact verification toolkit for a family of minitwistor surfaces and their double-covering models."""

from .branch import (
    BranchAnalysis,
    branch_polynomial,
    find_admissible_g,
    hyperelliptic_genus,
    infinity_chart,
    is_admissible,
    moduli_dimension,
    nonreduced_fibers,
    ruled_base_genus,
)
from .lattice import (
    DivisorClass,
    Lattice,
    build_minitwistor_T,
    build_surface_S,
    check_C0_numbers,
    intersect,
    validate_configuration,
    virtual_genus,
)
from .models import (
    Ideal,
    ModelParams,
    degree_by_slicing,
    derive_branch,
    fiber_model,
    minitwistor_quadric,
    model_X_ideal,
    scroll_relations,
    verify_mt_identity,
)
from .poly import MultiPoly, UniPoly, discriminant, resultant, squarefree_decomposition
from .report import VerificationReport

__version__ = "0.1.0"
