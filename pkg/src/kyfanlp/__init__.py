"""Linear-programming refinements of Ky Fan's eigenvalue-sum majorization.

Top-level names cover the everyday entry points; the submodules hold the
rest.
"""
from .alignment_lp import (
    AlignmentTable,
    LinearProgramInstance,
    LPSolution,
    alignment_table,
    alignment_term,
    alignment_terms,
    build_p0,
    build_p1,
    overlap_vector,
    solve_lp,
    staggered_bound,
    u_k,
)
from .majorization import MajorizationVerdict, majorizes, operator_majorizes, s_k
from .spectral import SpectralDecomposition, Subspace, eigh, eigvalsh, flag_projector
from .tensor import check_separable_fan, downset_chain, spin_alignment_2

__version__ = "0.1.0"
