"""Concrete matrix realizations used as a ground-truth oracle."""
from .algebra import (REALIZATIONS, AlgebraError, MatrixLieAlgebra, build_sl2_complex, build_sl_real,
                      build_su12, cmat)
from .decomposition import DecompositionError, RootSpaceDecomposition, restricted_root_decomposition
from .verify import (CongruencyResult, IdentityReport, RawProfile, Realization, ShapeOperator, Verdict,
                     VerificationError, ad_exp, ad_exp_conjugation, bracket_closure, identity_checks,
                     is_abelian, is_lie_triple, perp_in_p, polarity_verdict, polarization_residual,
                     projection_residual, raw_profile, realize, shape_operator_koszul,
                     shape_operator_numeric, verify_congruency)

__all__ = [
    "REALIZATIONS", "AlgebraError", "CongruencyResult", "DecompositionError", "IdentityReport",
    "MatrixLieAlgebra", "RawProfile", "Realization", "RootSpaceDecomposition", "ShapeOperator", "Verdict",
    "VerificationError", "ad_exp", "ad_exp_conjugation", "bracket_closure", "build_sl2_complex",
    "build_sl_real", "build_su12", "cmat", "identity_checks", "is_abelian", "is_lie_triple", "perp_in_p",
    "polarity_verdict", "polarization_residual", "projection_residual", "raw_profile", "realize",
    "restricted_root_decomposition", "shape_operator_koszul", "shape_operator_numeric",
    "verify_congruency",
]
