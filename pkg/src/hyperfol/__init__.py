"""Hyperpolar homogeneous foliations on symmetric spaces of noncompact type.

The package works at two levels.  The abstract level (``rootsys``,
``parabolic``, ``foliation``, ``geometry``) only needs restricted root data
and computes classification families, parabolic profiles and closed-form
principal curvatures.  The matrix level (``matrixlie``) builds concrete real
Lie algebras and serves as an independent numerical and exact oracle.
"""

__version__ = "0.1.0"

from .foliation import FoliationSpec, build_spec, enumerate_families, normalize, subalgebra_profile
from .geometry import mean_curvature, rank_one_tube_curvatures, spectrum_a_type, spectrum_alpha_type
from .parabolic import boundary_component, gradation_profile, langlands_profile, orthogonal_subsets
from .rootsys import RootSystem, build_root_system

__all__ = [
    "FoliationSpec", "RootSystem", "__version__", "boundary_component", "build_root_system", "build_spec",
    "enumerate_families", "gradation_profile", "langlands_profile", "mean_curvature", "normalize",
    "orthogonal_subsets", "rank_one_tube_curvatures", "spectrum_a_type", "spectrum_alpha_type",
    "subalgebra_profile",
]
