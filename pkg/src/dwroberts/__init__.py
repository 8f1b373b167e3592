"""Numerical ranges, Davis-Wielandt shells and Roberts orthogonality to the identity."""

from .dwshell import (
    HemisphereGrid,
    ShellCloud,
    ShellPoint,
    dv_support,
    dv_ub_symmetry_defect,
    dv_upper_samples,
    hemisphere_grid,
    l_mu_max,
)
from .linalg_core import (
    DomainError,
    InvalidInputError,
    NumericalFailureError,
    cartesian_parts,
    eig2x2,
    herm_eigen,
    load_matrix,
    operator_norm,
)
from .matrix_gen import GenSpec, generate
from .orthogonality import (
    DeciderConfig,
    OrthVerdict,
    Verdict,
    bj_pair,
    bj_to_identity,
    center_selfadjoint,
    classify,
    dw_axis_2x2,
    ellipse_params_2x2,
    norm_pm,
    roberts_refute_pair,
    roberts_to_identity,
    single_lambda_check,
)
from .ranges import compress, contains_zero, nr_profile, nr_support, nr_symmetry_defect

__version__ = "0.1.0"
