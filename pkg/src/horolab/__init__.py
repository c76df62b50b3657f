"""horolab: numerical geometry of the Lorentz group of a hyperbolic space.

The package builds the rank-one machinery explicitly in matrices:
structured Lie algebra and group elements, Iwasawa-type factorizations
with both horospherical orientations, the conformal action on the
boundary sphere, the principal family of boundary representations,
directional calculus along the geodesic and horocycle flows, and the
Poisson transform from boundary data to interior eigenfunctions.
"""
from __future__ import annotations

from .config import DEFAULTS, Tolerances, with_overrides
from .lie_core import (
    AlgebraElement,
    BruhatComponents,
    GroupElement,
    InvariantViolation,
    adjoint,
    boost_matrix,
    bracket,
    bruhat_project,
    cartan_involution,
    embed,
    group_exp,
    inner_product,
    iwasawa_algebra_project,
    killing_form,
    metric_matrix,
    rotation_to_pole,
    standard_basis,
)
from .iwasawa import (
    DecompositionError,
    IwasawaFactors,
    iwasawa_decompose,
    iwasawa_h,
    unipotent_matrix,
)
from .boundary import (
    BoundaryPoint,
    TangentVector,
    boundary_action,
    boundary_differential,
    conformal_factor,
    lift_boundary_point,
    log_conformal_factor,
    sphere_quadrature,
    visual_kernel,
)
from .principal_series import (
    BoundarySection,
    compat_defect,
    pullback_p_form,
    rep_action,
    twist_product_defect,
)
from .flow_calculus import (
    EquivariantSection,
    FlowPoint,
    commutation_defect,
    covariant_derivative,
    flow_derivative,
    geodesic_flow,
    horocycle_minus,
    lie_derivative_flow,
    tensor_split,
)
from .poisson import (
    HyperbolicPoint,
    calibrate_kernel_sign,
    eigen_residual,
    group_from_point,
    mean_value_laplacian,
    poisson_transform,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "BoundaryPoint",
    "BoundarySection",
    "BruhatComponents",
    "DEFAULTS",
    "DecompositionError",
    "EquivariantSection",
    "FlowPoint",
    "GroupElement",
    "HyperbolicPoint",
    "InvariantViolation",
    "IwasawaFactors",
    "TangentVector",
    "Tolerances",
    "adjoint",
    "boost_matrix",
    "boundary_action",
    "boundary_differential",
    "bracket",
    "bruhat_project",
    "calibrate_kernel_sign",
    "cartan_involution",
    "commutation_defect",
    "compat_defect",
    "conformal_factor",
    "covariant_derivative",
    "eigen_residual",
    "embed",
    "flow_derivative",
    "geodesic_flow",
    "group_exp",
    "group_from_point",
    "horocycle_minus",
    "inner_product",
    "iwasawa_algebra_project",
    "iwasawa_decompose",
    "iwasawa_h",
    "killing_form",
    "lie_derivative_flow",
    "lift_boundary_point",
    "log_conformal_factor",
    "mean_value_laplacian",
    "metric_matrix",
    "poisson_transform",
    "pullback_p_form",
    "rep_action",
    "rotation_to_pole",
    "sphere_quadrature",
    "standard_basis",
    "tensor_split",
    "twist_product_defect",
    "unipotent_matrix",
    "visual_kernel",
    "with_overrides",
]
