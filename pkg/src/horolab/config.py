"""Central tolerance and step-size configuration.

Every numerical gate in the library reads its default from the single
frozen record below, so calibration has exactly one knob per contract.
Tests and the verify CLI may override individual entries by name.
"""
from __future__ import annotations

from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    # structural matrix invariants
    algebra_skew: float = 1e-12
    root_space: float = 1e-12
    adjoint_scaling: float = 1e-10
    bruhat_orthogonality: float = 1e-12
    pairing_consistency: float = 1e-12
    nilpotent_exactness: float = 1e-15
    group_membership: float = 1e-8
    group_strict: float = 1e-10
    component_slack: float = 1e-9
    bruhat_reassembly: float = 1e-12
    basis_orthonormality: float = 1e-12
    payload_skew: float = 1e-12
    unit_vector: float = 1e-12
    tangency: float = 1e-12

    # factorizations
    iwasawa_roundtrip: float = 1e-9
    iwasawa_k_orthogonality: float = 1e-10
    iwasawa_error_gate: float = 1e-6
    cocycle: float = 1e-9
    m_stability: float = 1e-10
    a_equivariance: float = 1e-10
    scale_cap: float = 50.0

    # boundary sphere
    lift_check: float = 1e-12
    lift_independence: float = 1e-10
    conformality: float = 1e-10
    differential_fd: float = 1e-6
    algebra_chain: float = 1e-9
    change_of_variables: float = 1e-6
    kernel_invariance: float = 1e-9
    kernel_cocycle: float = 1e-9
    quadrature_exactness: float = 1e-10
    quadrature_mass: float = 1e-12

    # principal family of boundary representations
    compat: float = 1e-8
    compat_control: float = 1e-2
    homomorphism: float = 1e-8
    unitarity: float = 1e-6
    twist_fusion: float = 1e-10
    pullback_contravariance: float = 1e-9

    # flow calculus
    anosov_exact: float = 1e-10
    coset_invariance: float = 1e-10
    lie_shift: float = 1e-6
    commutation: float = 1e-4
    commutation_control: float = 1e-2
    horocycle_basis: float = 1e-8
    horocycle_shift: float = 1e-4
    tensor_split: float = 1e-14

    # Poisson transform
    hyperboloid: float = 1e-10
    eigen_residual: float = 5e-3
    mean_laplacian_model: float = 1e-3
    poisson_lift_freedom: float = 1e-9
    poisson_equivariance: float = 1e-6
    poisson_convergence: float = 1e-6

    # finite differences
    fd_step: float = 1e-5
    fd_step_nested: float = 1e-4


DEFAULTS = Tolerances()

_FIELD_NAMES = frozenset(f.name for f in fields(Tolerances))


def tolerance_names() -> frozenset[str]:
    """Names accepted as overrides by :func:`with_overrides`."""
    return _FIELD_NAMES


def with_overrides(base: Tolerances, overrides: dict[str, float]) -> Tolerances:
    """Return a copy of ``base`` with the named entries replaced.

    Unknown names raise ``KeyError`` so config typos fail loudly.
    """
    for name in overrides:
        if name not in _FIELD_NAMES:
            raise KeyError(f"unknown tolerance name: {name!r}")
    return replace(base, **overrides)
