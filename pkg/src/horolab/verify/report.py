"""Result records, report serialization, and the check registry.

Every runnable check is registered here with the single library
invariant it certifies, so coverage ("each listed invariant has at
least one check") and well-formedness ("each check certifies exactly
one invariant") are auditable by code rather than by convention.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Mapping

from ..config import DEFAULTS, Tolerances, tolerance_names, with_overrides

__all__ = [
    "CHECK_REGISTRY",
    "CheckRegistration",
    "CheckResult",
    "ConfigError",
    "INVARIANT_KEYS",
    "OP_CONTRACT_KEYS",
    "SUITE_NAMES",
    "VerifyConfig",
    "VerifyReport",
    "audit_registry",
]


class ConfigError(ValueError):
    """Invalid verify configuration or config file."""


SUITE_NAMES = (
    "lie_core",
    "iwasawa",
    "boundary",
    "principal_series",
    "flow_calculus",
    "poisson",
)

# The module-level invariants the library promises, keyed by suite.
INVARIANT_KEYS: Mapping[str, str] = {
    "lie_core.root_space_bracket":
        "bracketing the boost generator with raising/lowering elements "
        "rescales them by their sign",
    "lie_core.adjoint_scaling":
        "conjugating raising/lowering elements by boosts rescales them "
        "exponentially",
    "lie_core.bruhat_orthogonality":
        "the four block components of an algebra element are mutually "
        "orthogonal",
    "lie_core.pairing_consistency":
        "the trace inner product matches the rescaled Killing pairing "
        "against the flipped argument",
    "lie_core.nilpotent_exp_degree":
        "exponentials of raising/lowering elements truncate at matrix "
        "degree two",
    "iwasawa.roundtrip":
        "multiplying the three factors back together recovers the input",
    "iwasawa.m_stability":
        "right spatial rotation moves only the compact factor",
    "iwasawa.a_equivariance":
        "right boosts shift the boost coordinate additively",
    "iwasawa.cocycle":
        "the boost coordinate of a product telescopes through the "
        "compact factor",
    "boundary.lift_independence":
        "boundary operations do not depend on which compact "
        "representative lifts the point",
    "boundary.conformality":
        "the boundary differential rescales lengths by the conformal "
        "factor",
    "boundary.projection_chain":
        "conjugating a frame generator by the boost-unipotent factor and "
        "projecting back is plain scaling, modulo the rotation block",
    "boundary.change_of_variables":
        "the conformal factor to the n-th power is the Jacobian of the "
        "boundary action",
    "boundary.kernel_cocycle":
        "the viewpoint-comparison kernel is multiplicative in the "
        "viewpoint",
    "principal_series.homomorphism":
        "acting by a product equals acting twice",
    "principal_series.unitarity":
        "purely oscillatory weights preserve the quadrature norm",
    "principal_series.compat":
        "at the matched weight the twisted action is the pullback of "
        "forms",
    "principal_series.twist_fusion":
        "a scalar-twisted product of actions fuses into one action with "
        "shifted weight",
    "flow_calculus.horocycle_shift":
        "the stable-direction operator shifts exact boost weights by one",
    "flow_calculus.anosov_rates":
        "the flow differential contracts raising and expands lowering "
        "components at unit exponential rate",
    "flow_calculus.coset_invariance":
        "flow-level outputs are unchanged under right spatial rotation "
        "of the representative",
    "flow_calculus.lie_covariant_shift":
        "on weighted wedge sections the flow Lie derivative differs from "
        "the boost derivative by the weight",
    "poisson.equivariance":
        "translating the transform matches transforming the twisted "
        "boundary data",
    "poisson.eigenvalue_law":
        "transforms are eigenfunctions of the positive Laplacian with "
        "eigenvalue lam*(n-lam)",
    "poisson.quadrature_convergence":
        "doubling the quadrature degree leaves transforms unchanged at "
        "tolerance",
}

# Sharper operation-level contracts that also get dedicated checks.
OP_CONTRACT_KEYS: Mapping[str, str] = {
    "lie_core.exp_adjoint_consistency":
        "exponential of a conjugated element equals the conjugated "
        "exponential",
    "iwasawa.factor_recovery":
        "decomposing a forward-constructed product recovers its factors",
    "boundary.kernel_invariance":
        "the viewpoint kernel is unchanged under simultaneous translation "
        "of both viewpoints and the boundary point",
    "boundary.differential_consistency":
        "the boundary differential matches finite differences of the "
        "action along curves",
    "boundary.quadrature_exactness":
        "sphere rules integrate low-degree polynomials to their exact "
        "moments",
    "boundary.quadrature_mass":
        "sphere rule weights are a probability measure",
    "boundary.action_group_law":
        "the boundary action composes like the group",
    "principal_series.pullback_contravariance":
        "pullback under a product equals sequential pullbacks",
    "flow_calculus.flow_commutation":
        "exchanging the boost derivative with the stable-direction "
        "operator reproduces the operator itself",
    "flow_calculus.horocycle_basis":
        "the stable-direction operator is independent of the orthonormal "
        "basis choice",
    "flow_calculus.tensor_split":
        "two-slot values split exactly into trace-free symmetric, "
        "antisymmetric, and trace parts",
    "flow_calculus.flow_composition":
        "flow and flow differential compose additively in time",
    "poisson.base_normalization":
        "the transform of the unit section at the base point is one",
    "poisson.harmonic_measure":
        "at weight n the transform of the unit section is one everywhere",
    "poisson.lift_independence":
        "the transform does not depend on the group element chosen over "
        "a point",
}


@dataclass(frozen=True)
class CheckRegistration:
    """Static description of one check: where it runs, what it certifies,
    which tolerance gates it, and the comparison direction."""

    check_id: str
    suite: str
    key: str
    tolerance_name: str
    mode: str = "upper"  # "upper": pass iff residual <= tol; "lower": >

    def tolerance(self, tol: Tolerances) -> float:
        return float(getattr(tol, self.tolerance_name))


_REGISTRATIONS = [
    CheckRegistration("LC1", "lie_core", "lie_core.root_space_bracket",
                      "root_space"),
    CheckRegistration("LC2", "lie_core", "lie_core.adjoint_scaling",
                      "adjoint_scaling"),
    CheckRegistration("LC3", "lie_core", "lie_core.bruhat_orthogonality",
                      "bruhat_orthogonality"),
    CheckRegistration("LC4", "lie_core", "lie_core.pairing_consistency",
                      "pairing_consistency"),
    CheckRegistration("LC5", "lie_core", "lie_core.nilpotent_exp_degree",
                      "nilpotent_exactness"),
    CheckRegistration("LC6", "lie_core", "lie_core.exp_adjoint_consistency",
                      "group_strict"),
    CheckRegistration("IW1", "iwasawa", "iwasawa.roundtrip",
                      "iwasawa_roundtrip"),
    CheckRegistration("IW2", "iwasawa", "iwasawa.m_stability", "m_stability"),
    CheckRegistration("IW3", "iwasawa", "iwasawa.a_equivariance",
                      "a_equivariance"),
    CheckRegistration("IW4", "iwasawa", "iwasawa.cocycle", "cocycle"),
    CheckRegistration("IW5", "iwasawa", "iwasawa.factor_recovery",
                      "iwasawa_roundtrip"),
    CheckRegistration("BD1", "boundary", "boundary.lift_independence",
                      "lift_independence"),
    CheckRegistration("BD2", "boundary", "boundary.conformality",
                      "conformality"),
    CheckRegistration("BD3", "boundary", "boundary.projection_chain",
                      "algebra_chain"),
    CheckRegistration("BD4", "boundary", "boundary.change_of_variables",
                      "change_of_variables"),
    CheckRegistration("BD5", "boundary", "boundary.kernel_cocycle",
                      "kernel_cocycle"),
    CheckRegistration("BD6", "boundary", "boundary.kernel_invariance",
                      "kernel_invariance"),
    CheckRegistration("BD7", "boundary", "boundary.differential_consistency",
                      "differential_fd"),
    CheckRegistration("BD8", "boundary", "boundary.quadrature_exactness",
                      "quadrature_exactness"),
    CheckRegistration("BD9", "boundary", "boundary.quadrature_mass",
                      "quadrature_mass"),
    CheckRegistration("BD10", "boundary", "boundary.action_group_law",
                      "group_strict"),
    CheckRegistration("PS1", "principal_series",
                      "principal_series.homomorphism", "homomorphism"),
    CheckRegistration("PS2", "principal_series",
                      "principal_series.unitarity", "unitarity"),
    CheckRegistration("PS3", "principal_series",
                      "principal_series.compat", "compat"),
    CheckRegistration("PS4", "principal_series",
                      "principal_series.compat", "compat_control",
                      mode="lower"),
    CheckRegistration("PS5", "principal_series",
                      "principal_series.twist_fusion", "twist_fusion"),
    CheckRegistration("PS6", "principal_series",
                      "principal_series.pullback_contravariance",
                      "pullback_contravariance"),
    CheckRegistration("FC1", "flow_calculus", "flow_calculus.anosov_rates",
                      "anosov_exact"),
    CheckRegistration("FC2", "flow_calculus",
                      "flow_calculus.coset_invariance", "coset_invariance"),
    CheckRegistration("FC3", "flow_calculus",
                      "flow_calculus.lie_covariant_shift", "lie_shift"),
    CheckRegistration("FC4", "flow_calculus",
                      "flow_calculus.horocycle_shift", "horocycle_shift"),
    CheckRegistration("FC5", "flow_calculus",
                      "flow_calculus.flow_commutation", "commutation"),
    CheckRegistration("FC6", "flow_calculus",
                      "flow_calculus.flow_commutation", "commutation_control",
                      mode="lower"),
    CheckRegistration("FC7", "flow_calculus",
                      "flow_calculus.horocycle_basis", "horocycle_basis"),
    CheckRegistration("FC8", "flow_calculus", "flow_calculus.tensor_split",
                      "tensor_split"),
    CheckRegistration("FC9", "flow_calculus",
                      "flow_calculus.flow_composition", "anosov_exact"),
    CheckRegistration("PO1", "poisson", "poisson.base_normalization",
                      "quadrature_mass"),
    CheckRegistration("PO2", "poisson", "poisson.harmonic_measure",
                      "change_of_variables"),
    CheckRegistration("PO3", "poisson", "poisson.lift_independence",
                      "poisson_lift_freedom"),
    CheckRegistration("PO4", "poisson", "poisson.equivariance",
                      "poisson_equivariance"),
    CheckRegistration("PO5", "poisson", "poisson.eigenvalue_law",
                      "eigen_residual"),
    CheckRegistration("PO6", "poisson", "poisson.eigenvalue_law",
                      "eigen_residual"),
    CheckRegistration("PO7", "poisson", "poisson.quadrature_convergence",
                      "poisson_convergence"),
]

CHECK_REGISTRY: Mapping[str, CheckRegistration] = {
    reg.check_id: reg for reg in _REGISTRATIONS
}


def audit_registry() -> None:
    """Fail loudly if the registry loses coverage or well-formedness."""
    if len(CHECK_REGISTRY) != len(_REGISTRATIONS):
        raise AssertionError("duplicate check ids in the registry")
    known = set(INVARIANT_KEYS) | set(OP_CONTRACT_KEYS)
    names = set(tolerance_names())
    for reg in CHECK_REGISTRY.values():
        if reg.key not in known:
            raise AssertionError(f"{reg.check_id} certifies unknown key "
                                 f"{reg.key!r}")
        if reg.suite not in SUITE_NAMES:
            raise AssertionError(f"{reg.check_id} names unknown suite "
                                 f"{reg.suite!r}")
        if reg.tolerance_name not in names:
            raise AssertionError(f"{reg.check_id} uses unknown tolerance "
                                 f"{reg.tolerance_name!r}")
        if reg.mode not in ("upper", "lower"):
            raise AssertionError(f"{reg.check_id} has invalid mode")
    covered = {reg.key for reg in CHECK_REGISTRY.values()}
    missing = set(INVARIANT_KEYS) - covered
    if missing:
        raise AssertionError(f"invariants without checks: {sorted(missing)}")


audit_registry()


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VerifyConfig:
    """Everything a deterministic verification run depends on."""

    n: int = 2
    fd_step: float = 1e-5
    quad_degree: int = 16
    seed: int = 2026
    suites: tuple = SUITE_NAMES
    output: str | None = None
    tolerances: Tolerances = DEFAULTS
    extras: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.n not in (1, 2, 3):
            raise ConfigError(f"n must be 1, 2, or 3, got {self.n}")
        if not 1e-7 <= self.fd_step <= 1e-2:
            raise ConfigError(
                f"fd_step must lie in [1e-7, 1e-2], got {self.fd_step}")
        if self.quad_degree < 4:
            raise ConfigError(
                f"quad_degree must be at least 4, got {self.quad_degree}")
        suites = tuple(self.suites)
        for name in suites:
            if name not in SUITE_NAMES:
                raise ConfigError(
                    f"unknown suite {name!r}; known: {', '.join(SUITE_NAMES)}")
        object.__setattr__(self, "suites", suites)
        object.__setattr__(self, "extras", dict(self.extras))

    def with_tolerance_overrides(self, overrides: Mapping[str, float]):
        try:
            tols = with_overrides(self.tolerances, dict(overrides))
        except KeyError as exc:
            raise ConfigError(str(exc)) from None
        return replace(self, tolerances=tols)

    def echo(self) -> dict:
        return {
            "n": self.n,
            "fd_step": self.fd_step,
            "quad_degree": self.quad_degree,
            "seed": self.seed,
            "suites": list(self.suites),
            "tolerance_overrides": {
                name: getattr(self.tolerances, name)
                for name in tolerance_names()
                if getattr(self.tolerances, name) != getattr(DEFAULTS, name)
            },
        }


# ---------------------------------------------------------------------------
# results
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    suite: str
    check_id: str
    label: str
    residual: float
    tolerance: float
    mode: str = "upper"
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        if self.mode == "lower":
            return self.residual > self.tolerance
        return self.residual <= self.tolerance

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        rel = "<=" if self.mode == "upper" else ">"
        return (f"[{verdict}] {self.suite}/{self.check_id}: "
                f"residual {self.residual:.3e} {rel} {self.tolerance:.3e} "
                f"({self.wall_time:.2f}s)  {self.label}")


@dataclass(frozen=True)
class VerifyReport:
    config: dict
    checks: tuple
    version: str

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary(self) -> dict:
        passed = sum(1 for c in self.checks if c.passed)
        return {
            "total": len(self.checks),
            "passed": passed,
            "failed": len(self.checks) - passed,
        }

    def _check_dict(self, c: CheckResult, with_time: bool) -> dict:
        rec = {
            "suite": c.suite,
            "check_id": c.check_id,
            "certifies": c.label,
            "residual": c.residual,
            "tolerance": c.tolerance,
            "mode": c.mode,
            "passed": c.passed,
        }
        if with_time:
            rec["wall_time_s"] = round(c.wall_time, 4)
        return rec

    def to_dict(self) -> dict:
        return {
            "artifact": "horolab-verify-report",
            "version": self.version,
            "config": self.config,
            "summary": self.summary(),
            "checks": [self._check_dict(c, True) for c in self.checks],
        }

    def comparable_content(self) -> dict:
        """The report minus anything timing-dependent."""
        data = self.to_dict()
        data["checks"] = [self._check_dict(c, False) for c in self.checks]
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def render_text(self) -> str:
        lines = [c.line() for c in self.checks]
        s = self.summary()
        lines.append(f"{s['passed']}/{s['total']} checks passed")
        return "\n".join(lines)
