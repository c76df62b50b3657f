"""Factorization of group elements into compact, boost, and unipotent parts.

Both orientations are supported: sign +1 factors through the raising
unipotent subgroup, sign -1 through the lowering one.  The algorithm is
the null-vector method: each unipotent subgroup fixes one of the null
vectors zeta = pole_axis -/+ time_axis, the boost subgroup scales it by
e^{-/+t}, and the compact factor moves it isometrically, so a single
matrix-vector product exposes the boost parameter and the compact
direction; the unipotent vector then falls out of a block read-off.
No iteration, no linear solves.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULTS
from .lie_core import (
    GroupElement,
    InvariantViolation,
    boost_matrix,
    embed,
    group_exp,
    normalize_sign,
    rotation_element,
    rotation_to_pole,
    spatial_rotation_element,
)

__all__ = [
    "DecompositionError",
    "IwasawaFactors",
    "iwasawa_cocycle_defect",
    "iwasawa_decompose",
    "iwasawa_h",
    "null_vector",
    "unipotent_matrix",
]


class DecompositionError(ValueError):
    """The factorization failed or fell outside its validity guards."""


def null_vector(sign, n: int) -> np.ndarray:
    """The null vector fixed by the unipotent subgroup of this sign.

    sign +1: pole + time (future-directed); sign -1: pole - time
    (past-directed).  The boost exp(t H0) scales it by e^{sign * t}.
    """
    sigma = normalize_sign(sign)
    z = np.zeros(n + 2)
    z[n] = 1.0
    z[n + 1] = float(sigma)
    return z


def unipotent_matrix(v: np.ndarray, sign, n: int | None = None) -> GroupElement:
    """Closed-form exponential of the nilpotent element built from v."""
    return group_exp(embed("nplus" if normalize_sign(sign) == 1 else "nminus",
                           v, n))


@dataclass(frozen=True)
class IwasawaFactors:
    """g = k * boost(t) * unipotent(v), with the reconstruction residual."""

    sign: int
    k: GroupElement
    t: float
    v: np.ndarray
    residual: float
    n: int

    def boost(self) -> GroupElement:
        return boost_matrix(self.t, self.n)

    def unipotent(self) -> GroupElement:
        return unipotent_matrix(self.v, self.sign, self.n)

    def rebuild(self) -> GroupElement:
        return self.k @ self.boost() @ self.unipotent()


def _scaled_difference(a: np.ndarray, b: np.ndarray) -> float:
    scale = max(1.0, float(np.max(np.abs(b))))
    return float(np.max(np.abs(a - b)) / scale)


def iwasawa_h(g: GroupElement, sign) -> float:
    """The boost coordinate of the factorization, from one product.

    Applying g to the distinguished null vector gives
    e^{sign*t} * (b, sign) with b on the sphere, so the last coordinate
    alone determines t.
    """
    sigma = normalize_sign(sign)
    w = g.mat @ null_vector(sigma, g.n)
    last = float(sigma * w[-1])
    if last <= 0.0:
        raise DecompositionError(
            "null-vector image has the wrong causal orientation; "
            "input is not in the identity component"
        )
    t = sigma * float(np.log(last))
    if abs(t) > DEFAULTS.scale_cap:
        raise DecompositionError(
            f"|t| = {abs(t):.3e} exceeds the factorization cap "
            f"{DEFAULTS.scale_cap}"
        )
    return t


def iwasawa_decompose(g: GroupElement, sign) -> IwasawaFactors:
    """Factor g into compact * boost * unipotent for the given sign."""
    sigma = normalize_sign(sign)
    n = g.n
    w = g.mat @ null_vector(sigma, n)
    last = float(sigma * w[-1])
    if last <= 0.0:
        raise DecompositionError(
            "null-vector image has the wrong causal orientation; "
            "input is not in the identity component"
        )
    t = sigma * float(np.log(last))
    if abs(t) > DEFAULTS.scale_cap:
        raise DecompositionError(
            f"|t| = {abs(t):.3e} exceeds the factorization cap "
            f"{DEFAULTS.scale_cap}"
        )

    b = w[: n + 1] / last
    b = b / float(np.linalg.norm(b))
    k0 = rotation_element(rotation_to_pole(b))

    # Peel the pole rotation off; what remains is (spatial rotation) *
    # boost * unipotent, whose leading n x n block is the rotation and
    # whose next column is that rotation applied to v.
    h = k0.mat.T @ g.mat
    R = np.array(h[:n, :n])
    ortho_defect = float(np.max(np.abs(R.T @ R - np.eye(n))))
    if ortho_defect > 1e-13:
        # Large boosts amplify roundoff in the block read-off; snap the
        # rotation back onto the orthogonal group before extracting v.
        U, _, Vt = np.linalg.svd(R)
        R = U @ Vt
    v = R.T @ h[:n, n]

    k = k0 @ spatial_rotation_element(R)
    rebuilt = k @ boost_matrix(t, n) @ unipotent_matrix(v, sigma, n)
    residual = _scaled_difference(rebuilt.mat, g.mat)
    if residual > DEFAULTS.iwasawa_error_gate:
        raise DecompositionError(
            f"reconstruction residual {residual:.3e} exceeds the gate "
            f"{DEFAULTS.iwasawa_error_gate:.1e}; input is ill-conditioned "
            "for this factorization"
        )
    return IwasawaFactors(sign=sigma, k=k, t=t, v=v, residual=residual, n=n)


def iwasawa_cocycle_defect(g1: GroupElement, g2: GroupElement, sign) -> float:
    """|t(g1 g2) - t(g1 k(g2)) - t(g2)| for the boost coordinate t."""
    sigma = normalize_sign(sign)
    f2 = iwasawa_decompose(g2, sigma)
    total = iwasawa_h(g1 @ g2, sigma)
    through_k = iwasawa_h(g1 @ f2.k, sigma)
    return abs(total - through_k - f2.t)
