"""The boundary sphere, its conformal group action, and quadrature.

Boundary points are unit vectors in R^{n+1}; the point b corresponds to
the compact-group coset moving the pole axis onto b.  The group acts by
the compact factor of the sign-minus factorization, which on null
vectors reduces to one matrix-vector product: g applied to the
past-directed null lift (b, -1) is e^{-t} (b', -1) up to normalization,
with t the log of the conformal stretch at b.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULTS
from .iwasawa import iwasawa_decompose, iwasawa_h
from .lie_core import (
    GroupElement,
    InvariantViolation,
    rotation_element,
    rotation_to_pole,
)

__all__ = [
    "BoundaryPoint",
    "SphereQuadrature",
    "TangentVector",
    "boundary_action",
    "boundary_differential",
    "conformal_factor",
    "frame_vectors",
    "lift_boundary_point",
    "log_conformal_factor",
    "null_lift",
    "pole_point",
    "sphere_quadrature",
    "tangent_from_frame",
    "tangent_to_frame",
    "visual_kernel",
]


@dataclass(frozen=True, eq=False)
class BoundaryPoint:
    """A unit vector in R^{n+1}."""

    b: np.ndarray

    def __post_init__(self):
        arr = np.atleast_1d(np.asarray(self.b, dtype=float))
        if arr.ndim != 1 or arr.size < 2:
            raise InvariantViolation("boundary point must be a vector in "
                                     "R^{n+1} with n >= 1")
        norm = float(np.linalg.norm(arr))
        if abs(norm - 1.0) > DEFAULTS.unit_vector:
            raise InvariantViolation(f"|b| = {norm!r} is not 1")
        arr.setflags(write=False)
        object.__setattr__(self, "b", arr)

    @property
    def n(self) -> int:
        return self.b.size - 1


def pole_point(n: int) -> BoundaryPoint:
    b = np.zeros(n + 1)
    b[-1] = 1.0
    return BoundaryPoint(b)


@dataclass(frozen=True, eq=False)
class TangentVector:
    """A vector w attached at a boundary point, with w . b = 0."""

    base: BoundaryPoint
    w: np.ndarray

    def __post_init__(self):
        arr = np.atleast_1d(np.asarray(self.w, dtype=float))
        if arr.size != self.base.b.size:
            raise InvariantViolation("tangent vector has wrong dimension")
        scale = max(1.0, float(np.max(np.abs(arr))))
        if abs(float(arr @ self.base.b)) > DEFAULTS.tangency * scale:
            raise InvariantViolation("vector is not tangent to the sphere "
                                     f"(b.w = {float(arr @ self.base.b):.3e})")
        arr.setflags(write=False)
        object.__setattr__(self, "w", arr)

    def norm(self) -> float:
        return float(np.linalg.norm(self.w))


def null_lift(b: BoundaryPoint) -> np.ndarray:
    """The past-directed null vector (b, -1) in R^{n+2}."""
    return np.concatenate([b.b, [-1.0]])


def lift_boundary_point(b: BoundaryPoint) -> GroupElement:
    """The deterministic compact representative taking the pole to b."""
    return rotation_element(rotation_to_pole(b.b))


def frame_vectors(k: GroupElement) -> np.ndarray:
    """Columns: the orthonormal tangent frame at k . pole.

    Column j is the image under k of the j-th coordinate direction at
    the pole, i.e. the transported standard frame.
    """
    n = k.n
    return np.array(k.mat[: n + 1, :n])


def tangent_from_frame(k: GroupElement, coords: np.ndarray) -> TangentVector:
    """The tangent vector at k . pole with the given frame coordinates."""
    n = k.n
    coords = np.asarray(coords, dtype=float)
    base = BoundaryPoint(_unit(k.mat[: n + 1, n]))
    return TangentVector(base, frame_vectors(k) @ coords)


def tangent_to_frame(k: GroupElement, tv: TangentVector) -> np.ndarray:
    """Frame coordinates of a tangent vector at k . pole."""
    n = k.n
    full = k.mat[: n + 1, : n + 1].T @ tv.w
    if abs(float(full[n])) > 1e-9 * max(1.0, tv.norm()):
        raise InvariantViolation(
            "tangent vector is not attached at the frame's base point"
        )
    return full[:n]


def _unit(vec: np.ndarray) -> np.ndarray:
    return vec / float(np.linalg.norm(vec))


def boundary_action(g: GroupElement, b: BoundaryPoint) -> BoundaryPoint:
    """The conformal action of g on the sphere."""
    w = g.mat @ null_lift(b)
    last = -float(w[-1])
    if last <= 0.0:
        raise InvariantViolation("null lift lost its causal orientation")
    return BoundaryPoint(_unit(w[:-1] / last))


def log_conformal_factor(g: GroupElement, b: BoundaryPoint) -> float:
    """log of the conformal stretch of g at b.

    Equals the boost coordinate of the sign-minus factorization of
    g composed with any compact representative of b; on the null lift
    this is minus the log of minus the last coordinate.
    """
    w = g.mat @ null_lift(b)
    last = -float(w[-1])
    if last <= 0.0:
        raise InvariantViolation("null lift lost its causal orientation")
    value = -float(np.log(last))
    if abs(value) > DEFAULTS.scale_cap:
        raise InvariantViolation("conformal factor overflows the scale cap")
    return value


def conformal_factor(g: GroupElement, b: BoundaryPoint) -> float:
    return float(np.exp(log_conformal_factor(g, b)))


def boundary_differential(g: GroupElement, tv: TangentVector) -> TangentVector:
    """Exact pushforward of a tangent vector under the boundary action.

    The frame coordinates transport unchanged onto the compact factor of
    the factorization of g * lift(base) and pick up one overall factor,
    the conformal stretch.
    """
    k = lift_boundary_point(tv.base)
    factors = iwasawa_decompose(g @ k, -1)
    coords = tangent_to_frame(k, tv)
    stretched = math.exp(factors.t) * coords
    return tangent_from_frame(factors.k, stretched)


def visual_kernel(x: GroupElement, b: BoundaryPoint, y: GroupElement) -> float:
    """Conformal ratio comparing the viewpoints x and y at b.

    Computed as the exponential of the boost coordinate of
    x^{-1} y kappa, where kappa is the compact factor of y^{-1} lift(b).
    The value does not depend on the coset representatives of x, y, or
    on the lift of b.
    """
    k = lift_boundary_point(b)
    kappa = iwasawa_decompose(y.inverse() @ k, -1).k
    return float(np.exp(iwasawa_h(x.inverse() @ y @ kappa, -1)))


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SphereQuadrature:
    """Nodes and normalized weights for averaging over the sphere."""

    n: int
    degree: int
    points: np.ndarray   # (size, n+1), unit rows
    weights: np.ndarray  # (size,), positive, summing to 1

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        wts = np.asarray(self.weights, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != self.n + 1:
            raise InvariantViolation("quadrature points have wrong shape")
        if wts.shape != (pts.shape[0],):
            raise InvariantViolation("weights do not match points")
        if np.any(wts <= 0.0):
            raise InvariantViolation("weights must be positive")
        mass = math.fsum(wts.tolist())
        if abs(mass - 1.0) > DEFAULTS.quadrature_mass:
            raise InvariantViolation(f"weights sum to {mass!r}, expected 1")
        norms = np.linalg.norm(pts, axis=1)
        if np.max(np.abs(norms - 1.0)) > DEFAULTS.unit_vector:
            raise InvariantViolation("quadrature nodes are off the sphere")
        pts.setflags(write=False)
        wts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", wts)

    @property
    def size(self) -> int:
        return self.points.shape[0]

    def nodes(self) -> tuple[BoundaryPoint, ...]:
        return tuple(BoundaryPoint(p) for p in self.points)

    def integrate(self, values: np.ndarray):
        """Weighted sum with compensated summation per component."""
        values = np.asarray(values)
        terms = self.weights * values
        if np.iscomplexobj(terms):
            return complex(math.fsum(terms.real.tolist()),
                           math.fsum(terms.imag.tolist()))
        return math.fsum(terms.tolist())


def _gauss_legendre(m: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(m)
    return nodes, weights


def sphere_quadrature(n: int, degree: int, method: str = "product",
                      seed: int = 0, samples: int = 2000) -> SphereQuadrature:
    """Quadrature of the given polynomial exactness degree on the sphere.

    Product rules: equispaced angles for n=1; Gauss-Legendre in the
    height times equispaced azimuth for n=2; Gauss-Legendre in the torus
    parameter times two equispaced circles for n=3.  The seeded
    ``monte-carlo`` method is a smoke-test fallback with no exactness
    beyond constants (its declared degree is 0).
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    if method == "monte-carlo":
        rng = np.random.default_rng(seed)
        pts = rng.normal(size=(samples, n + 1))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        wts = np.full(samples, 1.0 / samples)
        return SphereQuadrature(n=n, degree=0, points=pts, weights=wts)
    if method != "product":
        raise ValueError(f"unknown quadrature method {method!r}")

    if n == 1:
        m = 2 * degree + 2
        theta = 2.0 * np.pi * np.arange(m) / m
        pts = np.stack([np.sin(theta), np.cos(theta)], axis=1)
        wts = np.full(m, 1.0 / m)
        return SphereQuadrature(n=1, degree=degree, points=pts, weights=wts)

    if n == 2:
        m1 = (degree + 2) // 2
        m2 = degree + 1
        z, gw = _gauss_legendre(m1)
        phi = 2.0 * np.pi * np.arange(m2) / m2
        r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
        pts = np.empty((m1 * m2, 3))
        wts = np.empty(m1 * m2)
        idx = 0
        for i in range(m1):
            for j in range(m2):
                pts[idx] = (r[i] * np.cos(phi[j]), r[i] * np.sin(phi[j]), z[i])
                wts[idx] = (gw[i] / 2.0) * (1.0 / m2)
                idx += 1
        return SphereQuadrature(n=2, degree=degree, points=pts, weights=wts)

    if n == 3:
        # Torus coordinates: the pair of circle radii (sqrt(1-rho),
        # sqrt(rho)) makes the normalized measure uniform in rho.
        m1 = (degree + 2) // 2
        m2 = degree + 1
        x, gw = _gauss_legendre(m1)
        rho = (x + 1.0) / 2.0
        rw = gw / 2.0
        ang = 2.0 * np.pi * np.arange(m2) / m2
        ca, sa = np.cos(ang), np.sin(ang)
        pts = np.empty((m1 * m2 * m2, 4))
        wts = np.empty(m1 * m2 * m2)
        idx = 0
        for i in range(m1):
            r1 = math.sqrt(1.0 - rho[i])
            r2 = math.sqrt(rho[i])
            for j in range(m2):
                for l in range(m2):
                    pts[idx] = (r1 * ca[j], r1 * sa[j], r2 * ca[l], r2 * sa[l])
                    wts[idx] = rw[i] / (m2 * m2)
                    idx += 1
        return SphereQuadrature(n=3, degree=degree, points=pts, weights=wts)

    raise ValueError(f"unsupported sphere dimension n={n}")
