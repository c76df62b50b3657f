"""Weighted actions on differential forms of the boundary sphere.

A section of degree p is a closed-form p-form on the sphere: a callable
that is multilinear and antisymmetric in its p tangent slots.  The
weighted action with parameter ``lam`` twists the geometric pullback by
a power of the conformal stretch; at ``lam = p - n/2`` it coincides with
the plain pullback of p-forms, and products of two actions fuse into a
single one with shifted parameter.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .boundary import (
    BoundaryPoint,
    TangentVector,
    boundary_action,
    boundary_differential,
    lift_boundary_point,
    pole_point,
    tangent_from_frame,
    tangent_to_frame,
)
from .iwasawa import iwasawa_decompose
from .lie_core import GroupElement, InvariantViolation
from .sampling import random_boundary_point, stream_rng

__all__ = [
    "BoundarySection",
    "compat_defect",
    "homomorphism_defect",
    "make_section",
    "pullback_p_form",
    "random_section",
    "rep_action",
    "sample_slot_arguments",
    "section_product",
    "slot_defects",
    "twist_product_defect",
    "unitarity_defect",
]


@dataclass(frozen=True)
class BoundarySection:
    """A p-form on the sphere given by a closed-form evaluator.

    ``eval_fn`` receives a BoundaryPoint followed by p TangentVector
    arguments attached at it and returns a scalar.  Values are coerced
    to complex so real- and complex-valued sections mix freely.
    """

    p: int
    eval_fn: Callable
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.p < 0:
            raise InvariantViolation("form degree must be nonnegative")

    def __call__(self, b: BoundaryPoint, *ws: TangentVector) -> complex:
        if len(ws) != self.p:
            raise InvariantViolation(
                f"section of degree {self.p} called with {len(ws)} slots"
            )
        return complex(self.eval_fn(b, *ws))


def section_product(f: BoundarySection, s: BoundarySection) -> BoundarySection:
    """Pointwise product of a degree-0 section with a p-form."""
    if f.p != 0:
        raise InvariantViolation("first factor must have degree 0")

    def ev(b, *ws):
        return f(b) * s(b, *ws)

    return BoundarySection(s.p, ev, name=f"({f.name})*({s.name})")


def rep_action(lam: complex, p: int, g: GroupElement,
               s: BoundarySection) -> BoundarySection:
    """The weighted action of g on p-forms with weight parameter lam.

    At a point b with tangent slots the value is the section evaluated
    at the g^{-1}-image of b, slots carried over by the transported
    orthonormal frame, times exp((lam + n/2) t) where t is the boost
    coordinate of the sign-minus factorization of g^{-1} times the
    compact representative of b.
    """
    if s.p != p:
        raise InvariantViolation(f"section degree {s.p} does not match p={p}")
    n = g.n
    g_inv = g.inverse()
    weight = lam + 0.5 * n

    def ev(b, *ws):
        kb = lift_boundary_point(b)
        factors = iwasawa_decompose(g_inv @ kb, -1)
        scalar = np.exp(weight * factors.t)
        col = factors.k.mat[: n + 1, n]
        b_new = BoundaryPoint(col / float(np.linalg.norm(col)))
        args = []
        for w in ws:
            coords = tangent_to_frame(kb, w)
            args.append(tangent_from_frame(factors.k, coords))
        return scalar * s(b_new, *args)

    return BoundarySection(p, ev, name=f"act[{lam}]({s.name})")


def pullback_p_form(g: GroupElement, s: BoundarySection) -> BoundarySection:
    """Pullback of s under the boundary action of g^{-1}.

    Evaluates s at the moved base point on the honestly pushed-forward
    tangent vectors, so it shares no code path with rep_action beyond
    the factorization primitive itself.
    """
    g_inv = g.inverse()

    def ev(b, *ws):
        b_new = boundary_action(g_inv, b)
        args = [boundary_differential(g_inv, w) for w in ws]
        return s(b_new, *args)

    return BoundarySection(s.p, ev, name=f"pullback({s.name})")


# ---------------------------------------------------------------------------
# sampling and defect measurements
# ---------------------------------------------------------------------------

def sample_slot_arguments(rng: np.random.Generator, n: int, p: int,
                          count: int):
    """Seeded (point, orthonormal p-frame) pairs, poles included.

    Returns a list of (BoundaryPoint, tuple of TangentVector).  The
    first few base points are the coordinate poles so branch points of
    the compact lift are always exercised; the rest are uniform.
    """
    if p > n:
        raise InvariantViolation(f"no {p}-frames on a sphere of dimension {n}")
    points = [pole_point(n), BoundaryPoint(-pole_point(n).b)]
    axis = np.zeros(n + 1)
    axis[0] = 1.0
    points.append(BoundaryPoint(axis))
    points.append(BoundaryPoint(-axis))
    while len(points) < count + 4:
        points.append(random_boundary_point(rng, n))
    samples = []
    for b in points:
        if p == 0:
            samples.append((b, ()))
            continue
        while True:
            raw = rng.normal(size=(n + 1, p))
            raw -= np.outer(b.b, b.b @ raw)
            q, r = np.linalg.qr(raw)
            if np.min(np.abs(np.diag(r))) > 1e-8:
                break
        frame = tuple(TangentVector(b, q[:, j]) for j in range(p))
        samples.append((b, frame))
    return samples


def _sup_difference(left: BoundarySection, right: BoundarySection,
                    samples) -> float:
    worst = 0.0
    for b, frame in samples:
        worst = max(worst, abs(left(b, *frame) - right(b, *frame)))
    return worst


def compat_defect(g: GroupElement, p: int, s: BoundarySection,
                  samples: int = 100, lam: complex | None = None,
                  seed: int = 0) -> float:
    """Sup distance between the pullback and the weighted action.

    With the default lam = p - n/2 the two constructions agree exactly;
    passing any other lam breaks the match and serves as a negative
    control against vacuous comparisons.
    """
    n = g.n
    lam_eff = (p - 0.5 * n) if lam is None else lam
    rng = stream_rng(seed, "compat-samples")
    args = sample_slot_arguments(rng, n, p, samples)
    return _sup_difference(pullback_p_form(g, s),
                           rep_action(lam_eff, p, g, s), args)


def twist_product_defect(lam1: complex, lam2: complex, p: int,
                         g: GroupElement, f: BoundarySection,
                         s: BoundarySection, samples: int = 60,
                         seed: int = 0) -> float:
    """Fusion defect of scalar-twisted actions.

    Acting with lam1 on the scalar f and with lam2 on the p-form s and
    multiplying must equal a single action with parameter
    lam1 + lam2 + n/2 on the product section; the scalar factors
    combine exactly, so the defect is pure roundoff.
    """
    if f.p != 0:
        raise InvariantViolation("twist factor must have degree 0")
    n = g.n
    rng = stream_rng(seed, "twist-samples")
    args = sample_slot_arguments(rng, n, p, samples)
    left = section_product(rep_action(lam1, 0, g, f),
                           rep_action(lam2, p, g, s))
    right = rep_action(lam1 + lam2 + 0.5 * n, p, g, section_product(f, s))
    return _sup_difference(left, right, args)


def homomorphism_defect(lam: complex, p: int, g1: GroupElement,
                        g2: GroupElement, s: BoundarySection,
                        samples: int = 40, seed: int = 0) -> float:
    """Sup distance between acting with g1*g2 and acting twice."""
    n = g1.n
    rng = stream_rng(seed, "homomorphism-samples")
    args = sample_slot_arguments(rng, n, p, samples)
    return _sup_difference(rep_action(lam, p, g1 @ g2, s),
                           rep_action(lam, p, g1, rep_action(lam, p, g2, s)),
                           args)


def unitarity_defect(lam: complex, g: GroupElement, f: BoundarySection,
                     quad) -> float:
    """Norm drift of a purely oscillatory weight under quadrature.

    For Re(lam) = 0 the weighted action preserves the quadrature norm
    of degree-0 sections up to the quadrature error of the transformed
    integrand.
    """
    if abs(lam.real if isinstance(lam, complex) else float(lam)) > 1e-14:
        raise InvariantViolation("unitarity requires a purely imaginary lam")
    acted = rep_action(lam, 0, g, f)
    before = quad.integrate(np.array([abs(f(b)) ** 2 for b in quad.nodes()]))
    after = quad.integrate(np.array([abs(acted(b)) ** 2
                                     for b in quad.nodes()]))
    return abs(after - before)


def slot_defects(s: BoundarySection, rng: np.random.Generator, n: int,
                 samples: int = 10) -> tuple[float, float]:
    """(antisymmetry, multilinearity) residuals on seeded slot data."""
    if s.p == 0:
        return 0.0, 0.0
    anti = 0.0
    multi = 0.0
    for _ in range(samples):
        b = random_boundary_point(rng, n)

        def tangent():
            raw = rng.normal(size=n + 1)
            return TangentVector(b, raw - (raw @ b.b) * b.b)

        ws = [tangent() for _ in range(s.p)]
        if s.p >= 2:
            swapped = list(ws)
            swapped[0], swapped[1] = swapped[1], swapped[0]
            anti = max(anti, abs(s(b, *ws) + s(b, *swapped)))
        u, v = tangent(), tangent()
        c = float(rng.normal())
        combo = TangentVector(b, c * u.w + v.w)
        rest = ws[1:]
        lhs = s(b, combo, *rest)
        rhs = c * s(b, u, *rest) + s(b, v, *rest)
        multi = max(multi, abs(lhs - rhs))
    return anti, multi


# ---------------------------------------------------------------------------
# test section families
# ---------------------------------------------------------------------------

_HARMONICS = {
    (0, 0): lambda c: 1.0,
    (1, -1): lambda c: c[1],
    (1, 0): lambda c: c[2],
    (1, 1): lambda c: c[0],
    (2, -2): lambda c: c[0] * c[1],
    (2, -1): lambda c: c[1] * c[2],
    (2, 0): lambda c: 3.0 * c[2] ** 2 - 1.0,
    (2, 1): lambda c: c[0] * c[2],
    (2, 2): lambda c: c[0] ** 2 - c[1] ** 2,
}


def make_section(n: int, descriptor: str) -> BoundarySection:
    """Build a named closed-form section.

    Supported descriptors:
      ``one``                   constant scalar 1
      ``coordinate:i``          the i-th ambient coordinate (degree 0)
      ``exp-coordinate:i``      exp of the i-th coordinate (degree 0)
      ``bump:i,width``          exp((b_i - 1)/width), concentrated near
                                the i-th coordinate pole (degree 0)
      ``harmonic:l,m``          spherical harmonic on the 2-sphere, l <= 2
      ``coordinate-form:i``     the 1-form  w -> w_i
      ``coordinate-form:i,j``   the 2-form  (w1,w2) -> w1_i w2_j - w1_j w2_i
    """
    head, _, tail = descriptor.partition(":")
    head = head.strip()
    if head == "one":
        return BoundarySection(0, lambda b: 1.0, name="one")
    if head == "coordinate":
        i = int(tail)
        _check_axis(i, n)
        return BoundarySection(0, lambda b: b.b[i], name=descriptor)
    if head == "exp-coordinate":
        i = int(tail)
        _check_axis(i, n)
        return BoundarySection(0, lambda b: np.exp(b.b[i]), name=descriptor)
    if head == "bump":
        parts = tail.split(",")
        i = int(parts[0])
        width = float(parts[1]) if len(parts) > 1 else 0.5
        _check_axis(i, n)
        if width <= 0:
            raise ValueError("bump width must be positive")
        return BoundarySection(
            0, lambda b: np.exp((b.b[i] - 1.0) / width), name=descriptor)
    if head == "harmonic":
        if n != 2:
            raise ValueError("harmonic sections are defined on the 2-sphere")
        ell, m = (int(x) for x in tail.split(","))
        try:
            fn = _HARMONICS[(ell, m)]
        except KeyError:
            raise ValueError(f"no tabulated harmonic ({ell},{m})") from None
        return BoundarySection(0, lambda b: fn(b.b), name=descriptor)
    if head == "coordinate-form":
        idx = [int(x) for x in tail.split(",")]
        for i in idx:
            _check_axis(i, n)
        if len(idx) == 1:
            i = idx[0]
            return BoundarySection(1, lambda b, w: w.w[i], name=descriptor)
        if len(idx) == 2:
            i, j = idx
            return BoundarySection(
                2,
                lambda b, w1, w2: w1.w[i] * w2.w[j] - w1.w[j] * w2.w[i],
                name=descriptor,
            )
        raise ValueError("coordinate-form takes one or two indices")
    raise ValueError(f"unknown section descriptor {descriptor!r}")


def _check_axis(i: int, n: int) -> None:
    if not 0 <= i <= n:
        raise ValueError(f"coordinate index {i} out of range for n={n}")


def random_section(rng: np.random.Generator, n: int, p: int,
                   terms: int = 2) -> BoundarySection:
    """A seeded smooth p-form with exactly multilinear slots.

    Degree 0: a quadratic polynomial in the ambient coordinates plus a
    soft exponential of a linear form.  Higher degree: polynomials
    multiplying wedge products of constant ambient covectors, so slot
    antisymmetry and multilinearity hold to machine precision.
    """
    if p > n:
        raise InvariantViolation(f"no {p}-forms on a sphere of dimension {n}")

    def scalar_factory():
        c0 = float(rng.normal())
        a = rng.normal(size=n + 1)
        q = rng.normal(size=(n + 1, n + 1)) / (n + 1)
        e = rng.normal(size=n + 1) * 0.5

        def phi(b):
            x = b.b
            return c0 + a @ x + x @ q @ x + np.exp(e @ x)

        return phi

    if p == 0:
        phi = scalar_factory()
        return BoundarySection(0, lambda b: phi(b), name="random-scalar")

    shapes = [scalar_factory() for _ in range(terms)]
    covs = rng.normal(size=(terms, p, n + 1))

    def ev(b, *ws):
        total = 0.0
        for r in range(terms):
            if p == 1:
                slot = covs[r, 0] @ ws[0].w
            else:
                u0 = covs[r, 0] @ ws[0].w
                v0 = covs[r, 1] @ ws[0].w
                u1 = covs[r, 0] @ ws[1].w
                v1 = covs[r, 1] @ ws[1].w
                slot = u0 * v1 - u1 * v0
            total += shapes[r](b) * slot
        return total

    return BoundarySection(p, ev, name=f"random-{p}-form")
