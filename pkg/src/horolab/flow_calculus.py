"""Geodesic flow on cosets, derivatives of equivariant sections, and the
stable-direction derivative operator.

Sections here live upstairs: they are callables on group elements whose
values sit in tensor powers of the raising/lowering covectors, written
in the orthonormal slot basis.  Right rotation of the argument rotates
all slots simultaneously; that equivariance is what makes the M-coset
quantities below well defined.

Derivatives are taken by symmetric finite differences of one-parameter
translates, so every operator in this module works for any closed-form
section without symbolic machinery.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable

import numpy as np

from .config import DEFAULTS
from .lie_core import (
    AlgebraElement,
    BruhatComponents,
    GroupElement,
    InvariantViolation,
    boost_matrix,
    embed,
    group_exp,
    standard_basis,
)
from .sampling import random_m_element, stream_rng

__all__ = [
    "EquivariantSection",
    "FlowPoint",
    "ModelTangent",
    "SectionSpace",
    "a_eigenfamily",
    "commutation_defect",
    "covariant_derivative",
    "equivariance_defect",
    "flow_derivative",
    "form_space",
    "geodesic_flow",
    "horocycle_minus",
    "horocycle_output_space",
    "horocycle_section",
    "identity_pair_section",
    "lie_derivative_flow",
    "matrix_coefficient_section",
    "mixed_space",
    "model_direction",
    "nminus_flat_scalar",
    "random_smooth_section",
    "rotate_slots",
    "scalar_space",
    "tensor_split",
]


# ---------------------------------------------------------------------------
# points, tangents, flow
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FlowPoint:
    """A point of the unit tangent picture: the coset g modulo spatial
    rotations."""

    g: GroupElement

    @property
    def n(self) -> int:
        return self.g.n

    def signature(self) -> np.ndarray:
        """The two matrix columns every representative of the coset shares.

        Right multiplication by a spatial rotation mixes the first n
        columns only, so these two columns identify the coset exactly.
        """
        n = self.g.n
        return np.array(self.g.mat[:, n:])

    def distance_to(self, other: "FlowPoint") -> float:
        return float(np.max(np.abs(self.signature() - other.signature())))


def geodesic_flow(t: float, x: FlowPoint) -> FlowPoint:
    """Right translation by the boost of parameter t."""
    t = float(t)
    if abs(t) > DEFAULTS.scale_cap:
        raise InvariantViolation(f"flow time {t} exceeds the scale cap")
    return FlowPoint(x.g @ boost_matrix(t, x.n))


@dataclass(frozen=True)
class ModelTangent:
    """A tangent vector in flow coordinates: base coset plus a direction
    with no rotational part."""

    g: GroupElement
    v: BruhatComponents

    def __post_init__(self):
        if self.v.n != self.g.n:
            raise InvariantViolation("direction dimension mismatch")
        if np.max(np.abs(np.asarray(self.v.m_part))) > 1e-12:
            raise InvariantViolation(
                "model tangents carry no rotational component"
            )


def model_direction(n: int, a_part: float = 0.0, nplus=None,
                    nminus=None) -> BruhatComponents:
    """Convenience constructor for rotation-free directions."""
    return BruhatComponents(
        m_part=np.zeros((n, n)),
        a_part=float(a_part),
        nplus=np.zeros(n) if nplus is None else np.asarray(nplus, float),
        nminus=np.zeros(n) if nminus is None else np.asarray(nminus, float),
        n=n,
    )


def flow_derivative(t: float, vt: ModelTangent) -> ModelTangent:
    """Pushforward of a model tangent under the time-t flow.

    The raising component contracts by e^{-t}, the lowering component
    expands by e^{t}, and the boost component rides along unchanged.
    """
    t = float(t)
    if abs(t) > DEFAULTS.scale_cap:
        raise InvariantViolation(f"flow time {t} exceeds the scale cap")
    n = vt.g.n
    moved = vt.g @ boost_matrix(t, n)
    v = BruhatComponents(
        m_part=np.zeros((n, n)),
        a_part=vt.v.a_part,
        nplus=math.exp(-t) * np.asarray(vt.v.nplus, float),
        nminus=math.exp(t) * np.asarray(vt.v.nminus, float),
        n=n,
    )
    return ModelTangent(moved, v)


# ---------------------------------------------------------------------------
# section spaces and sections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SectionSpace:
    """The slot signature of a section's values.

    ``signs`` records, per tensor slot, whether the slot pairs with
    raising (+1) or lowering (-1) directions; ``wedge`` marks fully
    antisymmetric powers of a single sign.
    """

    signs: tuple
    wedge: bool = False

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if any(s not in (-1, 1) for s in signs):
            raise InvariantViolation("slot signs must be +1 or -1")
        if self.wedge and len(set(signs)) > 1:
            raise InvariantViolation("wedge powers use a single slot sign")
        object.__setattr__(self, "signs", signs)

    @property
    def rank(self) -> int:
        return len(self.signs)

    def describe(self) -> str:
        if not self.signs:
            return "scalar"
        marks = "".join("+" if s == 1 else "-" for s in self.signs)
        return ("wedge" if self.wedge else "tensor") + marks


def scalar_space() -> SectionSpace:
    return SectionSpace(())


def form_space(sign: int, p: int) -> SectionSpace:
    if p == 0:
        return scalar_space()
    return SectionSpace((int(sign),) * p, wedge=True)


def mixed_space(*signs: int) -> SectionSpace:
    return SectionSpace(tuple(signs))


@dataclass(frozen=True)
class EquivariantSection:
    """A section as a function on the group with tensor values.

    ``eval_fn`` maps a GroupElement to a complex array of shape
    (n,) * rank in the orthonormal slot basis (a bare scalar for rank
    zero).  Right rotation of the argument must rotate every slot by
    the same spatial rotation; ``equivariance_defect`` measures this.
    """

    space: SectionSpace
    eval_fn: Callable
    name: str = field(default="", compare=False)

    def __call__(self, g: GroupElement) -> np.ndarray:
        value = np.asarray(self.eval_fn(g), dtype=complex)
        expected = (g.n,) * self.space.rank
        if value.shape != expected:
            raise InvariantViolation(
                f"section value has shape {value.shape}, expected {expected}"
            )
        return value


def rotate_slots(value: np.ndarray, R: np.ndarray) -> np.ndarray:
    """Apply the same slot rotation to every tensor index."""
    value = np.asarray(value, dtype=complex)
    for _ in range(value.ndim):
        value = np.tensordot(value, R, axes=([0], [0]))
    return value


def equivariance_defect(u: EquivariantSection, g: GroupElement,
                        rng: np.random.Generator, samples: int = 5) -> float:
    """Max deviation from the slot-rotation law on seeded rotations."""
    n = g.n
    base = u(g)
    worst = 0.0
    for _ in range(samples):
        m = random_m_element(rng, n)
        rotated = rotate_slots(base, m.mat[:n, :n])
        worst = max(worst, float(np.max(np.abs(u(g @ m) - rotated))))
    return worst


# ---------------------------------------------------------------------------
# derivatives
# ---------------------------------------------------------------------------

def _direction_element(direction, n: int) -> AlgebraElement:
    if isinstance(direction, AlgebraElement):
        if abs(np.max(np.abs(direction.mat[:n, :n]))) > 1e-12:
            raise InvariantViolation("derivative directions carry no "
                                     "rotational component")
        return direction
    if isinstance(direction, BruhatComponents):
        if np.max(np.abs(np.asarray(direction.m_part))) > 1e-12:
            raise InvariantViolation("derivative directions carry no "
                                     "rotational component")
        return direction.reassemble()
    raise TypeError("direction must be BruhatComponents or AlgebraElement")


def covariant_derivative(u: EquivariantSection, direction, g: GroupElement,
                         step: float | None = None) -> np.ndarray:
    """Symmetric difference quotient along a one-parameter translate."""
    h = DEFAULTS.fd_step if step is None else float(step)
    X = _direction_element(direction, g.n)
    plus = u(g @ group_exp(h * X))
    minus = u(g @ group_exp(-h * X))
    return (plus - minus) / (2.0 * h)


def lie_derivative_flow(u: EquivariantSection, g: GroupElement,
                        step: float | None = None) -> np.ndarray:
    """Derivative along the geodesic flow of the flowed-and-rescaled
    section.

    For wedge powers of sign sigma and degree p the flow pullback
    rescales values by e^{-sigma p t}; differentiating that family at
    t = 0 shifts the plain boost derivative by -sigma*p times the
    identity.
    """
    space = u.space
    if space.rank > 0 and not space.wedge:
        raise InvariantViolation(
            "flow Lie derivative is defined on wedge-power sections"
        )
    p = space.rank
    sigma = space.signs[0] if p else 1
    h = DEFAULTS.fd_step if step is None else float(step)
    basis = standard_basis(g.n)
    plus = u(g @ group_exp(h * basis.h0))
    minus = u(g @ group_exp(-h * basis.h0))
    shift = sigma * p * h
    return (math.exp(-shift) * plus - math.exp(shift) * minus) / (2.0 * h)


def horocycle_output_space(space: SectionSpace) -> SectionSpace:
    return SectionSpace(space.signs + (-1,), wedge=False)


def horocycle_minus(u: EquivariantSection, g: GroupElement,
                    step: float | None = None) -> np.ndarray:
    """Stack of lowering-direction covariant derivatives.

    The new slot (last axis) runs over the orthonormal lowering basis,
    so the output is a value of the section space tensored with one
    extra lowering slot.
    """
    basis = standard_basis(g.n)
    columns = [covariant_derivative(u, d, g, step) for d in basis.uminus]
    return np.stack(columns, axis=-1)


def horocycle_section(u: EquivariantSection,
                      step: float | None = None) -> EquivariantSection:
    return EquivariantSection(
        horocycle_output_space(u.space),
        lambda g: horocycle_minus(u, g, step),
        name=f"stable-derivative({u.name})",
    )


def commutation_defect(u: EquivariantSection, g: GroupElement,
                       step: float | None = None,
                       orientation: int = 1) -> float:
    """Residual of the exchange rule between the flow derivative and the
    stable-direction operator.

    Applying the stable-direction operator after the boost derivative,
    minus the reverse order, reproduces the stable-direction operator
    itself; the residual of that identity is returned as a max-norm.
    ``orientation=-1`` evaluates the relation with the commutator
    reversed and should come out far from zero on generic sections; it
    exists purely as a negative control.
    """
    h = DEFAULTS.fd_step_nested if step is None else float(step)
    basis = standard_basis(g.n)

    flowed = EquivariantSection(
        u.space,
        lambda gg: covariant_derivative(u, basis.h0, gg, h),
        name=f"boost-derivative({u.name})",
    )
    stable_of_flowed = horocycle_minus(flowed, g, h)
    flowed_of_stable = covariant_derivative(horocycle_section(u, h),
                                            basis.h0, g, h)
    stable = horocycle_minus(u, g, h)
    residual = orientation * (stable_of_flowed - flowed_of_stable) - stable
    return float(np.max(np.abs(residual)))


def tensor_split(T: np.ndarray):
    """Split a two-slot value into trace-free symmetric, antisymmetric,
    and pure-trace parts (an exact direct sum)."""
    T = np.asarray(T)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise InvariantViolation("tensor_split expects a square matrix")
    n = T.shape[0]
    antisym = (T - T.T) / 2.0
    trace_part = (np.trace(T) / n) * np.eye(n)
    sym0 = (T + T.T) / 2.0 - trace_part
    return sym0, antisym, trace_part


# ---------------------------------------------------------------------------
# closed-form section families
# ---------------------------------------------------------------------------

def _null_axis(sign: int, n: int) -> np.ndarray:
    z = np.zeros(n + 2)
    z[n] = 1.0
    z[n + 1] = float(sign)
    return z


def _slot_values(gmat: np.ndarray, ginv: np.ndarray, a: np.ndarray,
                 c: np.ndarray, sign: int, n: int) -> np.ndarray:
    """The covector of one slot family in the orthonormal basis.

    Built from the pairing a . g Y g^{-1} c over slot directions Y; the
    conjugation makes right rotation of g rotate the covector and right
    boosts scale it by e^{sign * t} exactly.
    """
    alpha = gmat.T @ a
    gamma = ginv @ c
    lead = gamma[n] - sign * gamma[n + 1]
    tail = alpha[n] + sign * alpha[n + 1]
    return 0.5 * (lead * alpha[:n] - tail * gamma[:n])


def _alternate(tensors: list[np.ndarray]) -> np.ndarray:
    """Antisymmetrized outer product of slot covectors."""
    p = len(tensors)
    total = None
    for perm in permutations(range(p)):
        parity = 1.0
        seen = list(perm)
        for i in range(p):
            for j in range(i + 1, p):
                if seen[i] > seen[j]:
                    parity = -parity
        term = tensors[perm[0]]
        for idx in perm[1:]:
            term = np.multiply.outer(term, tensors[idx])
        total = parity * term if total is None else total + parity * term
    return total / math.factorial(p)


def _invariant_features(rng: np.random.Generator, n: int, count: int = 2):
    """Smooth scalars of g unchanged by right rotation of g.

    Each feature pairs a fixed ambient covector with the image of one
    of the rotation-fixed null axes, so only the boost and unipotent
    parts of g enter.
    """
    probes = rng.normal(size=(count, n + 2))
    axes = [_null_axis(-1, n), _null_axis(1, n)]

    def features(gmat: np.ndarray) -> np.ndarray:
        return np.array([probes[i] @ (gmat @ axes[i % 2])
                         for i in range(count)])

    return features


def _smooth_shaping(rng: np.random.Generator, n: int):
    feats = _invariant_features(rng, n, 2)
    c0 = float(rng.normal())
    c1, c2 = 0.5 * rng.normal(), 0.4 * rng.normal()

    def phi(gmat: np.ndarray) -> float:
        f = feats(gmat)
        return c0 + c1 * math.sin(f[0]) + c2 * math.tanh(0.5 * f[1])

    return phi


def matrix_coefficient_section(space: SectionSpace,
                               rng: np.random.Generator, n: int,
                               terms: int = 2,
                               shaped: bool = True) -> EquivariantSection:
    """A seeded smooth section built from matrix-coefficient covectors.

    Each term multiplies an (optionally shaped) invariant scalar by an
    outer product of slot covectors, antisymmetrized on wedge spaces.
    """
    rank = space.rank
    if rank == 0:
        phi = _smooth_shaping(rng, n)
        return EquivariantSection(space, lambda g: phi(g.mat),
                                  name="coefficient-scalar")

    probes = rng.normal(size=(terms, rank, 2, n + 2))
    shapes = [_smooth_shaping(rng, n) if shaped else (lambda _: 1.0)
              for _ in range(terms)]

    def ev(g: GroupElement) -> np.ndarray:
        gmat = g.mat
        ginv = g.inverse_mat()
        total = np.zeros((n,) * rank)
        for r in range(terms):
            covs = [
                _slot_values(gmat, ginv, probes[r, s, 0], probes[r, s, 1],
                             space.signs[s], n)
                for s in range(rank)
            ]
            if space.wedge and rank > 1:
                block = _alternate(covs)
            else:
                block = covs[0]
                for cov in covs[1:]:
                    block = np.multiply.outer(block, cov)
            total = total + shapes[r](gmat) * block
        return total

    return EquivariantSection(space, ev,
                              name=f"coefficient-{space.describe()}")


def _lowering_gauge(gmat: np.ndarray, n: int) -> float:
    """Positive scalar with exact unit boost weight: minus the last
    coordinate of g applied to the lowering null axis."""
    value = -float((gmat @ _null_axis(-1, n))[-1])
    if value <= 0.0:
        raise InvariantViolation("group element left the gauge domain")
    return value


def a_eigenfamily(space: SectionSpace, rng: np.random.Generator, n: int,
                  beta: float | None = None):
    """A section with exact exponential behavior along boosts.

    Returns (section, nu) with section(g . boost(t)) = e^{nu t} section(g)
    exactly: each slot contributes its sign to nu and the scalar gauge
    factor contributes -beta.
    """
    if beta is None:
        beta = round(float(rng.uniform(-1.5, 1.5)), 3)
    rank = space.rank
    probes = rng.normal(size=(max(rank, 1), 2, n + 2))

    def ev(g: GroupElement):
        gmat = g.mat
        gauge = _lowering_gauge(gmat, n) ** beta
        if rank == 0:
            return gauge
        ginv = g.inverse_mat()
        covs = [
            _slot_values(gmat, ginv, probes[s, 0], probes[s, 1],
                         space.signs[s], n)
            for s in range(rank)
        ]
        if space.wedge and rank > 1:
            block = _alternate(covs)
        else:
            block = covs[0]
            for cov in covs[1:]:
                block = np.multiply.outer(block, cov)
        return gauge * block

    nu = float(sum(space.signs)) - beta
    section = EquivariantSection(space, ev,
                                 name=f"eigenfamily({space.describe()})")
    return section, nu


def nminus_flat_scalar(rng: np.random.Generator, n: int) -> EquivariantSection:
    """A scalar section annihilated by every lowering derivative.

    It depends on g only through g applied to the lowering null axis,
    which unipotent lowering factors fix; all stable-direction
    difference quotients vanish to roundoff.
    """
    probes = rng.normal(size=(2, n + 2))
    axis = _null_axis(-1, n)

    def ev(g: GroupElement) -> float:
        image = g.mat @ axis
        f1, f2 = probes[0] @ image, probes[1] @ image
        return math.sin(f1) + 0.5 * math.cos(f2) + 0.1 * f1 * f2

    return EquivariantSection(scalar_space(), ev, name="lowering-flat")


def identity_pair_section(rng: np.random.Generator, n: int) -> EquivariantSection:
    """Shaped multiple of the invariant pairing on two lowering slots."""
    phi = _smooth_shaping(rng, n)
    space = mixed_space(-1, -1)
    return EquivariantSection(space,
                              lambda g: phi(g.mat) * np.eye(n),
                              name="shaped-identity-pair")


def random_smooth_section(rng: np.random.Generator, n: int,
                          space: SectionSpace) -> EquivariantSection:
    """Default generic smooth section used by seeded defect sweeps."""
    return matrix_coefficient_section(space, rng, n, terms=2, shaped=True)
