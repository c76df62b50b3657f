"""Structured matrix model of the Lorentz algebra so(n+1,1) and its group.

Conventions used throughout the package:

* Matrices are real of size (n+2) x (n+2).  Coordinates 0..n-1 (0-based)
  span the spatial block acted on by the rotation subgroup M, coordinate
  n is the pole axis of the compact factor, and coordinate n+1 is the
  Minkowski time axis.
* The quadratic form is J = diag(1, ..., 1, -1).  The algebra consists
  of matrices with X^T J + J X = 0, the group of matrices with
  g^T J g = J, det g = 1, and g[-1, -1] >= 1 (identity component).
* ``a`` is the span of the generator with a single symmetric pair of
  ones in the (pole, time) corner; the raising/lowering spaces
  ``nplus`` / ``nminus`` consist of the nilpotent matrices built from a
  vector v (see :func:`embed`) and satisfy [H0, N] = +N resp. -N.
* Group inverses are J g^T J, which is exact on the group and is used
  everywhere instead of numerical inversion.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple

import numpy as np
from scipy.linalg import expm as _dense_expm

from .config import DEFAULTS

__all__ = [
    "AlgebraElement",
    "BruhatComponents",
    "GroupElement",
    "InvariantViolation",
    "Pairings",
    "StandardBasis",
    "adjoint",
    "boost_matrix",
    "bracket",
    "bruhat_project",
    "cartan_involution",
    "check_group_membership",
    "embed",
    "group_commutator",
    "group_exp",
    "inner_product",
    "iwasawa_algebra_project",
    "killing_form",
    "membership_defect",
    "metric_matrix",
    "mperp_vector",
    "normalize_sign",
    "pairings",
    "rotation_element",
    "rotation_to_pole",
    "spatial_rotation_element",
    "standard_basis",
]


class InvariantViolation(ValueError):
    """A structural matrix invariant failed beyond its tolerance."""


def metric_matrix(n: int) -> np.ndarray:
    """The quadratic form J = diag(1, ..., 1, -1) of size (n+2)."""
    J = np.eye(n + 2)
    J[-1, -1] = -1.0
    return J


def normalize_sign(sign) -> int:
    """Map {+1, -1, '+', '-'} onto the integers +1 / -1."""
    if sign in (1, +1):
        return 1
    if sign == -1:
        return -1
    if isinstance(sign, str):
        s = sign.strip()
        if s in ("+", "+1", "plus"):
            return 1
        if s in ("-", "-1", "minus"):
            return -1
    raise ValueError(f"sign must be +1 or -1 (or '+'/'-'), got {sign!r}")


def _coerce_square(mat, n: int | None) -> tuple[np.ndarray, int]:
    arr = np.array(mat, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvariantViolation(f"expected a square matrix, got shape {arr.shape}")
    size = arr.shape[0]
    if size < 3:
        raise InvariantViolation("matrices must be at least 3x3 (n >= 1)")
    if n is None:
        n = size - 2
    elif size != n + 2:
        raise InvariantViolation(f"matrix size {size} does not match n={n}")
    if not np.all(np.isfinite(arr)):
        raise InvariantViolation("matrix contains non-finite entries")
    return arr, n


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """An element of so(n+1,1): X with X^T J + J X = 0."""

    mat: np.ndarray
    n: int

    def __post_init__(self):
        arr, n = _coerce_square(self.mat, self.n)
        J = metric_matrix(n)
        defect = np.max(np.abs(arr.T @ J + J @ arr))
        scale = max(1.0, float(np.max(np.abs(arr))))
        if defect > DEFAULTS.algebra_skew * scale:
            raise InvariantViolation(
                f"algebra invariant X^T J + J X = 0 violated: defect {defect:.3e}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "mat", arr)
        object.__setattr__(self, "n", n)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_same(other)
        return AlgebraElement(self.mat + other.mat, self.n)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_same(other)
        return AlgebraElement(self.mat - other.mat, self.n)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(-self.mat, self.n)

    def __mul__(self, scalar: float) -> "AlgebraElement":
        return AlgebraElement(float(scalar) * self.mat, self.n)

    __rmul__ = __mul__

    def norm(self) -> float:
        """Frobenius norm of the matrix."""
        return float(np.linalg.norm(self.mat))

    def _check_same(self, other: "AlgebraElement") -> None:
        if self.n != other.n:
            raise InvariantViolation(
                f"dimension mismatch: n={self.n} vs n={other.n}"
            )

    @classmethod
    def zero(cls, n: int) -> "AlgebraElement":
        return cls(np.zeros((n + 2, n + 2)), n)


def membership_defect(mat: np.ndarray) -> float:
    """Scaled residual of the J-orthogonality relation g^T J g = J."""
    arr = np.asarray(mat, dtype=float)
    n = arr.shape[0] - 2
    J = metric_matrix(n)
    raw = np.max(np.abs(arr.T @ J @ arr - J))
    scale = max(1.0, float(np.max(np.abs(arr))) ** 2)
    return float(raw / scale)


@dataclass(frozen=True, eq=False)
class GroupElement:
    """An element of the identity component of SO(n+1,1)."""

    mat: np.ndarray
    n: int

    def __post_init__(self):
        arr, n = _coerce_square(self.mat, self.n)
        defect = membership_defect(arr)
        if defect > DEFAULTS.group_membership:
            raise InvariantViolation(
                f"group invariant g^T J g = J violated: scaled defect {defect:.3e}"
            )
        # J-orthogonality already forces det^2 = 1 (to its own scaled
        # tolerance); the determinant only selects the orientation
        # component, so test it against the 2.0-wide gap, not roundoff.
        det = float(np.linalg.det(arr))
        if det < 0.5:
            raise InvariantViolation(
                f"det(g) = {det!r}: not orientation preserving")
        if arr[-1, -1] < 1.0 - DEFAULTS.component_slack:
            raise InvariantViolation(
                f"g[-1,-1] = {arr[-1, -1]!r} < 1: not in the identity component"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "mat", arr)
        object.__setattr__(self, "n", n)

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        return cls(np.eye(n + 2), n)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        if self.n != other.n:
            raise InvariantViolation(
                f"dimension mismatch: n={self.n} vs n={other.n}"
            )
        return GroupElement(self.mat @ other.mat, self.n)

    def inverse(self) -> "GroupElement":
        """J g^T J, the exact inverse on the group."""
        return GroupElement(self.inverse_mat(), self.n)

    def inverse_mat(self) -> np.ndarray:
        J = metric_matrix(self.n)
        return J @ self.mat.T @ J

    def apply(self, vec: np.ndarray) -> np.ndarray:
        return self.mat @ np.asarray(vec, dtype=float)


def check_group_membership(mat) -> GroupElement:
    """Validate a raw matrix as a group element, with diagnostic errors."""
    arr, n = _coerce_square(mat, None)
    defect = membership_defect(arr)
    if defect > DEFAULTS.group_membership:
        raise InvariantViolation(
            f"J-orthogonality residual {defect:.3e} exceeds "
            f"{DEFAULTS.group_membership:.1e}"
        )
    det = float(np.linalg.det(arr))
    if abs(det - 1.0) > DEFAULTS.group_membership * max(1.0, abs(det)):
        raise InvariantViolation(f"determinant {det!r} differs from 1")
    if arr[-1, -1] < 1.0 - DEFAULTS.component_slack:
        raise InvariantViolation(
            f"wrong component: last diagonal entry {arr[-1, -1]!r} < 1"
        )
    return GroupElement(arr, n)


# ---------------------------------------------------------------------------
# embeddings of the structural subspaces
# ---------------------------------------------------------------------------

def _skew_check(arr: np.ndarray, what: str) -> None:
    defect = np.max(np.abs(arr + arr.T))
    scale = max(1.0, float(np.max(np.abs(arr))))
    if defect > DEFAULTS.payload_skew * scale:
        raise InvariantViolation(f"{what} payload is not skew-symmetric "
                                 f"(defect {defect:.3e})")


def embed(component: str, payload, n: int | None = None) -> AlgebraElement:
    """Build the algebra element with the exact block pattern of a subspace.

    component:
      * ``"a"``      -- payload is a scalar t; t times the generator with
                        ones at (n, n+1) and (n+1, n).
      * ``"nplus"``  -- payload v in R^n; columns (v, -v) in the last two
                        slots, rows (-v^T, -v^T).
      * ``"nminus"`` -- payload v in R^n; columns (v, +v), rows
                        (-v^T, +v^T).
      * ``"m"``      -- payload is an n x n skew matrix in the spatial
                        block.
      * ``"k"``      -- payload is an (n+1) x (n+1) skew matrix (the
                        compact subalgebra).
      * ``"p"``      -- payload q in R^{n+1}; symmetric pair in the last
                        column/row.
      * ``"mperp"``  -- payload v in R^n; the orthogonal complement of
                        the m-block inside k (equals the sum of the two
                        nilpotent embeddings of v/2).
    """
    if component == "a":
        t = float(payload)
        if n is None:
            raise ValueError("embed('a', t) requires n")
        X = np.zeros((n + 2, n + 2))
        X[n, n + 1] = t
        X[n + 1, n] = t
        return AlgebraElement(X, n)

    if component in ("nplus", "nminus"):
        v = np.atleast_1d(np.asarray(payload, dtype=float))
        if v.ndim != 1:
            raise InvariantViolation(f"{component} payload must be a vector")
        if n is None:
            n = v.size
        elif v.size != n:
            raise InvariantViolation(f"{component} payload has size {v.size}, "
                                     f"expected {n}")
        sigma = 1 if component == "nplus" else -1
        X = np.zeros((n + 2, n + 2))
        X[:n, n] = v
        X[:n, n + 1] = -sigma * v
        X[n, :n] = -v
        X[n + 1, :n] = -sigma * v
        return AlgebraElement(X, n)

    if component == "m":
        k = np.asarray(payload, dtype=float)
        if k.ndim != 2 or k.shape[0] != k.shape[1]:
            raise InvariantViolation("m payload must be a square matrix")
        if n is None:
            n = k.shape[0]
        elif k.shape[0] != n:
            raise InvariantViolation(f"m payload is {k.shape[0]}x{k.shape[0]}, "
                                     f"expected {n}x{n}")
        _skew_check(k, "m")
        X = np.zeros((n + 2, n + 2))
        X[:n, :n] = k
        return AlgebraElement(X, n)

    if component == "k":
        kk = np.asarray(payload, dtype=float)
        if kk.ndim != 2 or kk.shape[0] != kk.shape[1]:
            raise InvariantViolation("k payload must be a square matrix")
        if n is None:
            n = kk.shape[0] - 1
        elif kk.shape[0] != n + 1:
            raise InvariantViolation(f"k payload is {kk.shape[0]} wide, "
                                     f"expected {n + 1}")
        _skew_check(kk, "k")
        X = np.zeros((n + 2, n + 2))
        X[: n + 1, : n + 1] = kk
        return AlgebraElement(X, n)

    if component == "p":
        q = np.atleast_1d(np.asarray(payload, dtype=float))
        if n is None:
            n = q.size - 1
        elif q.size != n + 1:
            raise InvariantViolation(f"p payload has size {q.size}, "
                                     f"expected {n + 1}")
        X = np.zeros((n + 2, n + 2))
        X[: n + 1, n + 1] = q
        X[n + 1, : n + 1] = q
        return AlgebraElement(X, n)

    if component == "mperp":
        v = np.atleast_1d(np.asarray(payload, dtype=float))
        if n is None:
            n = v.size
        elif v.size != n:
            raise InvariantViolation(f"mperp payload has size {v.size}, "
                                     f"expected {n}")
        X = np.zeros((n + 2, n + 2))
        X[:n, n] = v
        X[n, :n] = -v
        return AlgebraElement(X, n)

    raise ValueError(f"unknown component {component!r}")


def mperp_vector(X: AlgebraElement) -> np.ndarray:
    """Extract v from a k-element modulo its m-block.

    For any element of the compact subalgebra, the component orthogonal
    to the m-block is determined by the column above the pole axis.
    """
    return np.array(X.mat[: X.n, X.n])


# ---------------------------------------------------------------------------
# decompositions of the algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BruhatComponents:
    """Coordinates of an algebra element in m + a + nplus + nminus."""

    m_part: np.ndarray
    a_part: float
    nplus: np.ndarray
    nminus: np.ndarray
    n: int

    def reassemble(self) -> AlgebraElement:
        X = embed("m", self.m_part, self.n) \
            + embed("a", self.a_part, self.n) \
            + embed("nplus", self.nplus, self.n) \
            + embed("nminus", self.nminus, self.n)
        return X

    def component_norms(self) -> dict[str, float]:
        return {
            "m": float(np.linalg.norm(self.m_part)),
            "a": abs(self.a_part),
            "nplus": float(np.linalg.norm(self.nplus)),
            "nminus": float(np.linalg.norm(self.nminus)),
        }


def bruhat_project(X: AlgebraElement) -> BruhatComponents:
    """Split X along m + a + nplus + nminus (orthogonal block read-off).

    The raising/lowering vectors come from the two columns next to the
    spatial block: with w = X[:n, n] and q = X[:n, n+1], the matrix of a
    raising element contributes (v, -v) and a lowering element (v, +v),
    so v_plus = (w - q)/2 and v_minus = (w + q)/2.
    """
    n = X.n
    mat = X.mat
    w = mat[:n, n]
    q = mat[:n, n + 1]
    return BruhatComponents(
        m_part=np.array(mat[:n, :n]),
        a_part=float(mat[n, n + 1]),
        nplus=(w - q) / 2.0,
        nminus=(w + q) / 2.0,
        n=n,
    )


def iwasawa_algebra_project(X: AlgebraElement, sign) -> AlgebraElement:
    """Project onto the compact part along a + n^sign.

    Writing X = m + t*H0 + N(v_plus) + N(v_minus), the complementary
    nilpotent component is rewritten through the identity
    N_sigma(u) = mperp(2u) - N_{-sigma}(u), which leaves the k-part
    m + mperp(2 * v_{-sigma}).
    """
    sigma = normalize_sign(sign)
    parts = bruhat_project(X)
    u = parts.nminus if sigma == 1 else parts.nplus
    return embed("m", parts.m_part, X.n) + embed("mperp", 2.0 * u, X.n)


class Pairings(NamedTuple):
    inner: float
    killing: float


def pairings(X: AlgebraElement, Y: AlgebraElement) -> Pairings:
    """The invariant inner product tr(X Y^T) and the Killing form 2n tr(XY)."""
    X._check_same(Y)
    inner = float(np.trace(X.mat @ Y.mat.T))
    killing = float(2 * X.n * np.trace(X.mat @ Y.mat))
    return Pairings(inner=inner, killing=killing)


def inner_product(X: AlgebraElement, Y: AlgebraElement) -> float:
    return pairings(X, Y).inner


def killing_form(X: AlgebraElement, Y: AlgebraElement) -> float:
    return pairings(X, Y).killing


def bracket(X: AlgebraElement, Y: AlgebraElement) -> AlgebraElement:
    """Matrix commutator XY - YX."""
    X._check_same(Y)
    return AlgebraElement(X.mat @ Y.mat - Y.mat @ X.mat, X.n)


def cartan_involution(X: AlgebraElement) -> AlgebraElement:
    """theta(X) = -X^T: fixes the compact part, negates the symmetric part."""
    return AlgebraElement(-X.mat.T, X.n)


# ---------------------------------------------------------------------------
# exponential and adjoint
# ---------------------------------------------------------------------------

def _pure_nilpotent_sign(X: AlgebraElement) -> int | None:
    """Detect by exact block pattern whether X lies in one of n+-."""
    parts = bruhat_project(X)
    if np.any(parts.m_part != 0.0) or parts.a_part != 0.0:
        return None
    plus_zero = not np.any(parts.nplus != 0.0)
    minus_zero = not np.any(parts.nminus != 0.0)
    if minus_zero and not plus_zero:
        return 1
    if plus_zero and not minus_zero:
        return -1
    if plus_zero and minus_zero:
        return 0  # the zero matrix; either branch is exact
    return None


def group_exp(X: AlgebraElement) -> GroupElement:
    """Matrix exponential into the group.

    Elements detected (by exact block pattern) inside a nilpotent
    subspace are exponentiated by the closed-form degree-2 polynomial
    I + N + N^2/2; the cube of such a matrix vanishes identically, also
    in floating point, because its entries are sums of products that
    cancel in exactly matching pairs.  Everything else goes through the
    dense scaling-and-squaring exponential.
    """
    cap = DEFAULTS.scale_cap
    top = float(np.max(np.abs(X.mat)))
    if top > cap:
        raise InvariantViolation(
            f"norm cap exceeded: max |entry| = {top:.3e} > {cap}"
        )
    if _pure_nilpotent_sign(X) is not None:
        N = X.mat
        E = np.eye(X.n + 2) + N + 0.5 * (N @ N)
        return GroupElement(E, X.n)
    return GroupElement(_dense_expm(X.mat), X.n)


def adjoint(g: GroupElement, X: AlgebraElement) -> AlgebraElement:
    """g X g^{-1} with the exact group inverse."""
    if g.n != X.n:
        raise InvariantViolation(f"dimension mismatch: n={g.n} vs n={X.n}")
    return AlgebraElement(g.mat @ X.mat @ g.inverse_mat(), g.n)


def group_commutator(g: GroupElement, h: GroupElement) -> GroupElement:
    return g @ h @ g.inverse() @ h.inverse()


# ---------------------------------------------------------------------------
# distinguished elements and bases
# ---------------------------------------------------------------------------

def boost_matrix(t: float, n: int) -> GroupElement:
    """exp of t times the a-generator, in closed form (cosh/sinh corner)."""
    t = float(t)
    if abs(t) > DEFAULTS.scale_cap:
        raise InvariantViolation(f"|t| = {abs(t):.3e} exceeds the scale cap")
    g = np.eye(n + 2)
    g[n, n] = np.cosh(t)
    g[n, n + 1] = np.sinh(t)
    g[n + 1, n] = np.sinh(t)
    g[n + 1, n + 1] = np.cosh(t)
    return GroupElement(g, n)


def rotation_element(R: np.ndarray) -> GroupElement:
    """Embed an (n+1) x (n+1) rotation as a group element fixing time."""
    R = np.asarray(R, dtype=float)
    n = R.shape[0] - 1
    g = np.eye(n + 2)
    g[: n + 1, : n + 1] = R
    return GroupElement(g, n)


def spatial_rotation_element(R: np.ndarray) -> GroupElement:
    """Embed an n x n rotation as an element of the centralizer M of a."""
    R = np.asarray(R, dtype=float)
    n = R.shape[0]
    g = np.eye(n + 2)
    g[:n, :n] = R
    return GroupElement(g, n)


def rotation_to_pole(b: np.ndarray) -> np.ndarray:
    """A deterministic rotation of R^{n+1} taking the pole axis to b.

    Built from the two-reflection formula
    F(a -> b) = I + 2 b a^T - (a+b)(a+b)^T / (1 + a.b), which is a
    rotation mapping a to b whenever a.b > -1.  Near the antipode the
    map is composed with a fixed half-turn in the (0, n) coordinate
    plane so the construction stays well-conditioned on the whole
    sphere; at b = -pole it returns that half-turn exactly.
    """
    b = np.asarray(b, dtype=float)
    d = b.size            # d = n + 1
    norm = float(np.linalg.norm(b))
    if abs(norm - 1.0) > DEFAULTS.unit_vector * 10:
        raise InvariantViolation(f"|b| = {norm!r} is not 1")
    e = np.zeros(d)
    e[-1] = 1.0
    c = float(b[-1])

    def two_reflections(a_vec: np.ndarray) -> np.ndarray:
        s = a_vec + b
        return (np.eye(d) + 2.0 * np.outer(b, a_vec)
                - np.outer(s, s) / (1.0 + float(a_vec @ b)))

    if c > -0.9:
        return two_reflections(e)
    half_turn = np.eye(d)
    half_turn[0, 0] = -1.0
    half_turn[-1, -1] = -1.0
    return two_reflections(-e) @ half_turn


@dataclass(frozen=True)
class StandardBasis:
    """The distinguished generator, nilpotent bases, and the dual covector.

    ``uplus`` / ``uminus`` are orthonormal for the invariant inner
    product (each is the nilpotent embedding of half a coordinate
    vector).  ``alpha0`` reads off the a-coefficient, normalized so that
    alpha0(h0) = 1.
    """

    h0: AlgebraElement
    uplus: tuple[AlgebraElement, ...]
    uminus: tuple[AlgebraElement, ...]
    alpha0: Callable[[AlgebraElement], float]
    n: int


def standard_basis(n: int) -> StandardBasis:
    h0 = embed("a", 1.0, n)
    eye = np.eye(n)
    uplus = tuple(embed("nplus", eye[j] / 2.0, n) for j in range(n))
    uminus = tuple(embed("nminus", eye[j] / 2.0, n) for j in range(n))

    def alpha0(X: AlgebraElement) -> float:
        return float(X.mat[n, n + 1])

    return StandardBasis(h0=h0, uplus=uplus, uminus=uminus,
                         alpha0=alpha0, n=n)
