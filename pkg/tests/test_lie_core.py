"""Tests for the matrix Lie algebra and group layer.

Covered here:
  * membership gates for algebra and group elements (scaled, orientation,
    causal component);
  * the exact metric-transpose inverse;
  * block embeddings and their round trip through the four-part split;
  * bracket relations between the distinguished generator and the two
    nilpotent wings, with the cross-wing bracket in closed form;
  * both bilinear pairings, including an independent trace-of-ad oracle
    for the doubled Killing normalization;
  * the Cartan involution and the projection onto the compact part;
  * exponentials (closed-form nilpotent branch against a dense oracle)
    and adjoint conjugation;
  * the deterministic pole-to-point rotation on all of its branches.
"""

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, seed, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from horolab.lie_core import (
    AlgebraElement,
    GroupElement,
    InvariantViolation,
    adjoint,
    boost_matrix,
    bracket,
    bruhat_project,
    cartan_involution,
    embed,
    group_commutator,
    group_exp,
    inner_product,
    iwasawa_algebra_project,
    killing_form,
    membership_defect,
    metric_matrix,
    mperp_vector,
    pairings,
    rotation_element,
    rotation_to_pole,
    spatial_rotation_element,
    standard_basis,
)
from horolab.sampling import (
    random_algebra_element,
    random_group_element,
    random_rotation,
    random_unit_vector,
    stream_rng,
)

DIMS = (1, 2, 3)

EXACT = 1e-14
BRACKET_TOL = 1e-12
PAIRING_TOL = 1e-12
ORACLE_TOL = 1e-9


def random_skew(rng, n):
    raw = rng.normal(size=(n, n))
    return (raw - raw.T) / 2.0


# ---------------------------------------------------------------------------
# membership gates
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", DIMS)
def test_metric_matrix_signature(n):
    J = metric_matrix(n)
    expected = np.diag([1.0] * (n + 1) + [-1.0])
    assert np.array_equal(J, expected)


@pytest.mark.parametrize("n", DIMS)
def test_algebra_element_rejects_non_member(rng, n):
    raw = rng.normal(size=(n + 2, n + 2))
    raw = raw + raw.T + np.eye(n + 2)  # symmetric, far from the algebra
    with pytest.raises(InvariantViolation):
        AlgebraElement(raw, n)


def test_algebra_gate_is_scale_aware(rng):
    X = random_algebra_element(rng, 2)
    big = AlgebraElement(1e8 * X.mat, 2)  # must not trip the skew gate
    assert big.n == 2


@pytest.mark.parametrize("n", DIMS)
def test_group_inverse_is_metric_transpose(rng, n):
    g = random_group_element(rng, n)
    J = metric_matrix(n)
    assert np.array_equal(g.inverse_mat(), J @ g.mat.T @ J)
    # the product defect grows with the square of the element size
    scale = max(1.0, float(np.max(np.abs(g.mat)))) ** 2
    assert np.max(np.abs(g.mat @ g.inverse_mat() - np.eye(n + 2))) \
        <= 1e-13 * scale


def test_group_gate_rejects_non_member():
    bad = np.eye(4)
    bad[0, 0] = 1.1
    assert membership_defect(bad) > 1e-2
    with pytest.raises(InvariantViolation):
        GroupElement(bad, 2)


def test_group_gate_rejects_orientation_reversal():
    flip = np.diag([-1.0, 1.0, 1.0, 1.0])  # metric-orthogonal, det = -1
    with pytest.raises(InvariantViolation):
        GroupElement(flip, 2)


def test_group_gate_rejects_time_reversal():
    rev = np.diag([-1.0, 1.0, 1.0, -1.0])  # det = +1 but past-directed
    with pytest.raises(InvariantViolation):
        GroupElement(rev, 2)


# ---------------------------------------------------------------------------
# embeddings and the four-part split
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", DIMS)
def test_embed_bruhat_roundtrip(rng, n):
    m_part = random_skew(rng, n)
    t = float(rng.normal())
    vp = rng.normal(size=n)
    vm = rng.normal(size=n)
    X = (embed("m", m_part, n) + embed("a", t, n)
         + embed("nplus", vp, n) + embed("nminus", vm, n))
    parts = bruhat_project(X)
    scale = max(1.0, float(np.max(np.abs(X.mat))))
    assert np.array_equal(parts.m_part, m_part)
    assert parts.a_part == t
    assert np.max(np.abs(parts.nplus - vp)) <= 1e-15 * scale
    assert np.max(np.abs(parts.nminus - vm)) <= 1e-15 * scale
    assert np.max(np.abs(parts.reassemble().mat - X.mat)) <= 1e-15 * scale


def test_mperp_embedding_splits_evenly(rng):
    n = 3
    v = rng.normal(size=n)
    X = embed("mperp", v, n)
    parts = bruhat_project(X)
    assert np.allclose(parts.nplus, v / 2.0, atol=EXACT)
    assert np.allclose(parts.nminus, v / 2.0, atol=EXACT)
    assert np.array_equal(mperp_vector(X), parts.nplus + parts.nminus)


def test_embed_rejects_bad_payloads():
    with pytest.raises(InvariantViolation):
        embed("m", np.ones((2, 2)), 2)  # not skew
    with pytest.raises(InvariantViolation):
        embed("nplus", np.zeros(3), 2)  # wrong length
    with pytest.raises(ValueError):
        embed("no-such-block", 1.0, 2)


# ---------------------------------------------------------------------------
# bracket relations
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", DIMS)
@pytest.mark.parametrize("sign", (1, -1))
def test_generator_bracket_scales_wings(rng, n, sign):
    basis = standard_basis(n)
    v = rng.normal(size=n)
    U = embed("nplus" if sign == 1 else "nminus", v, n)
    diff = bracket(basis.h0, U).mat - sign * U.mat
    assert np.max(np.abs(diff)) <= BRACKET_TOL * max(1.0, np.max(np.abs(v)))


@pytest.mark.parametrize("n", (2, 3))
def test_cross_wing_bracket_closed_form(n):
    # [U+_i, U-_j] has compact part (e_j e_i^T - e_i e_j^T)/2 and
    # a-coefficient -delta_ij/2; derived by block multiplication.
    basis = standard_basis(n)
    eye = np.eye(n)
    for i in range(n):
        for j in range(n):
            got = bracket(basis.uplus[i], basis.uminus[j])
            m_part = (np.outer(eye[j], eye[i]) - np.outer(eye[i], eye[j])) / 2.0
            want = embed("m", m_part, n) + embed("a", -0.5 * eye[i, j], n)
            assert np.max(np.abs(got.mat - want.mat)) <= EXACT
            assert abs(basis.alpha0(got) + 0.5 * eye[i, j]) <= EXACT


@pytest.mark.parametrize("n", DIMS)
def test_wings_are_abelian(rng, n):
    for name in ("nplus", "nminus"):
        X = embed(name, rng.normal(size=n), n)
        Y = embed(name, rng.normal(size=n), n)
        assert np.max(np.abs(bracket(X, Y).mat)) <= EXACT


def test_dual_covector_normalization():
    for n in DIMS:
        basis = standard_basis(n)
        assert basis.alpha0(basis.h0) == 1.0
        for U in basis.uplus + basis.uminus:
            assert basis.alpha0(U) == 0.0


@seed(7)
@settings(max_examples=30, deadline=None)
@given(
    a=arrays(np.float64, (4, 4), elements=st.floats(-5, 5)),
    b=arrays(np.float64, (4, 4), elements=st.floats(-5, 5)),
    c=arrays(np.float64, (4, 4), elements=st.floats(-5, 5)),
)
def test_bracket_antisymmetry_and_jacobi(a, b, c):
    J = metric_matrix(2)

    def project(raw):
        return AlgebraElement((raw - J @ raw.T @ J) / 2.0, 2)

    X, Y, Z = project(a), project(b), project(c)
    scale = max(1.0, X.norm()) * max(1.0, Y.norm()) * max(1.0, Z.norm())
    anti = bracket(X, Y).mat + bracket(Y, X).mat
    assert np.max(np.abs(anti)) <= 1e-12 * scale
    jacobi = (bracket(bracket(X, Y), Z).mat
              + bracket(bracket(Y, Z), X).mat
              + bracket(bracket(Z, X), Y).mat)
    assert np.max(np.abs(jacobi)) <= 1e-11 * scale


# ---------------------------------------------------------------------------
# pairings
# ---------------------------------------------------------------------------

def test_pairing_values_on_distinguished_elements():
    for n in DIMS:
        basis = standard_basis(n)
        p = pairings(basis.h0, basis.h0)
        assert abs(p.inner - 2.0) <= EXACT
        assert abs(p.killing - 4.0 * n) <= EXACT
        wings = basis.uplus + basis.uminus
        for i, U in enumerate(wings):
            assert abs(inner_product(U, basis.h0)) <= EXACT
            for j, V in enumerate(wings):
                want = 1.0 if i == j else 0.0
                assert abs(inner_product(U, V) - want) <= EXACT


@pytest.mark.parametrize("n", DIMS)
def test_pairing_consistency_identity(rng, n):
    for _ in range(20):
        X = random_algebra_element(rng, n)
        Y = random_algebra_element(rng, n)
        lhs = inner_product(X, Y)
        rhs = -killing_form(X, cartan_involution(Y)) / (2.0 * n)
        assert abs(lhs - rhs) <= PAIRING_TOL * max(1.0, abs(lhs))


def _algebra_basis(n):
    d = n + 2
    mats = []
    for i in range(d - 1):
        for j in range(i + 1, d - 1):
            E = np.zeros((d, d))
            E[i, j], E[j, i] = 1.0, -1.0
            mats.append(E)
    for i in range(d - 1):
        E = np.zeros((d, d))
        E[i, d - 1] = E[d - 1, i] = 1.0
        mats.append(E)
    return mats


@pytest.mark.parametrize("n", (1, 2))
def test_killing_form_against_trace_of_ad(rng, n):
    # Independent oracle: expand ad(X) in an explicit basis of the full
    # algebra and trace the composition.  The implemented form carries a
    # fixed factor of two relative to that trace form (the normalization
    # the inner-product identity divides back out), so the ratio - not
    # just proportionality - is pinned here.
    basis = _algebra_basis(n)
    dim = (n + 1) * (n + 2) // 2
    assert len(basis) == dim
    flat = np.stack([B.reshape(-1) for B in basis], axis=1)
    pinv = np.linalg.pinv(flat)

    def ad_matrix(M):
        cols = [pinv @ (M @ B - B @ M).reshape(-1) for B in basis]
        return np.stack(cols, axis=1)

    for _ in range(5):
        X = random_algebra_element(rng, n)
        Y = random_algebra_element(rng, n)
        oracle = float(np.trace(ad_matrix(X.mat) @ ad_matrix(Y.mat)))
        got = killing_form(X, Y)
        assert abs(got - 2.0 * oracle) <= ORACLE_TOL * max(1.0, abs(got))


@pytest.mark.parametrize("n", DIMS)
def test_killing_form_invariance(rng, n):
    for _ in range(10):
        X = random_algebra_element(rng, n)
        Y = random_algebra_element(rng, n)
        Z = random_algebra_element(rng, n)
        drift = (killing_form(bracket(Z, X), Y)
                 + killing_form(X, bracket(Z, Y)))
        scale = max(1.0, X.norm() * Y.norm() * Z.norm())
        assert abs(drift) <= 1e-11 * scale


@pytest.mark.parametrize("n", DIMS)
def test_inner_product_positive_definite_and_rotation_invariant(rng, n):
    for _ in range(10):
        X = random_algebra_element(rng, n)
        assert inner_product(X, X) > 0.0
        k = rotation_element(random_rotation(rng, n + 1))
        Y = random_algebra_element(rng, n)
        before = inner_product(X, Y)
        after = inner_product(adjoint(k, X), adjoint(k, Y))
        assert abs(after - before) <= 1e-11 * max(1.0, abs(before))


# ---------------------------------------------------------------------------
# involution and compact projection
# ---------------------------------------------------------------------------

def test_involution_action_on_blocks(rng):
    n = 3
    v = rng.normal(size=n)
    m_part = random_skew(rng, n)
    assert np.array_equal(
        cartan_involution(embed("m", m_part, n)).mat, embed("m", m_part, n).mat)
    assert np.array_equal(
        cartan_involution(embed("a", 1.0, n)).mat, embed("a", -1.0, n).mat)
    # the involution swaps the wings at equal payload
    assert np.array_equal(
        cartan_involution(embed("nplus", v, n)).mat, embed("nminus", v, n).mat)
    assert np.array_equal(
        cartan_involution(embed("nminus", v, n)).mat, embed("nplus", v, n).mat)


@pytest.mark.parametrize("n", DIMS)
@pytest.mark.parametrize("sign", (1, -1))
def test_compact_projection_splits_correctly(rng, n, sign):
    X = random_algebra_element(rng, n)
    proj = iwasawa_algebra_project(X, sign)
    # the projection is fixed by the involution ...
    assert np.max(np.abs(cartan_involution(proj).mat - proj.mat)) <= EXACT
    # ... and the remainder lives entirely in the boost + one-wing block
    rest = bruhat_project(X + (-1.0) * proj)
    assert np.max(np.abs(rest.m_part)) <= EXACT
    leftover = rest.nminus if sign == 1 else rest.nplus
    assert np.max(np.abs(leftover)) <= EXACT


# ---------------------------------------------------------------------------
# exponentials and adjoint
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", DIMS)
def test_group_exp_matches_dense_oracle(rng, n):
    for _ in range(5):
        X = random_algebra_element(rng, n)
        expected = scipy.linalg.expm(X.mat)
        got = group_exp(X).mat
        assert np.max(np.abs(got - expected)) <= 1e-12 * max(
            1.0, np.max(np.abs(expected)))


@pytest.mark.parametrize("sign", ("plus", "minus"))
def test_group_exp_nilpotent_branch(rng, sign):
    n = 3
    v = 3.0 * rng.normal(size=n)
    N = embed(f"n{sign}", v, n)
    cube = N.mat @ N.mat @ N.mat
    scale = max(1.0, np.max(np.abs(N.mat)) ** 3)
    assert np.max(np.abs(cube)) <= 1e-15 * scale
    closed = group_exp(N).mat
    dense = scipy.linalg.expm(N.mat)
    assert np.max(np.abs(closed - dense)) <= 1e-13 * max(
        1.0, np.max(np.abs(dense)))


def test_group_exp_norm_cap(rng):
    with pytest.raises(InvariantViolation):
        group_exp(embed("a", 60.0, 2))


@pytest.mark.parametrize("n", DIMS)
def test_boost_matrix_is_generator_exponential(n):
    basis = standard_basis(n)
    for t in (-2.0, -0.3, 0.0, 1.7):
        closed = boost_matrix(t, n).mat
        dense = group_exp(t * basis.h0).mat
        assert np.max(np.abs(closed - dense)) <= 1e-13 * max(
            1.0, np.max(np.abs(dense)))
    a = boost_matrix(0.4, n)
    b = boost_matrix(-1.1, n)
    combined = boost_matrix(0.4 - 1.1, n)
    assert np.max(np.abs((a @ b).mat - combined.mat)) <= 1e-14


@pytest.mark.parametrize("n", DIMS)
def test_adjoint_is_conjugation_and_differentiates_bracket(rng, n):
    g = random_group_element(rng, n)
    X = random_algebra_element(rng, n)
    direct = g.mat @ X.mat @ g.inverse_mat()
    assert np.array_equal(adjoint(g, X).mat, direct)
    # d/dt Ad(exp(tY)) X at t=0 equals the bracket: ties the group-level
    # and algebra-level structures together through an independent route
    Y = random_algebra_element(rng, n)
    h = 1e-6
    plus = adjoint(group_exp(h * Y), X).mat
    minus = adjoint(group_exp(-h * Y), X).mat
    fd = (plus - minus) / (2.0 * h)
    scale = max(1.0, X.norm() * Y.norm())
    assert np.max(np.abs(fd - bracket(Y, X).mat)) <= 1e-7 * scale


def test_group_commutator_of_commuting_elements(rng):
    n = 2
    a = boost_matrix(0.5, n)
    b = boost_matrix(-1.2, n)
    assert np.max(np.abs(group_commutator(a, b).mat - np.eye(n + 2))) <= EXACT


# ---------------------------------------------------------------------------
# rotations
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", DIMS)
def test_rotation_embeddings(rng, n):
    R = random_rotation(rng, n + 1)
    g = rotation_element(R)
    assert np.array_equal(g.mat[: n + 1, : n + 1], R)
    assert g.mat[n + 1, n + 1] == 1.0
    S = random_rotation(rng, n)
    m = spatial_rotation_element(S)
    assert np.array_equal(m.mat[:n, :n], S)
    assert m.mat[n, n] == 1.0 and m.mat[n + 1, n + 1] == 1.0


@pytest.mark.parametrize("n", DIMS)
def test_rotation_to_pole_branches(rng, n):
    pole = np.zeros(n + 1)
    pole[-1] = 1.0
    targets = [random_unit_vector(rng, n + 1) for _ in range(10)]
    targets.append(pole)
    targets.append(-pole)  # exact antipode: the half-turn branch
    near = -pole + 0.05 * np.concatenate([rng.normal(size=n), [0.0]])
    targets.append(near / np.linalg.norm(near))  # near-antipodal branch
    for b in targets:
        R = rotation_to_pole(b)
        assert np.max(np.abs(R.T @ R - np.eye(n + 1))) <= 1e-12
        assert abs(np.linalg.det(R) - 1.0) <= 1e-12
        assert np.max(np.abs(R @ pole - b)) <= 1e-12


def test_rotation_to_pole_rejects_non_unit():
    with pytest.raises(InvariantViolation):
        rotation_to_pole(np.array([0.5, 0.5, 0.5]))


def test_stream_rng_determinism():
    a = stream_rng(5, "label").normal(size=4)
    b = stream_rng(5, "label").normal(size=4)
    c = stream_rng(5, "other").normal(size=4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
