"""Tests for the weighted boundary actions on scalar and p-form sections.

Covered here:
  * the named section families, their closed forms and error paths;
  * slot exactness (antisymmetry, multilinearity) of the seeded random
    sections and of the coordinate forms;
  * the sampling helper for slot arguments;
  * the weighted action: identity element, exact rotation case, the
    homomorphism property, and norm preservation on the imaginary axis;
  * the plain pullback: identity, contravariant composition, and its
    match with the weighted action at exactly one parameter value (with
    the shifted parameter as a negative control);
  * scalar-twist fusion of two weighted actions into one.
"""

import numpy as np
import pytest

from horolab.boundary import BoundaryPoint, boundary_action, sphere_quadrature
from horolab.lie_core import (
    InvariantViolation,
    boost_matrix,
    rotation_element,
)
from horolab.principal_series import (
    BoundarySection,
    compat_defect,
    homomorphism_defect,
    make_section,
    pullback_p_form,
    rep_action,
    random_section,
    sample_slot_arguments,
    section_product,
    slot_defects,
    twist_product_defect,
    unitarity_defect,
)
from horolab.sampling import (
    random_boundary_point,
    random_group_element,
    random_rotation,
    stream_rng,
)


def bounded_element(rng, n, rapidity=0.8):
    """Rotation * capped boost * rotation: covers the group with an
    explicit bound on how far integrands are transported."""
    left = rotation_element(random_rotation(rng, n + 1))
    right = rotation_element(random_rotation(rng, n + 1))
    t = float(rng.uniform(-rapidity, rapidity))
    return left @ boost_matrix(t, n) @ right


# ---------------------------------------------------------------------------
# section families
# ---------------------------------------------------------------------------

def test_constant_and_coordinate_sections(rng):
    n = 2
    one = make_section(n, "one")
    coord = make_section(n, "coordinate:1")
    expc = make_section(n, "exp-coordinate:2")
    for _ in range(5):
        b = random_boundary_point(rng, n)
        assert one(b) == 1.0
        assert coord(b) == b.b[1]
        assert expc(b) == np.exp(b.b[2])


def test_bump_section_peaks_at_its_pole():
    n = 2
    bump = make_section(n, "bump:0,0.25")
    peak = BoundaryPoint(np.array([1.0, 0.0, 0.0]))
    assert bump(peak) == 1.0
    away = BoundaryPoint(np.array([-1.0, 0.0, 0.0]))
    assert 0.0 < abs(bump(away)) < 1e-3


def test_harmonic_sections_are_orthogonal():
    # distinct tabulated harmonics integrate to zero against each other;
    # an independent closed-form check of the table
    quad = sphere_quadrature(2, 8)
    labels = ["0,0", "1,-1", "1,0", "1,1", "2,-2", "2,-1", "2,0", "2,1", "2,2"]
    sections = [make_section(2, f"harmonic:{lab}") for lab in labels]
    values = [np.array([s(b) for b in quad.nodes()]) for s in sections]
    for i in range(len(labels)):
        assert quad.integrate(values[i] * values[i]).real > 1e-3
        for j in range(i + 1, len(labels)):
            assert abs(quad.integrate(values[i] * values[j])) <= 1e-12


def test_coordinate_form_sections(rng):
    n = 2
    form1 = make_section(n, "coordinate-form:0")
    form2 = make_section(n, "coordinate-form:0,2")
    args = sample_slot_arguments(rng, n, 2, 6)
    for b, (w1, w2) in args:
        assert form1(b, w1) == w1.w[0]
        direct = w1.w[0] * w2.w[2] - w1.w[2] * w2.w[0]
        assert form2(b, w1, w2) == direct


@pytest.mark.parametrize("descriptor", [
    "harmonic:3,0",       # outside the table
    "coordinate:5",       # axis out of range
    "bump:0,-1.0",        # non-positive width
    "coordinate-form:0,1,2",
    "mystery:1",
])
def test_make_section_rejects_bad_descriptors(descriptor):
    with pytest.raises(ValueError):
        make_section(2, descriptor)


def test_harmonics_require_the_two_sphere():
    with pytest.raises(ValueError):
        make_section(1, "harmonic:1,0")


def test_section_slot_count_is_checked(rng):
    s = make_section(2, "coordinate-form:0")
    b = random_boundary_point(rng, 2)
    with pytest.raises(InvariantViolation):
        s(b)


@pytest.mark.parametrize("p", (1, 2))
def test_random_sections_have_exact_slots(rng, p):
    n = 2
    s = random_section(rng, n, p)
    anti, multi = slot_defects(s, rng, n, samples=12)
    assert anti <= 1e-12
    assert multi <= 1e-12


def test_random_section_rejects_excess_degree(rng):
    with pytest.raises(InvariantViolation):
        random_section(rng, 1, 2)


def test_sample_slot_arguments_structure(rng):
    n, p = 2, 2
    args = sample_slot_arguments(rng, n, p, 8)
    assert len(args) >= 8
    # poles first, then generic points; every frame orthonormal + tangent
    assert np.array_equal(args[0][0].b, np.array([0.0, 0.0, 1.0]))
    assert np.array_equal(args[1][0].b, np.array([0.0, 0.0, -1.0]))
    for b, frame in args:
        mat = np.stack([w.w for w in frame], axis=1)
        assert np.max(np.abs(mat.T @ mat - np.eye(p))) <= 1e-12
        assert np.max(np.abs(b.b @ mat)) <= 1e-12
    with pytest.raises(InvariantViolation):
        sample_slot_arguments(rng, 1, 2, 4)


# ---------------------------------------------------------------------------
# the weighted action
# ---------------------------------------------------------------------------

def test_identity_acts_trivially(rng):
    n = 2
    e = rotation_element(np.eye(n + 1))
    s = random_section(rng, n, 1)
    acted = rep_action(0.3 + 0.2j, 1, e, s)
    for b, frame in sample_slot_arguments(rng, n, 1, 6):
        assert abs(acted(b, *frame) - s(b, *frame)) <= 1e-12


def test_rotations_act_by_composition(rng):
    # rotations have unit conformal factor, so the weight drops out and
    # the action is plain composition with the inverse rotation
    n = 2
    R = random_rotation(rng, n + 1)
    g = rotation_element(R)
    f = make_section(n, "exp-coordinate:0")
    acted = rep_action(0.7, 0, g, f)
    for _ in range(6):
        b = random_boundary_point(rng, n)
        pulled = f(boundary_action(g.inverse(), b))
        assert abs(acted(b) - pulled) <= 1e-12 * max(1.0, abs(pulled))


@pytest.mark.parametrize("n,p", [(1, 0), (2, 0), (2, 1), (3, 1)])
def test_homomorphism_property(rng, n, p):
    lam = -0.4 + 0.6j
    s = random_section(rng, n, p)
    for _ in range(3):
        g1 = random_group_element(rng, n, scale=0.5)
        g2 = random_group_element(rng, n, scale=0.5)
        defect = homomorphism_defect(lam, p, g1, g2, s, samples=15,
                                     seed=int(rng.integers(1 << 30)))
        assert defect <= 1e-8


def test_imaginary_axis_preserves_the_norm(rng):
    n = 2
    quad = sphere_quadrature(n, 32)
    f = make_section(n, "exp-coordinate:1")
    for _ in range(3):
        g = bounded_element(rng, n)
        assert unitarity_defect(0.6j, g, f, quad) <= 1e-6


def test_unitarity_rejects_off_axis_parameters(rng):
    n = 2
    quad = sphere_quadrature(n, 8)
    f = make_section(n, "one")
    g = random_group_element(rng, n)
    with pytest.raises(InvariantViolation):
        unitarity_defect(0.5 + 0.1j, g, f, quad)


# ---------------------------------------------------------------------------
# pullback and the matching parameter
# ---------------------------------------------------------------------------

def test_pullback_is_contravariant(rng):
    n, p = 2, 1
    s = random_section(rng, n, p)
    args = sample_slot_arguments(rng, n, p, 8)
    for _ in range(4):
        g1 = random_group_element(rng, n, scale=0.5)
        g2 = random_group_element(rng, n, scale=0.5)
        once = pullback_p_form(g1 @ g2, s)
        twice = pullback_p_form(g1, pullback_p_form(g2, s))
        worst = max(abs(once(b, *fr) - twice(b, *fr)) for b, fr in args)
        assert worst <= 1e-9


def test_pullback_of_scalars_is_composition(rng):
    # degree-0 pullback is composition with the inverse action
    n = 2
    f = make_section(n, "coordinate:0")
    g = random_group_element(rng, n)
    pulled = pullback_p_form(g, f)
    for _ in range(6):
        b = random_boundary_point(rng, n)
        expected = f(boundary_action(g.inverse(), b))
        assert abs(pulled(b) - expected) <= 1e-12 * max(1.0, abs(expected))


@pytest.mark.parametrize("n,p", [(1, 1), (2, 1), (2, 2)])
def test_pullback_matches_weighted_action_once(rng, n, p):
    # the two constructions agree at exactly one weight; one step away
    # they separate by orders of magnitude
    s = random_section(rng, n, p)
    for _ in range(3):
        g = boost_matrix(0.9, n) @ random_group_element(rng, n, scale=0.45)
        seed = int(rng.integers(1 << 30))
        matched = compat_defect(g, p, s, samples=20, seed=seed)
        shifted = compat_defect(g, p, s, samples=20,
                                lam=p - 0.5 * n + 1.0, seed=seed)
        assert matched <= 1e-8
        assert shifted > 1e-2


def test_compat_default_weight_is_the_matching_one(rng):
    n, p = 2, 1
    s = random_section(rng, n, p)
    g = random_group_element(rng, n)
    explicit = compat_defect(g, p, s, samples=10, lam=p - 0.5 * n, seed=4)
    default = compat_defect(g, p, s, samples=10, seed=4)
    assert explicit == default


# ---------------------------------------------------------------------------
# fusion
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n,p", [(1, 1), (2, 1), (2, 2)])
def test_scalar_twist_fusion(rng, n, p):
    f = make_section(n, "exp-coordinate:0")
    s = random_section(rng, n, p)
    for lam1, lam2 in ((0.3, -0.8), (0.25 - 0.4j, 1.1 + 0.2j)):
        g = random_group_element(rng, n, scale=0.5)
        defect = twist_product_defect(lam1, lam2, p, g, f, s, samples=15,
                                      seed=int(rng.integers(1 << 30)))
        assert defect <= 1e-10


def test_twist_factor_must_be_scalar(rng):
    n = 2
    s = random_section(rng, n, 1)
    g = random_group_element(rng, n)
    with pytest.raises(InvariantViolation):
        twist_product_defect(0.3, 0.5, 1, g, s, s)


def test_section_product_multiplies_values(rng):
    n = 2
    f = make_section(n, "coordinate:1")
    s = make_section(n, "coordinate-form:0")
    prod = section_product(f, s)
    assert prod.p == 1
    for b, frame in sample_slot_arguments(rng, n, 1, 5):
        assert prod(b, *frame) == f(b) * s(b, *frame)
