"""Suite implementations behind the `verify` subcommand.

Each check measures one residual with its own seeded stream, so a
report is reproducible check by check whatever subset of suites runs.
Sample counts here are sized for an interactive run; the package test
suite drives the same operations at the full advertised volumes.
"""
from __future__ import annotations

import math
import time
from typing import Callable

import numpy as np

from .. import __version__
from ..boundary import (
    BoundaryPoint,
    boundary_action,
    boundary_differential,
    conformal_factor,
    lift_boundary_point,
    log_conformal_factor,
    sphere_quadrature,
    tangent_from_frame,
    tangent_to_frame,
    visual_kernel,
)
from ..flow_calculus import (
    FlowPoint,
    ModelTangent,
    a_eigenfamily,
    commutation_defect,
    covariant_derivative,
    flow_derivative,
    form_space,
    geodesic_flow,
    horocycle_minus,
    lie_derivative_flow,
    matrix_coefficient_section,
    mixed_space,
    model_direction,
    random_smooth_section,
    scalar_space,
    tensor_split,
)
from ..iwasawa import (
    iwasawa_cocycle_defect,
    iwasawa_decompose,
    iwasawa_h,
    unipotent_matrix,
)
from ..lie_core import (
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
    mperp_vector,
    rotation_element,
    standard_basis,
)
from ..poisson import (
    HyperbolicPoint,
    PoissonEvaluator,
    _transform_values,
    base_point,
    eigen_residual,
    hyperbolic_grid,
    point_from_group,
    poisson_transform,
)
from ..principal_series import (
    compat_defect,
    homomorphism_defect,
    make_section,
    pullback_p_form,
    random_section,
    rep_action,
    sample_slot_arguments,
    twist_product_defect,
    unitarity_defect,
)
from ..sampling import (
    random_algebra_element,
    random_boundary_point,
    random_group_element,
    random_m_element,
    random_rotation,
    random_tangent,
    stream_rng,
)
from .report import (
    CHECK_REGISTRY,
    ConfigError,
    CheckResult,
    VerifyConfig,
    VerifyReport,
)

__all__ = ["run_suite", "SUITE_RUNNERS"]


def _maxabs(arr) -> float:
    return float(np.max(np.abs(np.asarray(arr))))


def _bounded_element(rng, n: int, rapidity: float):
    """Generic group element with an explicit polar-radius cap.

    Every element factors as rotation * boost * rotation, so sampling
    that shape covers the group while keeping transported integrands
    resolvable by a fixed quadrature degree.
    """
    left = rotation_element(random_rotation(rng, n + 1))
    right = rotation_element(random_rotation(rng, n + 1))
    t = float(rng.uniform(-rapidity, rapidity))
    return left @ boost_matrix(t, n) @ right


def _transport_degree(cfg: VerifyConfig) -> int:
    """Quadrature degree for integrands transported by capped elements.

    Checked to leave several orders of margin at the caps used below;
    the three-dimensional product rule grows fast, so its floor is a
    notch lower.
    """
    floor = 28 if cfg.n >= 3 else 32
    return max(cfg.quad_degree + 12, floor)


def _run_check(check_id: str, cfg: VerifyConfig,
               measure: Callable[[np.random.Generator], float]) -> CheckResult:
    reg = CHECK_REGISTRY[check_id]
    rng = stream_rng(cfg.seed, f"{reg.suite}:{check_id}")
    start = time.perf_counter()
    residual = float(measure(rng))
    wall = time.perf_counter() - start
    return CheckResult(
        suite=reg.suite,
        check_id=check_id,
        label=reg.key,
        residual=residual,
        tolerance=reg.tolerance(cfg.tolerances),
        mode=reg.mode,
        wall_time=wall,
    )


# ---------------------------------------------------------------------------
# lie_core
# ---------------------------------------------------------------------------

def suite_lie_core(cfg: VerifyConfig) -> list[CheckResult]:
    n = cfg.n
    basis = standard_basis(n)

    def lc1(rng):
        worst = 0.0
        for _ in range(20):
            v = rng.normal(size=n)
            for name, sigma in (("nplus", 1), ("nminus", -1)):
                N = embed(name, v, n)
                diff = bracket(basis.h0, N).mat - sigma * N.mat
                worst = max(worst, _maxabs(diff) / max(1.0, _maxabs(N.mat)))
        return worst

    def lc2(rng):
        worst = 0.0
        for t in np.linspace(-2.0, 2.0, 9):
            a = group_exp(embed("a", -float(t), n))
            for us, rate in ((basis.uplus, math.exp(-t)),
                             (basis.uminus, math.exp(t))):
                for U in us:
                    diff = adjoint(a, U).mat - rate * U.mat
                    worst = max(worst, _maxabs(diff) / (rate * _maxabs(U.mat)))
        return worst

    def lc3(rng):
        worst = 0.0
        for _ in range(20):
            parts = bruhat_project(random_algebra_element(rng, n))
            blocks = [
                embed("m", parts.m_part, n),
                embed("a", parts.a_part, n),
                embed("nplus", parts.nplus, n),
                embed("nminus", parts.nminus, n),
            ]
            for i in range(4):
                for j in range(i + 1, 4):
                    scale = max(1.0, blocks[i].norm() * blocks[j].norm())
                    worst = max(worst,
                                abs(inner_product(blocks[i], blocks[j]))
                                / scale)
        return worst

    def lc4(rng):
        worst = 0.0
        for _ in range(100):
            X = random_algebra_element(rng, n)
            Y = random_algebra_element(rng, n)
            lhs = inner_product(X, Y)
            rhs = -killing_form(X, cartan_involution(Y)) / (2.0 * n)
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
        return worst

    def lc5(rng):
        worst = 0.0
        eye = np.eye(n + 2)
        for _ in range(10):
            v = rng.normal(size=n)
            for name in ("nplus", "nminus"):
                N = embed(name, v, n).mat
                cube = N @ N @ N
                closed = eye + N + (N @ N) / 2.0
                scale = max(1.0, _maxabs(N) ** 3)
                worst = max(
                    worst, _maxabs(cube) / scale,
                    _maxabs(group_exp(embed(name, v, n)).mat - closed)
                    / scale)
        return worst

    def lc6(rng):
        worst = 0.0
        for _ in range(10):
            g = random_group_element(rng, n, scale=0.5)
            X = random_algebra_element(rng, n, scale=0.5)
            lhs = group_exp(adjoint(g, X)).mat
            rhs = (g @ group_exp(X) @ g.inverse()).mat
            worst = max(worst, _maxabs(lhs - rhs) / max(1.0, _maxabs(rhs)))
        return worst

    measures = {"LC1": lc1, "LC2": lc2, "LC3": lc3, "LC4": lc4,
                "LC5": lc5, "LC6": lc6}
    return [_run_check(cid, cfg, fn) for cid, fn in measures.items()]


# ---------------------------------------------------------------------------
# iwasawa
# ---------------------------------------------------------------------------

def suite_iwasawa(cfg: VerifyConfig) -> list[CheckResult]:
    n = cfg.n

    def iw1(rng):
        worst = 0.0
        for _ in range(60):
            g = random_group_element(rng, n, scale=0.8)
            for sign in (1, -1):
                worst = max(worst, iwasawa_decompose(g, sign).residual)
        return worst

    def iw2(rng):
        worst = 0.0
        for _ in range(25):
            g = random_group_element(rng, n, scale=0.8)
            m = random_m_element(rng, n)
            for sign in (1, -1):
                worst = max(worst, abs(iwasawa_h(g @ m, sign)
                                       - iwasawa_h(g, sign)))
                left = iwasawa_decompose(g @ m, sign).k.mat
                right = (iwasawa_decompose(g, sign).k @ m).mat
                worst = max(worst, _maxabs(left - right))
        return worst

    def iw3(rng):
        worst = 0.0
        for _ in range(25):
            g = random_group_element(rng, n, scale=0.8)
            s = float(rng.uniform(-2.0, 2.0))
            shift = group_exp(embed("a", s, n))
            for sign in (1, -1):
                worst = max(worst, abs(iwasawa_h(g @ shift, sign)
                                       - iwasawa_h(g, sign) - s))
        return worst

    def iw4(rng):
        worst = 0.0
        for _ in range(60):
            g1 = random_group_element(rng, n, scale=0.8)
            g2 = random_group_element(rng, n, scale=0.8)
            for sign in (1, -1):
                worst = max(worst, iwasawa_cocycle_defect(g1, g2, sign))
        return worst

    def iw5(rng):
        worst = 0.0
        for _ in range(20):
            k0 = rotation_element(random_rotation(rng, n + 1))
            t = float(rng.uniform(-1.5, 1.5))
            v = 0.8 * rng.normal(size=n)
            for sign in (1, -1):
                g = k0 @ boost_matrix(t, n) @ unipotent_matrix(v, sign, n)
                fac = iwasawa_decompose(g, sign)
                worst = max(worst, abs(fac.t - t), _maxabs(fac.v - v),
                            _maxabs(fac.k.mat - k0.mat))
        return worst

    measures = {"IW1": iw1, "IW2": iw2, "IW3": iw3, "IW4": iw4, "IW5": iw5}
    return [_run_check(cid, cfg, fn) for cid, fn in measures.items()]


# ---------------------------------------------------------------------------
# boundary
# ---------------------------------------------------------------------------

def suite_boundary(cfg: VerifyConfig) -> list[CheckResult]:
    n = cfg.n

    def bd1(rng):
        worst = 0.0
        for _ in range(8):
            g = random_group_element(rng, n, scale=0.6)
            b = random_boundary_point(rng, n)
            tv = random_tangent(rng, b)
            reference = boundary_differential(g, tv)
            lcf = log_conformal_factor(g, b)
            moved = boundary_action(g, b)
            k_b = lift_boundary_point(b)
            for _ in range(4):
                lift2 = k_b @ random_m_element(rng, n)
                coords2 = tangent_to_frame(lift2, tv)
                fac2 = iwasawa_decompose(g @ lift2, -1)
                out2 = tangent_from_frame(fac2.k, math.exp(fac2.t) * coords2)
                worst = max(worst, _maxabs(out2.w - reference.w),
                            abs(fac2.t - lcf),
                            _maxabs(out2.base.b - moved.b))
        return worst

    def bd2(rng):
        worst = 0.0
        for _ in range(20):
            g = random_group_element(rng, n, scale=0.6)
            b = random_boundary_point(rng, n)
            tv = random_tangent(rng, b)
            pushed = boundary_differential(g, tv)
            expected = conformal_factor(g, b) * tv.norm()
            worst = max(worst, abs(pushed.norm() - expected) / expected)
        return worst

    def bd3(rng):
        worst = 0.0
        for _ in range(12):
            g = random_group_element(rng, n, scale=0.6)
            b = random_boundary_point(rng, n)
            fac = iwasawa_decompose(g @ lift_boundary_point(b), -1)
            an = fac.boost() @ fac.unipotent()
            y = rng.normal(size=n)
            Y = embed("mperp", y, n)
            projected = iwasawa_algebra_project(adjoint(an, Y), -1)
            scale = math.exp(fac.t)
            worst = max(worst, _maxabs(mperp_vector(projected) - scale * y)
                        / max(1.0, scale * _maxabs(y)))
            if n == 1:
                worst = max(worst, _maxabs(projected.mat - scale * Y.mat)
                            / max(1.0, scale))
        return worst

    def bd4(rng):
        # certifies the analytic identity, so resolve the (smooth but
        # concentrated) transported integrand well past the config degree
        quad = sphere_quadrature(n, _transport_degree(cfg))
        a = rng.normal(size=n + 1)
        q = rng.normal(size=(n + 1, n + 1)) / (n + 1)

        def f(b: BoundaryPoint) -> float:
            return math.exp(0.7 * float(a @ b.b)) + float(b.b @ q @ b.b)

        nodes = quad.nodes()
        flat_total = quad.integrate(np.array([f(b) for b in nodes]))
        worst = 0.0
        for _ in range(3):
            g = _bounded_element(rng, n, 0.9)
            moved = np.array([
                f(boundary_action(g, b)) * conformal_factor(g, b) ** n
                for b in nodes
            ])
            worst = max(worst, abs(quad.integrate(moved) - flat_total))
        return worst

    def bd5(rng):
        worst = 0.0
        for _ in range(12):
            x = random_group_element(rng, n, scale=0.6)
            y = random_group_element(rng, n, scale=0.6)
            z = random_group_element(rng, n, scale=0.6)
            b = random_boundary_point(rng, n)
            lhs = visual_kernel(x, b, y) * visual_kernel(y, b, z)
            rhs = visual_kernel(x, b, z)
            worst = max(worst, abs(lhs - rhs) / rhs)
        return worst

    def bd6(rng):
        worst = 0.0
        for _ in range(12):
            g = random_group_element(rng, n, scale=0.5)
            x = random_group_element(rng, n, scale=0.6)
            y = random_group_element(rng, n, scale=0.6)
            b = random_boundary_point(rng, n)
            lhs = visual_kernel(g @ x, boundary_action(g, b), g @ y)
            rhs = visual_kernel(x, b, y)
            worst = max(worst, abs(lhs - rhs) / rhs)
        return worst

    def bd7(rng):
        h = cfg.fd_step
        worst = 0.0
        for _ in range(15):
            g = random_group_element(rng, n, scale=0.6)
            b = random_boundary_point(rng, n)
            tv = random_tangent(rng, b)
            speed = tv.norm()
            unit = tv.w / speed

            def curve(s: float) -> BoundaryPoint:
                ang = s * speed
                return BoundaryPoint(math.cos(ang) * b.b
                                     + math.sin(ang) * unit)

            fd = (boundary_action(g, curve(h)).b
                  - boundary_action(g, curve(-h)).b) / (2.0 * h)
            analytic = boundary_differential(g, tv).w
            worst = max(worst,
                        _maxabs(fd - analytic) / max(1.0, _maxabs(analytic)))
        return worst

    def bd8(rng):
        quad = sphere_quadrature(n, cfg.quad_degree)
        pts, w = quad.points, quad.weights
        dim = n + 1
        worst = 0.0
        for i in range(dim):
            worst = max(worst, abs(float(w @ pts[:, i])))
            for j in range(dim):
                expected = (1.0 / dim) if i == j else 0.0
                worst = max(worst,
                            abs(float(w @ (pts[:, i] * pts[:, j]))
                                - expected))
            worst = max(worst, abs(float(w @ pts[:, i] ** 4)
                                   - 3.0 / (dim * (dim + 2))))
            for j in range(dim):
                if j == i:
                    continue
                worst = max(worst,
                            abs(float(w @ (pts[:, i] ** 2 * pts[:, j] ** 2))
                                - 1.0 / (dim * (dim + 2))))
                worst = max(worst,
                            abs(float(w @ (pts[:, i] ** 3 * pts[:, j]))))
        if cfg.quad_degree >= 6:
            worst = max(worst, abs(float(w @ pts[:, 0] ** 6)
                                   - 15.0 / (dim * (dim + 2) * (dim + 4))))
        return worst

    def bd9(rng):
        quad = sphere_quadrature(n, cfg.quad_degree)
        return abs(math.fsum(quad.weights.tolist()) - 1.0)

    def bd10(rng):
        worst = 0.0
        for _ in range(12):
            g1 = random_group_element(rng, n, scale=0.6)
            g2 = random_group_element(rng, n, scale=0.6)
            b = random_boundary_point(rng, n)
            lhs = boundary_action(g1 @ g2, b).b
            rhs = boundary_action(g1, boundary_action(g2, b)).b
            worst = max(worst, _maxabs(lhs - rhs))
        return worst

    measures = {"BD1": bd1, "BD2": bd2, "BD3": bd3, "BD4": bd4, "BD5": bd5,
                "BD6": bd6, "BD7": bd7, "BD8": bd8, "BD9": bd9, "BD10": bd10}
    return [_run_check(cid, cfg, fn) for cid, fn in measures.items()]


# ---------------------------------------------------------------------------
# principal_series
# ---------------------------------------------------------------------------

def _ps_degrees(n: int) -> list[int]:
    return [1] + ([2] if n >= 2 else [])


def suite_principal_series(cfg: VerifyConfig) -> list[CheckResult]:
    n = cfg.n

    def ps1(rng):
        worst = 0.0
        for p in ([0, 1] if n >= 1 else [0]):
            s = random_section(rng, n, p)
            for lam in (0.3, -0.4 + 0.6j):
                for _ in range(3):
                    g1 = random_group_element(rng, n, scale=0.5)
                    g2 = random_group_element(rng, n, scale=0.5)
                    worst = max(worst,
                                homomorphism_defect(lam, p, g1, g2, s,
                                                    samples=12,
                                                    seed=cfg.seed))
        return worst

    def ps2(rng):
        # the rule must resolve the transported density, hence the
        # degree floor and the polar-radius cap on the elements
        quad = sphere_quadrature(n, _transport_degree(cfg))
        worst = 0.0
        for _ in range(3 if n <= 2 else 2):
            f = random_section(rng, n, 0)
            g = _bounded_element(rng, n, 0.8)
            worst = max(worst, unitarity_defect(0.6j, g, f, quad))
        return worst

    def _compat_sweep(rng, shifted: bool):
        values = []
        for p in _ps_degrees(n):
            for i in range(4):
                g = (boost_matrix(0.9, n)
                     @ random_group_element(rng, n, scale=0.45))
                s = random_section(rng, n, p)
                lam = (p - 0.5 * n + 1.0) if shifted else None
                values.append(compat_defect(g, p, s, samples=25, lam=lam,
                                            seed=cfg.seed + i))
        return values

    def ps3(rng):
        return max(_compat_sweep(rng, shifted=False))

    def ps4(rng):
        return min(_compat_sweep(rng, shifted=True))

    def ps5(rng):
        worst = 0.0
        for p in _ps_degrees(n):
            f = random_section(rng, n, 0)
            s = random_section(rng, n, p)
            for _ in range(2):
                lam1 = complex(rng.normal(), rng.normal()) * 0.5
                lam2 = complex(rng.normal(), rng.normal()) * 0.5
                g = random_group_element(rng, n, scale=0.5)
                worst = max(worst,
                            twist_product_defect(lam1, lam2, p, g, f, s,
                                                 samples=20, seed=cfg.seed))
        return worst

    def ps6(rng):
        worst = 0.0
        s = random_section(rng, n, 1)
        args = sample_slot_arguments(rng, n, 1, 20)
        for _ in range(4):
            g1 = random_group_element(rng, n, scale=0.5)
            g2 = random_group_element(rng, n, scale=0.5)
            joint = pullback_p_form(g1 @ g2, s)
            nested = pullback_p_form(g1, pullback_p_form(g2, s))
            for b, frame in args:
                worst = max(worst, abs(joint(b, *frame) - nested(b, *frame)))
        return worst

    measures = {"PS1": ps1, "PS2": ps2, "PS3": ps3, "PS4": ps4,
                "PS5": ps5, "PS6": ps6}
    return [_run_check(cid, cfg, fn) for cid, fn in measures.items()]


# ---------------------------------------------------------------------------
# flow_calculus
# ---------------------------------------------------------------------------

def _commutation_sections(rng, n: int, g, step: float):
    """Seeded generic sections with a non-degenerate stable derivative."""
    spaces = [scalar_space(), form_space(-1, 1), form_space(1, 1),
              mixed_space(1, -1)]
    picked = []
    for space in spaces:
        for _ in range(2):
            while True:
                u = random_smooth_section(rng, n, space)
                if _maxabs(horocycle_minus(u, g, step)) >= 0.05:
                    break
            picked.append(u)
    return picked


def suite_flow_calculus(cfg: VerifyConfig) -> list[CheckResult]:
    n = cfg.n
    basis = standard_basis(n)
    nested = cfg.tolerances.fd_step_nested

    def fc1(rng):
        worst = 0.0
        for _ in range(10):
            g = random_group_element(rng, n, scale=0.5)
            vt = ModelTangent(g, model_direction(
                n, a_part=float(rng.normal()), nplus=rng.normal(size=n),
                nminus=rng.normal(size=n)))
            for t in (-1.5, -0.4, 0.8, 2.0):
                out = flow_derivative(t, vt)
                oracle = bruhat_project(
                    adjoint(boost_matrix(-t, n), vt.v.reassemble()))
                scale = max(1.0, _maxabs(oracle.nplus), _maxabs(oracle.nminus))
                worst = max(
                    worst,
                    _maxabs(out.v.nplus - oracle.nplus) / scale,
                    _maxabs(out.v.nminus - oracle.nminus) / scale,
                    abs(out.v.a_part - oracle.a_part),
                    _maxabs(oracle.m_part),
                )
        return worst

    def fc2(rng):
        u = matrix_coefficient_section(scalar_space(), rng, n)
        worst = 0.0
        for _ in range(6):
            g = random_group_element(rng, n, scale=0.5)
            m = random_m_element(rng, n)
            t = float(rng.uniform(-1.5, 1.5))
            a = geodesic_flow(t, FlowPoint(g @ m))
            b = geodesic_flow(t, FlowPoint(g))
            worst = max(worst, _maxabs(a.signature() - b.signature()))
            left = covariant_derivative(u, basis.h0, g @ m, cfg.fd_step)
            right = covariant_derivative(u, basis.h0, g, cfg.fd_step)
            worst = max(worst, _maxabs(left - right))
        return worst

    def fc3(rng):
        worst = 0.0
        combos = [(1, 1), (-1, 1)] + ([(-1, 2)] if n >= 2 else [])
        for sigma, p in combos:
            for _ in range(4):
                u = random_smooth_section(rng, n, form_space(sigma, p))
                g = random_group_element(rng, n, scale=0.5)
                L = lie_derivative_flow(u, g, cfg.fd_step)
                C = covariant_derivative(u, basis.h0, g, cfg.fd_step)
                resid = L - C + sigma * p * u(g)
                worst = max(worst, _maxabs(resid) / max(1.0, _maxabs(u(g))))
        return worst

    def fc4(rng):
        worst = 0.0
        spaces = [scalar_space(), form_space(-1, 1), form_space(1, 1)]
        for space in spaces:
            for _ in range(2):
                u, nu = a_eigenfamily(space, rng, n)
                g = random_group_element(rng, n, scale=0.4)
                ref = horocycle_minus(u, g, cfg.fd_step)
                scale = max(1.0, _maxabs(ref))
                for t in (0.4, -0.8):
                    lhs = horocycle_minus(u, g @ boost_matrix(t, n),
                                          cfg.fd_step)
                    rhs = math.exp((nu - 1.0) * t) * ref
                    worst = max(worst, _maxabs(lhs - rhs) / scale)
        return worst

    def fc5(rng):
        g = random_group_element(rng, n, scale=0.4)
        sections = _commutation_sections(rng, n, g, nested)
        return max(commutation_defect(u, g, nested) for u in sections)

    def fc6(rng):
        g = random_group_element(rng, n, scale=0.4)
        sections = _commutation_sections(rng, n, g, nested)
        return min(commutation_defect(u, g, nested, orientation=-1)
                   for u in sections)

    def fc7(rng):
        h = 4e-6
        worst = 0.0
        for space in (scalar_space(), form_space(-1, 1)):
            u = random_smooth_section(rng, n, space)
            g = random_group_element(rng, n, scale=0.4)
            H = horocycle_minus(u, g, h)
            R = random_rotation(rng, n)
            cols = [
                covariant_derivative(u, embed("nminus", R[:, j] / 2.0, n),
                                     g, h)
                for j in range(n)
            ]
            rotated = np.stack(cols, axis=-1)
            target = np.tensordot(H, R, axes=([H.ndim - 1], [0]))
            worst = max(worst,
                        _maxabs(rotated - target) / max(1.0, _maxabs(H)))
        return worst

    def fc8(rng):
        worst = 0.0
        for _ in range(10):
            T = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            sym0, antisym, trace_part = tensor_split(T)
            scale = max(1.0, _maxabs(T) ** 2)
            worst = max(
                worst,
                _maxabs(T - sym0 - antisym - trace_part) / scale,
                _maxabs(sym0 - sym0.T) / scale,
                abs(np.trace(sym0)) / scale,
                _maxabs(antisym + antisym.T) / scale,
                abs(np.sum(sym0 * antisym)) / scale,
                abs(np.sum(sym0 * trace_part)) / scale,
                abs(np.sum(antisym * trace_part)) / scale,
            )
        return worst

    def fc9(rng):
        worst = 0.0
        for _ in range(8):
            g = random_group_element(rng, n, scale=0.5)
            vt = ModelTangent(g, model_direction(
                n, a_part=float(rng.normal()), nplus=rng.normal(size=n),
                nminus=rng.normal(size=n)))
            for s, t in ((0.7, -1.1), (-0.6, 0.9)):
                two_step = flow_derivative(s, flow_derivative(t, vt))
                one_step = flow_derivative(s + t, vt)
                worst = max(
                    worst,
                    _maxabs(two_step.v.nplus - one_step.v.nplus),
                    _maxabs(two_step.v.nminus - one_step.v.nminus),
                    _maxabs(two_step.g.mat - one_step.g.mat),
                )
                x = FlowPoint(g)
                worst = max(worst, geodesic_flow(s, geodesic_flow(t, x))
                            .distance_to(geodesic_flow(s + t, x)))
        return worst

    measures = {"FC1": fc1, "FC2": fc2, "FC3": fc3, "FC4": fc4, "FC5": fc5,
                "FC6": fc6, "FC7": fc7, "FC8": fc8, "FC9": fc9}
    return [_run_check(cid, cfg, fn) for cid, fn in measures.items()]


# ---------------------------------------------------------------------------
# poisson
# ---------------------------------------------------------------------------

def suite_poisson(cfg: VerifyConfig) -> list[CheckResult]:
    n = cfg.n
    degree = max(cfg.quad_degree, 16)
    ones = make_section(n, "one")

    def po1(rng):
        quad = sphere_quadrature(n, cfg.quad_degree)
        worst = 0.0
        for lam in (0.7, 1.0 + 1.0j):
            value = poisson_transform(lam, ones, base_point(n), quad)
            worst = max(worst, abs(value - 1.0))
        return worst

    def po2(rng):
        quad = sphere_quadrature(n, _transport_degree(cfg))
        ev = PoissonEvaluator(float(n), ones, quad)
        return max(abs(ev.at(x) - 1.0)
                   for x in hyperbolic_grid(n, 8, 1.0, cfg.seed))

    def po3(rng):
        quad = sphere_quadrature(n, degree)
        f = make_section(n, "exp-coordinate:0")
        ev = PoissonEvaluator(0.8, f, quad)
        worst = 0.0
        for _ in range(8):
            h = random_group_element(rng, n, scale=0.6)
            canonical = ev.at(point_from_group(h))
            other = _transform_values(ev.exponent_sign, ev.lam, ev.fvals,
                                      quad, h)
            worst = max(worst, abs(canonical - other))
        return worst

    def po4(rng):
        lam = 0.8
        quad = sphere_quadrature(n, _transport_degree(cfg))
        f = random_section(rng, n, 0)
        ev_f = PoissonEvaluator(lam, f, quad)
        grid = hyperbolic_grid(n, 6, 0.8, cfg.seed)
        worst = 0.0
        for _ in range(2):
            g = _bounded_element(rng, n, 0.5)
            twisted = rep_action(0.5 * n - lam, 0, g.inverse(), f)
            ev_t = PoissonEvaluator(lam, twisted, quad)
            for x in grid:
                moved = HyperbolicPoint(g.mat @ x.x)
                worst = max(worst, abs(ev_f.at(moved) - ev_t.at(x)))
        return worst

    def po5(rng):
        quad = sphere_quadrature(n, degree)
        f = make_section(n, "coordinate:0")
        grid = hyperbolic_grid(n, 10, 1.2, cfg.seed)
        return eigen_residual(0.7, f, grid, quad, 0.02)

    def po6(rng):
        quad = sphere_quadrature(n, degree)
        f = make_section(n, "coordinate:0")
        grid = hyperbolic_grid(n, 10, 1.2, cfg.seed)
        return eigen_residual(1.0 + 1.0j, f, grid, quad, 0.02)

    def po7(rng):
        f = make_section(n, "exp-coordinate:0")
        coarse = PoissonEvaluator(0.7, f, sphere_quadrature(n, degree))
        fine = PoissonEvaluator(0.7, f, sphere_quadrature(n, 2 * degree))
        worst = 0.0
        for x in hyperbolic_grid(n, 6, 1.0, cfg.seed):
            a, b = coarse.at(x), fine.at(x)
            worst = max(worst, abs(a - b) / max(1.0, abs(b)))
        return worst

    measures = {"PO1": po1, "PO2": po2, "PO3": po3, "PO4": po4,
                "PO5": po5, "PO6": po6, "PO7": po7}
    return [_run_check(cid, cfg, fn) for cid, fn in measures.items()]


SUITE_RUNNERS = {
    "lie_core": suite_lie_core,
    "iwasawa": suite_iwasawa,
    "boundary": suite_boundary,
    "principal_series": suite_principal_series,
    "flow_calculus": suite_flow_calculus,
    "poisson": suite_poisson,
}


def run_suite(config: VerifyConfig) -> VerifyReport:
    """Run the configured suites and assemble the deterministic report."""
    checks: list[CheckResult] = []
    for name in config.suites:
        runner = SUITE_RUNNERS.get(name)
        if runner is None:
            raise ConfigError(f"unknown suite {name!r}")
        checks.extend(runner(config))
    return VerifyReport(config=config.echo(), checks=tuple(checks),
                        version=__version__)
