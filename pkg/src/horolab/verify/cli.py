"""Command line front end.

Subcommands:

* ``verify``          run the named check suites and print/emit a report
* ``decompose``       factor a matrix file through the triangular
                      decomposition and print the factors
* ``poisson-eval``    evaluate a boundary-to-interior transform on a
                      seeded grid as CSV
* ``boundary-orbit``  iterate the boundary action of one element as CSV

Configuration is a flat ``key = value`` text file ('#' starts a
comment).  Recognized top-level keys: ``n``, ``fd_step``,
``quad_degree``, ``seed``, ``suites`` (comma separated), ``output``,
``tol.<name>`` (tolerance overrides), plus namespaced extras
``poisson.*`` and ``orbit.*`` consumed by the evaluation subcommands.
Command line flags override file values; the ``HOROLAB_CONFIG``
environment variable supplies a default config path.

Exit codes: 0 all checks passed (or utility ran), 1 at least one check
failed, 2 configuration or input error.
"""
from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from ..boundary import (
    BoundaryPoint,
    boundary_action,
    conformal_factor,
    sphere_quadrature,
)
from ..iwasawa import DecompositionError, iwasawa_decompose
from ..lie_core import (
    GroupElement,
    InvariantViolation,
    boost_matrix,
    membership_defect,
    normalize_sign,
)
from ..matio import MatrixFormatError, load_matrix
from ..poisson import (
    PoissonEvaluator,
    hyperbolic_grid,
    mean_value_laplacian,
)
from ..principal_series import make_section
from .checks import run_suite
from .report import ConfigError, VerifyConfig

__all__ = ["entry", "parse_config_file", "ENV_CONFIG"]

ENV_CONFIG = "HOROLAB_CONFIG"

_EXTRA_PREFIXES = ("poisson.", "orbit.")


# ---------------------------------------------------------------------------
# config file handling
# ---------------------------------------------------------------------------

def parse_config_file(path: str) -> dict[str, str]:
    """Read a flat ``key = value`` file into a string mapping."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    data: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(
                f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        if not key:
            raise ConfigError(f"{path}:{lineno}: empty key")
        data[key] = value.strip()
    return data


def _as_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"key {key!r} expects an integer, got {value!r}")


def _as_float(key: str, value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"key {key!r} expects a number, got {value!r}")


def _split_suites(raw: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in raw.split(",") if part.strip())


def _load_file_data(explicit_path: str | None) -> dict[str, str]:
    path = explicit_path or os.environ.get(ENV_CONFIG)
    return parse_config_file(path) if path else {}


def _config_from(data: dict[str, str], args) -> VerifyConfig:
    kwargs: dict = {}
    overrides: dict[str, float] = {}
    extras: dict[str, str] = {}
    for key, value in data.items():
        if key == "n":
            kwargs["n"] = _as_int(key, value)
        elif key == "fd_step":
            kwargs["fd_step"] = _as_float(key, value)
        elif key == "quad_degree":
            kwargs["quad_degree"] = _as_int(key, value)
        elif key == "seed":
            kwargs["seed"] = _as_int(key, value)
        elif key == "suites":
            kwargs["suites"] = _split_suites(value)
        elif key == "output":
            kwargs["output"] = value
        elif key.startswith("tol."):
            overrides[key[4:]] = _as_float(key, value)
        elif key.startswith(_EXTRA_PREFIXES):
            extras[key] = value
        else:
            raise ConfigError(f"unknown config key {key!r}")
    if getattr(args, "n", None) is not None:
        kwargs["n"] = args.n
    if getattr(args, "fd_step", None) is not None:
        kwargs["fd_step"] = args.fd_step
    if getattr(args, "quad_degree", None) is not None:
        kwargs["quad_degree"] = args.quad_degree
    if getattr(args, "seed", None) is not None:
        kwargs["seed"] = args.seed
    if getattr(args, "suites", None) is not None:
        kwargs["suites"] = _split_suites(args.suites)
    if getattr(args, "output", None) is not None:
        kwargs["output"] = args.output
    for entry_text in getattr(args, "tol", None) or []:
        if "=" not in entry_text:
            raise ConfigError(f"--tol expects NAME=VALUE, got {entry_text!r}")
        name, value = entry_text.split("=", 1)
        overrides[name.strip()] = _as_float(name.strip(), value.strip())
    cfg = VerifyConfig(extras=extras, **kwargs)
    if overrides:
        cfg = cfg.with_tolerance_overrides(overrides)
    return cfg


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    cfg = _config_from(_load_file_data(args.config), args)
    report = run_suite(cfg)
    print(report.render_text())
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    return 0 if report.all_passed else 1


def cmd_decompose(args) -> int:
    mat, n = load_matrix(args.matrix)
    try:
        g = GroupElement(mat, n)
    except InvariantViolation as exc:
        print(f"not a valid group matrix: {exc}", file=sys.stderr)
        print(f"  scaled metric defect: {membership_defect(mat):.3e}",
              file=sys.stderr)
        return 2
    sign = normalize_sign(args.sign)
    fac = iwasawa_decompose(g, sign)
    lines = [
        f"n = {n}",
        f"sign = {'+' if sign > 0 else '-'}",
        f"t = {fac.t + 0.0:.17g}",
        "v = " + ", ".join(f"{x + 0.0:.17g}" for x in fac.v),
        "k =",
    ]
    for row in fac.k.mat:
        lines.append("  " + " ".join(f"{x:.17g}" for x in row))
    lines.append(f"residual = {fac.residual:.3e}")
    print("\n".join(lines))
    return 0


def _pick(args_value, data, key, parse, default):
    if args_value is not None:
        return args_value
    if key in data:
        return parse(key, data[key])
    return default


def _parse_lam(raw: str) -> complex:
    parts = [p.strip() for p in raw.split(",")]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ConfigError(f"weight must be 're' or 're,im', got {raw!r}")


def cmd_poisson_eval(args) -> int:
    data = _load_file_data(args.config)
    n = _pick(args.n, data, "n", _as_int, 2)
    seed = _pick(args.seed, data, "seed", _as_int, 2026)
    lam = _parse_lam(_pick(args.lam, data, "poisson.lam", lambda k, v: v,
                           "0.7"))
    family = _pick(args.family, data, "poisson.family", lambda k, v: v, "one")
    count = _pick(args.grid, data, "poisson.grid", _as_int, 12)
    radius = _pick(args.radius, data, "poisson.radius", _as_float, 1.2)
    r = _pick(args.r, data, "poisson.r", _as_float, 0.02)
    degree = _pick(args.quad_degree, data, "poisson.degree", _as_int,
                   _pick(None, data, "quad_degree", _as_int, 16))
    if count < 1:
        raise ConfigError(f"grid size must be >= 1, got {count}")

    f = make_section(n, family)
    evaluator = PoissonEvaluator(lam, f, sphere_quadrature(n, degree))
    directions = sphere_quadrature(n, 12)
    target = lam * (n - lam)
    header = ",".join([f"x{i}" for i in range(n + 2)] + ["re", "im",
                                                        "residual"])
    rows = [header]
    for x in hyperbolic_grid(n, count, radius, seed):
        value = evaluator.at(x)
        lap = mean_value_laplacian(evaluator.at, x, r, directions=directions)
        residual = abs(lap - target * value) / max(abs(value), 1e-8)
        rows.append(",".join(
            [f"{c:.12g}" for c in x.x]
            + [f"{value.real:.12g}", f"{value.imag:.12g}", f"{residual:.3e}"]
        ))
    _emit("\n".join(rows) + "\n", args.output or data.get("poisson.output"))
    return 0


def cmd_boundary_orbit(args) -> int:
    data = _load_file_data(args.config)
    steps = _pick(args.steps, data, "orbit.steps", _as_int, 10)
    if steps < 0:
        raise ConfigError(f"steps must be >= 0, got {steps}")
    matrix_path = args.matrix or data.get("orbit.matrix")
    boost = _pick(args.boost, data, "orbit.boost", _as_float, None)
    if matrix_path is not None:
        mat, n = load_matrix(matrix_path)
        g = GroupElement(mat, n)
    elif boost is not None:
        n = _pick(args.n, data, "n", _as_int, 2)
        g = boost_matrix(boost, n)
    else:
        raise ConfigError(
            "boundary-orbit needs a group element: --matrix or --boost")

    raw_b = args.b or data.get("orbit.b")
    if raw_b is None:
        coords = np.zeros(n + 1)
        coords[0] = 1.0
    else:
        try:
            coords = np.array([float(p) for p in raw_b.split(",")])
        except ValueError:
            raise ConfigError(f"--b expects comma separated numbers, "
                              f"got {raw_b!r}")
        if coords.shape != (n + 1,):
            raise ConfigError(
                f"--b expects {n + 1} coordinates for n={n}, "
                f"got {coords.shape[0]}")
        norm = float(np.linalg.norm(coords))
        if norm < 1e-12:
            raise ConfigError("--b must be a nonzero vector")
        coords = coords / norm

    b = BoundaryPoint(coords)
    header = ",".join(["step"] + [f"b{i}" for i in range(n + 1)]
                      + ["conformal_factor"])
    rows = [header]
    for step in range(steps + 1):
        factor = conformal_factor(g, b)
        rows.append(",".join([str(step)]
                             + [f"{c:.12g}" for c in b.b]
                             + [f"{factor:.12g}"]))
        b = boundary_action(g, b)
    _emit("\n".join(rows) + "\n", args.output or data.get("orbit.output"))
    return 0


# ---------------------------------------------------------------------------
# parser / entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="horolab",
        description="Deterministic verification and evaluation tools for "
                    "the hyperbolic boundary toolkit.",
    )
    sub = parser.add_subparsers(dest="command")

    pv = sub.add_parser("verify", help="run verification suites")
    pv.add_argument("--config", help="config file path "
                                     f"(default: ${ENV_CONFIG})")
    pv.add_argument("--suites", help="comma separated suite names")
    pv.add_argument("--n", type=int, help="model dimension (1, 2, or 3)")
    pv.add_argument("--seed", type=int, help="base RNG seed")
    pv.add_argument("--fd-step", dest="fd_step", type=float,
                    help="finite difference step")
    pv.add_argument("--quad-degree", dest="quad_degree", type=int,
                    help="sphere quadrature degree")
    pv.add_argument("--output", help="write the JSON report here")
    pv.add_argument("--tol", action="append", metavar="NAME=VALUE",
                    help="tolerance override (repeatable)")
    pv.set_defaults(func=cmd_verify)

    pd = sub.add_parser("decompose",
                        help="factor a matrix file into k, boost, shear")
    pd.add_argument("--matrix", required=True, help="matrix file path")
    pd.add_argument("--sign", default="-", choices=["+", "-"],
                    help="which triangular family (default: -)")
    pd.set_defaults(func=cmd_decompose)

    pp = sub.add_parser("poisson-eval",
                        help="evaluate a boundary transform on a grid")
    pp.add_argument("--config", help="config file path")
    pp.add_argument("--n", type=int)
    pp.add_argument("--seed", type=int)
    pp.add_argument("--lam", help="weight as 're' or 're,im'")
    pp.add_argument("--family",
                    help="boundary section descriptor (e.g. 'one', "
                         "'coordinate:0', 'harmonic:2,1')")
    pp.add_argument("--grid", type=int, help="number of interior points")
    pp.add_argument("--radius", type=float,
                    help="largest distance from the base point")
    pp.add_argument("--r", type=float,
                    help="mean value sphere radius for the local residual")
    pp.add_argument("--quad-degree", dest="quad_degree", type=int)
    pp.add_argument("--output", help="write CSV here instead of stdout")
    pp.set_defaults(func=cmd_poisson_eval)

    po = sub.add_parser("boundary-orbit",
                        help="iterate the boundary action of one element")
    po.add_argument("--config", help="config file path")
    po.add_argument("--n", type=int)
    po.add_argument("--matrix", help="group element as a matrix file")
    po.add_argument("--boost", type=float,
                    help="use the standard boost of this rapidity instead "
                         "of a matrix file")
    po.add_argument("--b", help="initial boundary point, comma separated "
                                "(normalized; default: first axis)")
    po.add_argument("--steps", type=int, help="iteration count (default 10)")
    po.add_argument("--output", help="write CSV here instead of stdout")
    po.set_defaults(func=cmd_boundary_orbit)

    return parser


def entry(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "func", None) is None:
        parser.print_help()
        return 2
    try:
        return int(args.func(args))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except MatrixFormatError as exc:
        print(f"matrix format error: {exc}", file=sys.stderr)
        return 2
    except (InvariantViolation, DecompositionError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(entry())
