"""Command-line front end with reproducible, file-based outputs.

Every subcommand writes a table (CSV, or JSON mirroring the CSV with a
schema version field) to ``--out`` or stdout.  Exit codes: 0 on success,
1 on argument/validation errors, 2 on numerical failures; failures are
reported as a JSON payload on stderr so callers can parse them.

Default quadrature resolutions can be overridden by the environment
variables ``SU2KIT_GRID_NK``, ``SU2KIT_GRID_NTHETA``, ``SU2KIT_GRID_NPHI``
or by a ``key=value`` config file passed with ``--config``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import groupalgebra, haar, irreps, liealgebra, quasiclassics, rotations
from .errors import Su2KitError

SCHEMA_VERSION = 1
DEFAULT_GRID = (48, 32, 64)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Argument parser that raises instead of calling sys.exit."""

    def error(self, message):
        raise _UsageError(message)


# ---------------------------------------------------------------------------
# plumbing


def _read_config(path: str) -> dict[str, str]:
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise _UsageError(f"config line not key=value: {line!r}")
            key, _, val = line.partition("=")
            out[key.strip()] = val.strip()
    return out


def _grid_shape(args) -> tuple[int, int, int]:
    shape = list(DEFAULT_GRID)
    cfg = _read_config(args.config) if args.config else {}
    names = ("grid_nk", "grid_ntheta", "grid_nphi")
    envs = ("SU2KIT_GRID_NK", "SU2KIT_GRID_NTHETA", "SU2KIT_GRID_NPHI")
    for i in range(3):
        if names[i] in cfg:
            shape[i] = int(cfg[names[i]])
        if os.environ.get(envs[i]):
            shape[i] = int(os.environ[envs[i]])
    if getattr(args, "grid", None):
        parts = args.grid.lower().split("x")
        if len(parts) != 3:
            raise _UsageError("--grid must look like 48x32x64")
        shape = [int(p) for p in parts]
    if any(n <= 0 for n in shape):
        raise _UsageError("grid resolutions must be positive")
    return tuple(shape)


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (complex, np.complexfloating)):
        return repr(complex(v))
    return str(v)


def _emit(args, columns, rows):
    if args.format == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "columns": list(columns),
            "rows": [[_fmt(v) for v in row] for row in rows],
        }
        text = json.dumps(payload, sort_keys=True, indent=1) + "\n"
    else:
        lines = [",".join(columns)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_vec(text: str, n: int) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != n:
        raise _UsageError(f"expected {n} comma-separated numbers, got {text!r}")
    return np.array([float(p) for p in parts])


def _two_j(jtext: str) -> int:
    j = float(sp_fraction(jtext))
    two_j = int(round(2 * j))
    if abs(2 * j - two_j) > 1e-12 or two_j < 0:
        raise _UsageError("--j must be a non-negative integer or half-integer")
    return two_j


def sp_fraction(text: str) -> float:
    if "/" in text:
        num, _, den = text.partition("/")
        return float(num) / float(den)
    return float(text)


# ---------------------------------------------------------------------------
# subcommand implementations


def _cmd_convert(args):
    val = _parse_vec(args.value, 4 if args.src == "quat" else 3)
    if args.src == "quat":
        q = val / np.linalg.norm(val)
    elif args.src == "rotvec":
        q = rotations.exp_su2(val)
    elif args.src == "gibbs":
        q = rotations.exp_su2(rotations.rotvec_from_gibbs(val))
    else:
        q = rotations.euler_to_quaternion(val)
    if args.dst == "quat":
        out = list(q)
        cols = ["w", "x", "y", "z"]
    elif args.dst == "rotvec":
        out = list(rotations.log_su2(q))
        cols = ["kx", "ky", "kz"]
    elif args.dst == "gibbs":
        out = list(rotations.gibbs_from_rotvec(rotations.log_su2(q)))
        cols = ["gx", "gy", "gz"]
    else:
        e = rotations.quaternion_to_euler(q)
        out = [e.phi, e.theta, e.psi]
        cols = ["phi", "theta", "psi"]
    _emit(args, cols, [out])


def _compose_inputs(args):
    charts = [("quat", v) for v in args.quat or []]
    charts += [("rotvec", v) for v in args.rotvec or []]
    charts += [("gibbs", v) for v in args.gibbs or []]
    if len(charts) != 2:
        raise _UsageError("compose needs exactly two rotations (same chart)")
    if charts[0][0] != charts[1][0]:
        raise _UsageError("both rotations must use the same chart")
    return charts[0][0], charts[0][1], charts[1][1]


def _cmd_compose(args):
    chart, a, b = _compose_inputs(args)
    if chart == "quat":
        qa = _parse_vec(a, 4)
        qb = _parse_vec(b, 4)
        out = rotations.quat_multiply(qa / np.linalg.norm(qa), qb / np.linalg.norm(qb))
        _emit(args, ["w", "x", "y", "z"], [list(out)])
    elif chart == "rotvec":
        q = rotations.quat_multiply(
            rotations.exp_su2(_parse_vec(a, 3)), rotations.exp_su2(_parse_vec(b, 3))
        )
        _emit(args, ["kx", "ky", "kz"], [list(rotations.log_su2(q))])
    else:
        out = rotations.gibbs_compose(_parse_vec(a, 3), _parse_vec(b, 3))
        _emit(args, ["gx", "gy", "gz"], [list(out)])


def _cmd_dmatrix(args):
    two_j = _two_j(args.j)
    kvec = _parse_vec(args.rotvec, 3)
    D = irreps.wigner_d_rotvec(two_j, kvec, args.hbar)
    j = 0.5 * two_j
    rows = []
    for r in range(two_j + 1):
        for c in range(two_j + 1):
            rows.append([r - j, c - j, D[r, c].real, D[r, c].imag])
    _emit(args, ["m", "k", "re", "im"], rows)


def _cmd_character(args):
    two_j = _two_j(args.j)
    ks = np.linspace(0.0, 2.0 * math.pi, args.samples)
    eps = irreps.idempotent(two_j, ks)
    asym = quasiclassics.epsilon_asymptotic(two_j, np.clip(ks, 1e-9, 2 * math.pi - 1e-9))
    _emit(args, ["k", "epsilon", "asymptotic"], list(zip(ks, eps, asym)))


def _cmd_spectrum(args):
    two_j = _two_j(args.j)
    levels = irreps.top_spectrum(two_j, args.I, args.K, args.hbar)
    rows = [
        [e, deg, "" if kq is None else kq]
        for e, deg, kq in levels
    ]
    _emit(args, ["energy", "degeneracy", "kquantum"], rows)


def _cmd_haar_check(args):
    shape = _grid_shape(args)
    grid = haar.build_grid(*shape, args.group)
    vol_int = haar.integrate(grid, np.ones(grid.shape), normalized=True)
    rows = [["volume_normalized", vol_int], ["volume_unnormalized", grid.volume]]
    two_j_max = _two_j(args.jmax)
    tjs = list(range(two_j_max + 1))
    G = irreps.peter_weyl_gram(tjs, grid, args.hbar)
    labels = irreps.pw_labels(tjs)
    diag_err = max(
        abs(G[i, i].real - 1.0 / (tj + 1.0)) for i, (tj, _, _) in enumerate(labels)
    )
    off = G - np.diag(np.diag(G))
    rows.append(["peter_weyl_diag_error", diag_err])
    rows.append(["peter_weyl_offdiag_max", float(np.abs(off).max())])
    _emit(args, ["quantity", "value"], rows)


def _cmd_convolve(args):
    shape = _grid_shape(args)
    grid = haar.build_grid(*shape, "SU2")
    tj1, tj2 = _two_j(args.j1), _two_j(args.j2)
    C = groupalgebra.convolve(
        groupalgebra.idempotent_function(grid, tj1),
        groupalgebra.idempotent_function(grid, tj2),
    )
    ref = irreps.idempotent(tj1, grid.k) if tj1 == tj2 else np.zeros_like(grid.k)
    ring = C.values[:, 0, 0]
    rows = list(zip(grid.k, ring.real, ref, np.abs(ring - ref)))
    _emit(args, ["k", "result", "expected", "abs_error"], rows)


def _cmd_multipole(args):
    two_j = _two_j(args.j)
    prof = groupalgebra.radial_profile(two_j, args.l)
    ks = np.linspace(1e-3, 2.0 * math.pi - 1e-3, args.samples)
    vals = prof(ks)
    _emit(args, ["k", "f_jl"], list(zip(ks, np.real(vals))))


def _cmd_project(args):
    shape = _grid_shape(args)
    grid = haar.build_grid(*shape, "SU2")
    two_j = _two_j(args.j)
    F = groupalgebra.delta_partial_sum(grid, _two_j(args.input_jmax))
    P = groupalgebra.project_ideal(F, two_j)
    ref = irreps.idempotent(two_j, grid.k)
    ring = P.values[:, 0, 0]
    rows = list(zip(grid.k, ring.real, ref, np.abs(ring - ref)))
    _emit(args, ["k", "projected", "block_unit", "abs_error"], rows)


def _cmd_asymptotics(args):
    two_j = _two_j(args.j)
    ks = np.linspace(1e-3, 2.0 * math.pi - 1e-3, args.samples)
    exact = irreps.idempotent(two_j, ks)
    n0 = quasiclassics.epsilon_asymptotic(two_j, ks, "near0")
    n2 = quasiclassics.epsilon_asymptotic(two_j, ks, "near2pi")
    both = quasiclassics.epsilon_asymptotic(two_j, ks, "both")
    rows = list(zip(ks, exact, n0, n2, both, np.abs(exact - both)))
    _emit(args, ["k", "exact", "near0", "near2pi", "both", "abs_error"], rows)


def _cmd_poisson_evolve(args):
    inertia = _parse_vec(args.inertia, 3)
    if np.any(inertia <= 0):
        raise _UsageError("--inertia components must be positive")
    H = quasiclassics.CoalgebraField(
        fn=lambda s: 0.5
        * (
            s[..., 0] ** 2 / inertia[0]
            + s[..., 1] ** 2 / inertia[1]
            + s[..., 2] ** 2 / inertia[2]
        ),
        grad=lambda s: np.stack(
            [s[..., 0] / inertia[0], s[..., 1] / inertia[1], s[..., 2] / inertia[2]],
            axis=-1,
        ),
    )
    box = quasiclassics.make_box(args.n, args.L)
    center = _parse_vec(args.center, 3)
    rho0 = np.exp(
        -np.sum((box.sigma - center) ** 2, axis=-1) / (2.0 * args.width**2)
    )
    save = max(1, args.steps // max(1, args.rows))
    out = quasiclassics.evolve_density(
        H, rho0, box, dt=args.dt, steps=args.steps, save_every=save
    )
    rows = [
        [d["t"], d["energy"], d["casimir"], d["mass"]] for d in out["diagnostics"]
    ]
    _emit(args, ["t", "energy", "casimir", "norm"], rows)


def _cmd_truncation_compare(args):
    shape = _grid_shape(args)
    grid = haar.build_grid(*shape, "SU2")
    rows = []
    for jbar in [sp_fraction(p) for p in args.jbar_list.split(",")]:
        A = quasiclassics.gaussian_class_state(grid, jbar, args.dj)
        res = quasiclassics.truncated_convolution_compare(A, A)
        rows.append([jbar, res["zeroth_error"], res["corrected_error"]])
    _emit(args, ["jbar", "zeroth_error", "corrected_error"], rows)


def _cmd_fields(args):
    kvec = _parse_vec(args.rotvec, 3)
    fc = liealgebra.field_components(kvec)
    rows = []
    for name, mat in (("L", fc.L), ("R", fc.R), ("A", fc.A)):
        for i in range(3):
            for a in range(3):
                rows.append([name, i, a, mat[i, a]])
    _emit(args, ["field", "i", "a", "value"], rows)


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> _Parser:
    p = _Parser(prog="su2kit", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="output file (default stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--config", help="key=value config file")
        sp.add_argument("--seed", type=int, default=0, help="seed for randomized paths")
        sp.add_argument("--hbar", type=float, default=1.0)

    sp = sub.add_parser("convert", help="convert between rotation charts; columns per target chart")
    common(sp)
    sp.add_argument("--from", dest="src", required=True, choices=("quat", "rotvec", "gibbs", "euler"))
    sp.add_argument("--to", dest="dst", required=True, choices=("quat", "rotvec", "gibbs", "euler"))
    sp.add_argument("--value", required=True, help="comma-separated components")
    sp.set_defaults(func=_cmd_convert)

    sp = sub.add_parser("compose", help="compose two rotations in one chart; columns per chart")
    common(sp)
    sp.add_argument("--quat", action="append")
    sp.add_argument("--rotvec", action="append")
    sp.add_argument("--gibbs", action="append")
    sp.set_defaults(func=_cmd_compose)

    sp = sub.add_parser("dmatrix", help="representation matrix entries; columns m,k,re,im")
    common(sp)
    sp.add_argument("--j", required=True)
    sp.add_argument("--rotvec", required=True)
    sp.set_defaults(func=_cmd_dmatrix)

    sp = sub.add_parser("character", help="block unit on [0,2pi]; columns k,epsilon,asymptotic")
    common(sp)
    sp.add_argument("--j", required=True)
    sp.add_argument("--samples", type=int, default=500)
    sp.set_defaults(func=_cmd_character)

    sp = sub.add_parser("spectrum", help="symmetric-top levels; columns energy,degeneracy,kquantum")
    common(sp)
    sp.add_argument("--j", required=True)
    sp.add_argument("--I", type=float, required=True)
    sp.add_argument("--K", type=float, required=True)
    sp.set_defaults(func=_cmd_spectrum)

    sp = sub.add_parser("haar-check", help="measure diagnostics; columns quantity,value")
    common(sp)
    sp.add_argument("--grid", help="NKxNTHETAxNPHI")
    sp.add_argument("--group", default="SU2", choices=("SU2", "SO3"))
    sp.add_argument("--jmax", default="3/2")
    sp.set_defaults(func=_cmd_haar_check)

    sp = sub.add_parser("convolve", help="block-unit convolution; columns k,result,expected,abs_error")
    common(sp)
    sp.add_argument("--j1", required=True)
    sp.add_argument("--j2", required=True)
    sp.add_argument("--grid")
    sp.set_defaults(func=_cmd_convolve)

    sp = sub.add_parser("multipole", help="radial multipole profile; columns k,f_jl")
    common(sp)
    sp.add_argument("--j", required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--samples", type=int, default=500)
    sp.set_defaults(func=_cmd_multipole)

    sp = sub.add_parser("project", help="spectral projection of a mollifier; columns k,projected,block_unit,abs_error")
    common(sp)
    sp.add_argument("--j", required=True)
    sp.add_argument("--input-jmax", default="2")
    sp.add_argument("--grid")
    sp.set_defaults(func=_cmd_project)

    sp = sub.add_parser("asymptotics", help="two-peak asymptotics; columns k,exact,near0,near2pi,both,abs_error")
    common(sp)
    sp.add_argument("--j", required=True)
    sp.add_argument("--samples", type=int, default=500)
    sp.set_defaults(func=_cmd_asymptotics)

    sp = sub.add_parser("poisson-evolve", help="bracket-flow trajectory; columns t,energy,casimir,norm")
    common(sp)
    sp.add_argument("--inertia", default="1,2,3")
    sp.add_argument("--dt", type=float, default=1e-3)
    sp.add_argument("--steps", type=int, default=1000)
    sp.add_argument("--n", type=int, default=32)
    sp.add_argument("--L", type=float, default=2.0)
    sp.add_argument("--center", default="0.6,0.0,0.5")
    sp.add_argument("--width", type=float, default=0.2)
    sp.add_argument("--rows", type=int, default=20)
    sp.set_defaults(func=_cmd_poisson_evolve)

    sp = sub.add_parser("truncation-compare", help="flat vs group convolution; columns jbar,zeroth_error,corrected_error")
    common(sp)
    sp.add_argument("--jbar-list", default="4,8")
    sp.add_argument("--dj", type=float, default=2.0)
    sp.add_argument("--grid")
    sp.set_defaults(func=_cmd_truncation_compare)

    sp = sub.add_parser("fields", help="invariant field components; columns field,i,a,value")
    common(sp)
    sp.add_argument("--rotvec", required=True)
    sp.set_defaults(func=_cmd_fields)

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(
            json.dumps({"error": "UsageError", "message": str(exc)}, sort_keys=True)
            + "\n"
        )
        return EXIT_USAGE
    try:
        args.func(args)
    except _UsageError as exc:
        sys.stderr.write(
            json.dumps({"error": "UsageError", "message": str(exc)}, sort_keys=True)
            + "\n"
        )
        return EXIT_USAGE
    except Su2KitError as exc:
        sys.stderr.write(
            json.dumps(
                {"error": type(exc).__name__, "message": str(exc)}, sort_keys=True
            )
            + "\n"
        )
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
