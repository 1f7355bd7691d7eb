"""Command-line front end: frame transforms, free-particle simulation,
light-speed tables, spin tensors, localized states and verification suites.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import __version__
from .classical import PhaseSpacePoint, covariant_momentum, integrate_trajectory, trajectory_rows
from .errors import CTQMError
from .kinematics import (
    CONTRAVARIANT,
    FourVector,
    FourVelocity,
    boost_from_velocity,
    boost_transform,
    closed_path_average_speed,
    ep_from_ct,
    light_speed,
    rotation_transform,
    transform_vector,
)
from .representation import INVARIANT, STANDARD
from .spin import rotation_from_axis_angle, spin_dimension, spin_square, spin_tensor
from .verification import SUITES, run_suite
from .wavepacket import MomentumGrid, localized_wavefunction, position_apply, position_apply_invariant

SCHEMA_VERSION = 1


def _parse_floats(text: str, n: int, what: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != n:
        raise argparse.ArgumentTypeError(f"{what} needs {n} comma-separated numbers")
    try:
        return np.array([float(p) for p in parts])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad {what}: {exc}") from exc


def _vec3(text):
    return _parse_floats(text, 3, "vector")


def _vec4(text):
    return _parse_floats(text, 4, "four-vector")


def _rot_spec(text):
    return _parse_floats(text, 4, "rotation (axis, angle)")


def _grid_spec(text):
    v = _parse_floats(text, 3, "grid (lo, hi, n)")
    return float(v[0]), float(v[1]), int(v[2])


def _spin_value(text):
    if "/" in text:
        num, den = text.split("/", 1)
        return float(num) / float(den)
    return float(text)


def _default_seed() -> int:
    return int(os.environ.get("CT_SEED", "0"))


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _emit_json(payload: dict, out_path: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_transform(args) -> int:
    u = FourVelocity.from_space(args.u)
    x = FourVector(args.x, CONTRAVARIANT, u)
    if args.boost_v is not None and args.rot is not None:
        print("error: choose one of --boost-v / --rot", file=sys.stderr)
        return 2
    if args.from_ep:
        from .kinematics import ct_from_ep

        x = ct_from_ep(x, u)
    if args.boost_v is not None:
        D = boost_transform(boost_from_velocity(args.boost_v, u), u)
        x = transform_vector(D, x)
        u_out = D.target_u
    elif args.rot is not None:
        axis, angle = args.rot[:3], args.rot[3]
        D = rotation_transform(rotation_from_axis_angle(axis, angle), u)
        x = transform_vector(D, x)
        u_out = D.target_u
    else:
        u_out = u
    x_ep = ep_from_ct(x, u_out)
    if args.json:
        _emit_json(
            {
                "schema": SCHEMA_VERSION,
                "command": "transform",
                "u": u.components.tolist(),
                "u_target": u_out.components.tolist(),
                "x_ct": x.components.tolist(),
                "x_ep": x_ep.components.tolist(),
            },
            args.out,
        )
    else:
        print("x_ct =", " ".join(_fmt(v) for v in x.components))
        print("x_ep =", " ".join(_fmt(v) for v in x_ep.components))
        print("u'   =", " ".join(_fmt(v) for v in u_out.components))
    return 0


def cmd_simulate(args) -> int:
    u = FourVelocity.from_space(args.u)
    if (args.k is None) == (args.v is None):
        print("error: give exactly one of --k / --v", file=sys.stderr)
        return 2
    if args.v is not None:
        k = covariant_momentum(u, args.v, args.m)
        kbreve = k[1:]
    else:
        kbreve = args.k
    p0 = PhaseSpacePoint.on_shell(args.x0, kbreve, u, args.m)
    dt = args.dt if args.dt is not None else args.t / 100.0
    points = integrate_trajectory(p0, args.t, dt)
    rows = list(trajectory_rows(points, args.m))
    target = open(args.csv, "w", newline="") if args.csv else sys.stdout
    try:
        writer = csv.writer(target)
        writer.writerow(["t", "x1", "x2", "x3", "k1", "k2", "k3", "k0", "shell_residual"])
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    finally:
        if args.csv:
            target.close()
    print(f"final shell residual: {rows[-1][-1]:.3e}", file=sys.stderr)
    return 0


def cmd_lightspeed(args) -> int:
    u = FourVelocity.from_space(args.u)
    if (args.dir is None) == (args.path is None):
        print("error: give exactly one of --dir / --path", file=sys.stderr)
        return 2
    if args.dir is not None:
        n = np.asarray(args.dir, dtype=float)
        norm = np.linalg.norm(n)
        if norm == 0.0:
            print("error: zero direction", file=sys.stderr)
            return 2
        n = n / norm
        forward, round_trip = light_speed(u, n)
        backward, _ = light_speed(u, -n)
        if args.json:
            _emit_json(
                {
                    "schema": SCHEMA_VERSION,
                    "command": "lightspeed",
                    "direction": n.tolist(),
                    "one_way_forward": forward,
                    "one_way_backward": backward,
                    "round_trip_average": round_trip,
                },
                args.out,
            )
        else:
            print(f"one-way +n : {_fmt(forward)}")
            print(f"one-way -n : {_fmt(backward)}")
            print(f"round trip : {_fmt(round_trip)}")
        return 0
    vertices = [_parse_floats(part, 3, "vertex") for part in args.path.split(";") if part]
    if len(vertices) < 2:
        print("error: path needs at least two vertices", file=sys.stderr)
        return 2
    speeds = []
    for a, b in zip(vertices, vertices[1:] + vertices[:1]):
        seg = np.asarray(b) - np.asarray(a)
        length = np.linalg.norm(seg)
        if length == 0.0:
            print("error: zero-length path segment", file=sys.stderr)
            return 2
        one_way, _ = light_speed(u, seg / length)
        speeds.append(one_way)
    avg = closed_path_average_speed(u, vertices)
    if args.json:
        _emit_json(
            {
                "schema": SCHEMA_VERSION,
                "command": "lightspeed",
                "segment_speeds": speeds,
                "closed_path_average": avg,
            },
            args.out,
        )
    else:
        for i, c in enumerate(speeds):
            print(f"segment {i}: {_fmt(c)}")
        print(f"closed-path average: {_fmt(avg)}")
    return 0


def cmd_verify(args) -> int:
    report = run_suite(args.suite, seed=args.seed, n_cases=args.n)
    _emit_json(report.to_json_dict(), args.out)
    for e in report.entries:
        flag = "pass" if e.passed else "FAIL"
        print(
            f"[{flag}] {e.test_id}: residual {e.residual:.3e} (tol {e.tolerance:g})",
            file=sys.stderr,
        )
    print(f"suite '{args.suite}' finished in {report.duration_s:.2f} s", file=sys.stderr)
    return 0 if report.passed else 1


def cmd_spin(args) -> int:
    u = FourVelocity.from_space(args.u)
    s = args.s
    tensor = spin_tensor(u, s)
    d = spin_dimension(s)
    sq = spin_square(u, s)
    residual = float(np.max(np.abs(sq - s * (s + 1.0) * np.eye(d))))
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "spin",
        "u": u.components.tolist(),
        "s": s,
        "spin_tensor": tensor.to_json_dict()["S"],
        "spin_square_residual": residual,
    }
    if args.json:
        _emit_json(payload, args.out)
    else:
        for i in range(3):
            for j in range(i + 1, 3):
                print(f"S_{i + 1}{j + 1}(u) =")
                for row in tensor.S[i, j]:
                    print("   ", "  ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in row))
        print(f"spin-square residual vs s(s+1) I: {residual:.3e}")
    return 0


def cmd_localize(args) -> int:
    u = FourVelocity.from_space(args.u)
    lo, hi, npts = args.grid
    grid = MomentumGrid.line(lo, hi, npts, periodic=args.periodic)
    measure = INVARIANT if args.invariant else STANDARD
    chi = localized_wavefunction(args.xi, args.tau, args.time, grid, u, args.m, measure)
    if measure == STANDARD:
        out = position_apply(chi, 0)
    else:
        out = position_apply_invariant(chi, 0)
    eigen_res = np.abs(out.values - args.xi[0] * chi.values)
    target = open(args.csv, "w", newline="") if args.csv else sys.stdout
    try:
        writer = csv.writer(target)
        writer.writerow(["k1", "abs_psi", "phase", "eigen_residual"])
        for k1, val, res in zip(grid.k[0], chi.values, eigen_res):
            writer.writerow([_fmt(k1), _fmt(abs(val)), _fmt(np.angle(val)), f"{res:.6e}"])
    finally:
        if args.csv:
            target.close()
    print(f"max eigen-residual (axis 1): {float(np.max(eigen_res)):.3e}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctqm",
        description="Relativistic kinematics and quantum mechanics in the "
        "Chang-Tangherlini synchronization.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="apply a boost/rotation/EP conversion to a four-vector")
    p.add_argument("--u", type=_vec3, default=np.zeros(3), help="space part of the frame four-velocity")
    p.add_argument("--x", type=_vec4, required=True, help="contravariant coordinates x0,x1,x2,x3")
    p.add_argument("--boost-v", type=_vec3, default=None, help="boost coordinate velocity")
    p.add_argument("--rot", type=_rot_spec, default=None, help="rotation axis and angle: ax,ay,az,theta")
    p.add_argument("--from-ep", action="store_true", help="interpret --x as EP coordinates")
    p.add_argument("--to-ep", action="store_true", help="no-op marker; EP output is always printed")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None, help="write JSON to a file")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("simulate", help="integrate a free-particle trajectory")
    p.add_argument("--u", type=_vec3, default=np.zeros(3))
    p.add_argument("--k", type=_vec3, default=None, help="covariant spatial momentum k1,k2,k3")
    p.add_argument("--v", type=_vec3, default=None, help="initial coordinate velocity")
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--t", type=float, required=True, help="final time")
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--x0", type=_vec4, default=np.zeros(4))
    p.add_argument("--csv", default=None, help="write trajectory CSV to a file")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("lightspeed", help="one-way and closed-path light speeds")
    p.add_argument("--u", type=_vec3, default=np.zeros(3))
    p.add_argument("--dir", type=_vec3, default=None)
    p.add_argument("--path", default=None, help="polygon vertices 'x,y,z;x,y,z;...'")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_lightspeed)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--out", default=None, help="write the JSON report to a file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spin", help="print the covariant spin tensor at a frame")
    p.add_argument("--u", type=_vec3, default=np.zeros(3))
    p.add_argument("--s", type=_spin_value, required=True, help="spin, e.g. 1/2 or 1.5")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_spin)

    p = sub.add_parser("localize", help="sample a localized state and its position residual")
    p.add_argument("--u", type=_vec3, default=np.zeros(3))
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--xi", type=_vec3, default=np.zeros(3), help="localization point")
    p.add_argument("--tau", type=float, default=0.0)
    p.add_argument("--time", type=float, default=0.0)
    p.add_argument("--grid", type=_grid_spec, default=(-8.0, 8.0, 257))
    p.add_argument("--periodic", action="store_true")
    p.add_argument("--invariant", action="store_true", help="use the invariant measure")
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_localize)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "seed", None) is None and args.command == "verify":
        args.seed = _default_seed()
    try:
        return args.func(args)
    except CTQMError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
