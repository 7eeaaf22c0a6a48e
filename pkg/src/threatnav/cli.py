"""Command-line interface: boundary export, planning, comparison, verification.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 infeasible scenario, 4 planner did not converge (partial output is
still written). All numeric output uses 9 significant digits.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .circumnav import circumnavigate, percent_difference, standard_specs
from .errors import InfeasibleError
from .geometry import Point2, wrap_angle
from .planner import clearances_along, plan
from .pursuit import PursuerThreat, sample_boundary
from .scenario_io import ScenarioError, load_scenario
from .turret import TurretThreat, sample_turret_boundary
from .verification import pursuit_equivalence_sweep, turret_equivalence_sweep


def _g(value: float) -> str:
    return f"{value:.9g}"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="threatnav",
        description="Threat-aware navigation: engagement zones, planning, baselines.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ez = sub.add_parser("ez-boundary", help="sample an engagement-zone boundary")
    ez.add_argument("--kind", choices=["pursuer", "turret"], required=True)
    ez.add_argument("--mu", type=float, required=True)
    ez.add_argument("--R", type=float, required=True, dest="engagement_range")
    ez.add_argument("--r", type=float, default=0.0, dest="capture_radius")
    ez.add_argument("--theta0", type=float, default=0.0, help="turret initial look angle")
    ez.add_argument("--heading", type=float, default=0.0, help="agent heading")
    ez.add_argument("--px", type=float, default=0.0, help="threat x position")
    ez.add_argument("--py", type=float, default=0.0, help="threat y position")
    ez.add_argument("--n", type=int, default=360)
    _output_args(ez)

    pl = sub.add_parser("plan", help="plan a minimum-time path from a scenario file")
    pl.add_argument("scenario", type=Path)
    _output_args(pl)

    cmp_ = sub.add_parser("compare", help="compare the zone-based plan with circumnavigation")
    cmp_.add_argument("scenario", type=Path)
    _output_args(cmp_)

    ver = sub.add_parser("verify", help="run analytic-vs-oracle equivalence sweeps")
    ver.add_argument("--kind", choices=["pursuer", "turret", "both"], default="both")
    ver.add_argument("--samples", type=int, default=1000)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument(
        "--corrupt-rho",
        type=float,
        default=0.0,
        help="test hook: fractional corruption of the analytic boundary",
    )
    return parser


def _output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output-dir", type=Path, default=Path("."))
    p.add_argument("--format", choices=["csv", "json"], default=None, help="restrict outputs")


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = {
        "ez-boundary": _cmd_ez_boundary,
        "plan": _cmd_plan,
        "compare": _cmd_compare,
        "verify": _cmd_verify,
    }[args.command]
    return handler(args)


def entrypoint() -> None:
    sys.exit(main())


def _want(args, fmt: str) -> bool:
    return args.format is None or args.format == fmt


def _cmd_ez_boundary(args) -> int:
    if args.n < 3:
        print("error: --n must be at least 3", file=sys.stderr)
        return 2
    try:
        rows, summary = _boundary_rows(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    args.output_dir.mkdir(parents=True, exist_ok=True)
    if _want(args, "csv"):
        path = args.output_dir / "ez_boundary.csv"
        with path.open("w") as fh:
            fh.write("xi_or_gamma,rho_or_x,y,world_x,world_y\n")
            for row in rows:
                fh.write(",".join(_g(v) for v in row) + "\n")
        print(f"wrote {path}")
    if _want(args, "json"):
        path = args.output_dir / "ez_boundary.json"
        path.write_text(json.dumps(summary, indent=2) + "\n")
        print(f"wrote {path}")
    return 0


def _boundary_rows(args):
    pos = Point2(args.px, args.py)
    ch, sh = math.cos(args.heading), math.sin(args.heading)
    rows = []
    if args.kind == "pursuer":
        threat = PursuerThreat(
            position=pos,
            mu=args.mu,
            engagement_range=args.engagement_range,
            capture_radius=args.capture_radius,
        )
        for s in sample_boundary(threat, args.heading, args.n):
            frame_y = s.rho * math.sin(math.pi - s.xi)
            rows.append((s.xi, s.rho, frame_y, s.point.x, s.point.y))
        dists = [r[1] for r in rows]
        params = {
            "mu": args.mu,
            "range": args.engagement_range,
            "capture_radius": args.capture_radius,
            "heading": args.heading,
            "position": [pos.x, pos.y],
        }
    else:
        threat = TurretThreat(
            position=pos,
            look_angle=wrap_angle(args.theta0 - args.heading),
            mu=args.mu,
            engagement_range=args.engagement_range,
        )
        for s in sample_turret_boundary(threat, args.n):
            wx = pos.x + ch * s.a0.x - sh * s.a0.y
            wy = pos.y + sh * s.a0.x + ch * s.a0.y
            rows.append((s.gamma, s.a0.x, s.a0.y, wx, wy))
        dists = [math.hypot(r[1], r[2]) for r in rows]
        params = {
            "mu": args.mu,
            "range": args.engagement_range,
            "look_angle": args.theta0,
            "heading": args.heading,
            "position": [pos.x, pos.y],
        }
    summary = {
        "kind": args.kind,
        "parameters": params,
        "n": args.n,
        "extrema": {
            "max_world_distance": float(max(dists)),
            "min_world_distance": float(min(dists)),
        },
    }
    return rows, summary


def _load(args):
    try:
        return load_scenario(args.scenario), 0
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, 2
    except json.JSONDecodeError as exc:
        print(
            f"error: {args.scenario}: line {exc.lineno} column {exc.colno}: {exc.msg}",
            file=sys.stderr,
        )
        return None, 2
    except ScenarioError as exc:
        print(f"error: {args.scenario}: {exc}", file=sys.stderr)
        return None, 2


def _cmd_plan(args) -> int:
    doc, code = _load(args)
    if doc is None:
        return code
    try:
        result = plan(doc.scenario)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 3
    _write_plan_outputs(args, doc, result)
    if not result.converged:
        print("planner did not converge; partial output written", file=sys.stderr)
        return 4
    return 0


def _write_plan_outputs(args, doc, result) -> None:
    args.output_dir.mkdir(parents=True, exist_ok=True)
    traj = result.trajectory
    threats = doc.scenario.threats
    if _want(args, "csv"):
        clear = clearances_along(traj, threats)
        psi_node = (
            np.append(traj.headings, traj.headings[-1]) if len(traj.headings) else [0.0]
        )
        path = args.output_dir / "trajectory.csv"
        with path.open("w") as fh:
            cols = ["t", "x", "y", "psi"] + [f"clearance_{j}" for j in range(len(threats))]
            fh.write(",".join(cols) + "\n")
            for i in range(len(traj.points)):
                vals = [traj.times[i], traj.points[i, 0], traj.points[i, 1], psi_node[i]]
                vals.extend(clear[i])
                fh.write(",".join(_g(float(v)) for v in vals) + "\n")
        print(f"wrote {path}")
    if _want(args, "json"):
        path = args.output_dir / "result.json"
        payload = {
            "t_f": result.t_f,
            "converged": result.converged,
            "min_clearance": None if math.isinf(result.min_clearance) else result.min_clearance,
            "iterations": result.iterations,
        }
        path.write_text(json.dumps(payload, indent=2) + "\n")
        print(f"wrote {path}")


def _cmd_compare(args) -> int:
    doc, code = _load(args)
    if doc is None:
        return code
    scen = doc.scenario
    pursuers = [t for t in scen.threats if isinstance(t, PursuerThreat)]
    if len(pursuers) != 1 or len(scen.threats) != 1:
        print("error: compare requires a scenario with exactly one pursuer", file=sys.stderr)
        return 2
    threat = pursuers[0]
    try:
        result = plan(scen)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 3

    rows = []
    for spec in standard_specs(threat):
        circ = circumnavigate(scen.agent.start, scen.agent.goal, threat.position, spec, scen.agent.speed)
        rows.append((spec.label, spec.radius, circ.t_f, result.t_f, percent_difference(result.t_f, circ.t_f)))

    header = f"{'label':<8}{'radius':>14}{'t_circumnav':>16}{'t_ez':>14}{'pct_diff':>12}"
    print(header)
    for label, radius, t_c, t_ez, pct in rows:
        print(f"{label:<8}{_g(radius):>14}{_g(t_c):>16}{_g(t_ez):>14}{_g(pct):>12}")

    args.output_dir.mkdir(parents=True, exist_ok=True)
    if _want(args, "csv"):
        path = args.output_dir / "compare.csv"
        with path.open("w") as fh:
            fh.write("label,radius,t_circumnav,t_ez,percent_difference\n")
            for label, radius, t_c, t_ez, pct in rows:
                fh.write(f"{label}," + ",".join(_g(v) for v in (radius, t_c, t_ez, pct)) + "\n")
        print(f"wrote {path}")
    if _want(args, "json"):
        path = args.output_dir / "compare.json"
        payload = [
            {
                "label": label,
                "radius": radius,
                "t_circumnav": t_c,
                "t_ez": t_ez,
                "percent_difference": pct,
            }
            for label, radius, t_c, t_ez, pct in rows
        ]
        path.write_text(json.dumps(payload, indent=2) + "\n")
        print(f"wrote {path}")
    if not result.converged:
        return 4
    return 0


def _cmd_verify(args) -> int:
    if args.samples < 1:
        print("error: --samples must be positive", file=sys.stderr)
        return 2
    total = 0
    results = []
    if args.kind in ("pursuer", "both"):
        results.extend(
            pursuit_equivalence_sweep(
                samples_per_mu=args.samples,
                seed=args.seed,
                rho_scale=1.0 + args.corrupt_rho,
            )
        )
    if args.kind in ("turret", "both"):
        results.extend(
            turret_equivalence_sweep(
                samples_per_angle=args.samples,
                seed=args.seed,
                threshold_shift=args.corrupt_rho,
            )
        )
    for res in results:
        total += res.disagreements
        print(f"{res.label}: {res.disagreements} disagreements in {res.samples} samples")
    print(f"total disagreements: {total}")
    return 0 if total == 0 else 1


if __name__ == "__main__":
    entrypoint()
