"""Command-line front end: analyze, rank, simulate, selftest.

Exit codes: 0 success, 1 internal disagreement or failed self-test,
2 input error (unreadable or malformed instance, bad arguments).
"""
from __future__ import annotations

import argparse
import json
import sys

from .catalog import analyze, rank, selftest
from .graphs import GraphError, parse_instance
from .ratlin import SingularMatrixError, format_rational
from .simulate import simulate, write_trace_csv
from .stationary import stationary_state


def _fr(x):
    """Rational as exact-fraction string."""
    return format_rational(x)


def _approx(x):
    return float(x.numerator) / float(x.denominator)


def _matrix_strs(m):
    return [[_fr(x) for x in row] for row in m.data]


def _load_instance(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc.strerror}", file=sys.stderr)
        raise SystemExit(2)
    try:
        return parse_instance(text)
    except GraphError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(2)


def _instance_dict(inst):
    return {"n": inst.graph.n,
            "edges": [list(e) for e in inst.graph.edges],
            "boundary": list(inst.boundary),
            "inflow": [_fr(a) for a in inst.inflow],
            "z": inst.phase}


def cmd_analyze(args):
    inst = _load_instance(args.file)
    try:
        report = analyze(inst, simulate_steps=args.simulate)
    except SingularMatrixError as exc:
        print(f"error: stationary solve failed: {exc}", file=sys.stderr)
        return 1
    if args.json:
        payload = {
            "instance": _instance_dict(inst),
            "bipartite": report.bipartite,
            "partition": ({"X": sorted(report.partition.X),
                           "Y": sorted(report.partition.Y)}
                          if report.partition else None),
            "odd_cycle": list(report.odd_cycle) if report.odd_cycle else None,
            "psi": [{"origin": a[0], "terminus": a[1], "value": _fr(v),
                     "approx": _approx(v)}
                    for a, v in report.psi.items()],
            "energy": {r.name: (None if r.value is None else _fr(r.value))
                       for r in report.energy_routes},
            "routes_agree": report.routes_agree,
            "beta": [_fr(b) for b in report.beta],
            "sigma": _matrix_strs(report.sigma),
            "classification": report.classification,
            "audit_ok": None if report.audit is None else report.audit.ok,
            "factors": (None if report.factors is None else {
                "chi1": report.factors.chi1, "chi2": report.factors.chi2,
                "iota1": report.factors.iota1, "iota2": report.factors.iota2,
                "edge_count": report.factors.edge_count}),
            "simulation": report.simulation,
            "ok": report.ok,
        }
        print(json.dumps(payload, indent=2))
        return 0 if report.ok else 1
    g = inst.graph
    print(f"instance: n={g.n}, edges={list(g.edges)}")
    print(f"tails at {list(inst.boundary)}, inflow "
          f"({', '.join(_fr(a) for a in inst.inflow)}), z={inst.phase:+d}")
    if report.bipartite:
        print(f"bipartite: X={sorted(report.partition.X)} "
              f"Y={sorted(report.partition.Y)}")
    else:
        print(f"non-bipartite (odd cycle {list(report.odd_cycle)})")
    print("stationary state:")
    for a, v in report.psi.items():
        print(f"  {a[0]}->{a[1]}  {_fr(v):>10s}  ({_approx(v):+.6f})")
    print("energy:")
    for r in report.energy_routes:
        val = "MISMATCH" if r.value is None else \
            f"{_fr(r.value)} ({_approx(r.value):.6f})"
        print(f"  {r.name:22s} {val}")
    print("routes agree" if report.routes_agree else "ROUTE DISAGREEMENT")
    print(f"beta = ({', '.join(_fr(b) for b in report.beta)})")
    print("sigma =")
    for row in _matrix_strs(report.sigma):
        print("  [" + "  ".join(f"{x:>5s}" for x in row) + "]")
    if report.classification:
        print(f"scattering class: {report.classification}")
    if report.audit is not None:
        if report.audit.ok:
            print("Kirchhoff audit: all laws hold")
        else:
            names = ", ".join(c.name for c in report.audit.failures())
            print(f"Kirchhoff audit FAILED: {names}")
    if report.factors is not None:
        f = report.factors
        print(f"factors: chi1={f.chi1} chi2={f.chi2} "
              f"iota1={f.iota1} iota2={f.iota2}")
    if report.simulation is not None:
        s = report.simulation
        print(f"simulation: {s['steps']} steps, final residual "
              f"{s['final_residual']:.3e}, distance to exact "
              f"{s['distance_to_exact']:.3e}")
    return 0 if report.ok else 1


def cmd_rank(args):
    try:
        report = rank(args.n, args.z)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        payload = {
            "n": report.n, "z": report.z,
            "configurations": report.configurations,
            "classes": [{"edge_count": r.edge_count,
                         "bipartite": r.bipartite,
                         "comfort": _fr(r.comfort),
                         "approx": _approx(r.comfort),
                         "scattering": r.label,
                         "members": r.members,
                         "distances": sorted(r.distances),
                         "representative": {
                             "edges": [list(e) for e in r.representative[0].edges],
                             "boundary": list(r.representative[1])}}
                        for r in report.rows],
            "tie_groups": report.tie_groups,
            "class_maxima": [{"edge_count": m.edge_count,
                              "comfort": _fr(m.comfort),
                              "approx": _approx(m.comfort),
                              "edges": [list(e) for e in m.representative.edges],
                              "boundary": list(m.argmax_pair)}
                             for m in report.class_maxima],
        }
        print(json.dumps(payload, indent=2))
        return 0
    print(f"value classes for n={report.n}, z={report.z:+d} "
          f"({report.configurations} configurations):")
    print(f"{'#':>2s}  {'|E|':>3s}  {'bip':>3s}  {'comfort':>8s}  "
          f"{'approx':>8s}  {'scat':>4s}  {'members':>7s}")
    for i, r in enumerate(report.rows, 1):
        print(f"{i:>2d}  {r.edge_count:>3d}  {'T' if r.bipartite else 'F':>3s}"
              f"  {_fr(r.comfort):>8s}  {_approx(r.comfort):8.4f}"
              f"  {r.label:>4s}  {r.members:>7d}")
    ranking = []
    for group in report.tie_groups:
        ranking.append("{" + ", ".join(str(i + 1) for i in group) + "}")
    print("comfort ranking (descending, ties braced): " + " > ".join(ranking))
    print("per-shape maxima over boundary pairs:")
    for m in report.class_maxima:
        print(f"  |E|={m.edge_count}  edges={list(m.representative.edges)}  "
              f"max comfort {_fr(m.comfort)} ({_approx(m.comfort):.4f}) "
              f"at pair {m.argmax_pair}")
    return 0


def cmd_simulate(args):
    inst = _load_instance(args.file)
    if args.steps < 1:
        print("error: --steps must be at least 1", file=sys.stderr)
        return 2
    exact = stationary_state(inst)
    trace = simulate(inst, args.steps, exact=exact,
                     residual_stop=args.residual_stop)
    if args.out:
        write_trace_csv(trace, args.out)
        print(f"trace written to {args.out}")
    print(f"steps run: {trace.steps} (requested {args.steps})")
    if trace.converged_at is not None:
        print(f"residual dropped below threshold at step {trace.converged_at}")
    print(f"final residual: {trace.residuals[-1]:.6e}")
    print(f"sup-norm distance to exact stationary state: "
          f"{trace.final_distance:.6e}")
    return 0


def cmd_selftest(args):
    results = selftest()
    failed = 0
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{status}  {r.name:28s} ({r.seconds:6.2f}s)  {r.detail}")
        failed += not r.ok
    print(f"{len(results) - failed}/{len(results)} suites passed")
    return 0 if failed == 0 else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="grwalk",
        description="Exact analysis and float simulation of Grover walks "
                    "on finite graphs with semi-infinite tails.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full exact analysis of one instance")
    p.add_argument("file", help="instance file")
    p.add_argument("--simulate", type=int, metavar="T", default=None,
                   help="also run the float simulator for up to T steps")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("rank", help="value classes over all connected graphs")
    p.add_argument("--n", type=int, required=True, help="vertex count (2-5)")
    p.add_argument("--z", type=int, choices=(1, -1), default=-1,
                   help="coin phase, +1 or -1")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(fn=cmd_rank)

    p = sub.add_parser("simulate", help="float time-domain simulation")
    p.add_argument("file", help="instance file")
    p.add_argument("--steps", type=int, required=True, help="step count")
    p.add_argument("--out", metavar="CSV", default=None,
                   help="write the per-step trace to this CSV file")
    p.add_argument("--residual-stop", type=float, default=1e-10,
                   help="early-stop residual threshold (default 1e-10)")
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("selftest", help="run every invariant suite")
    p.set_defaults(fn=cmd_selftest)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
