"""Command-line front end.

Exit codes for ``solve``: 0 success, 2 unreadable input, 3 infeasible
instance, 4 solver not applicable to the input. ``verify`` exits 0 when
the certificate is accepted, 1 when rejected and 2 when malformed.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import io, kernels
from ._exact import fraction_str
from .arcs import ArcInstance, solve_arcs
from .assignment import assign_slots
from .geometry import InfeasibleError, WeightedInstance, apply_dispersal, class_check, intersection_graph, weighted_cost
from .hardness import (
    ThreePartitionInstance,
    gen_2d_instance,
    gen_interval_instance,
    valid_triples,
)
from .oracle import (
    MAX_ARCS,
    MAX_INTERVALS,
    brute_force_arcs,
    brute_force_intervals,
    certificate_from_dispersal,
    verify_certificate,
)
from .svg import render_svg
from .unit import disperse_unit_intervals
from .weighted import solve_clique, solve_xp

EXIT_PARSE, EXIT_INFEASIBLE, EXIT_MISMATCH = 2, 3, 4
SOLVERS = ("unit-intervals", "arcs", "clique", "xp", "oracle")


class Mismatch(Exception):
    """The chosen solver does not handle this instance."""


def _is_unit_intervals(inst):
    return inst.kind in ("unit_interval", "interval") and all(o.length == 1 for o in inst.objects)


def run_solver(inst: WeightedInstance, solver: str) -> tuple[tuple, dict]:
    extra: dict = {}
    if solver == "arcs" or (solver == "oracle" and inst.kind == "unit_arc"):
        if inst.kind != "unit_arc":
            raise Mismatch("the arc solver needs unit arcs")
        if not inst.is_unweighted:
            raise Mismatch("the arc solver handles unweighted arcs only")
        if solver == "oracle":
            if inst.n > MAX_ARCS:
                raise Mismatch(f"the oracle handles at most {MAX_ARCS} arcs")
            return brute_force_arcs(inst)[0], extra
        sol = solve_arcs(ArcInstance.from_instance(inst))
        extra["shifts"] = sol.shifts
        return sol.dispersal, extra
    if not _is_unit_intervals(inst):
        raise Mismatch(f"solver {solver!r} needs unit intervals, got {inst.kind}")
    if solver == "unit-intervals":
        if not inst.is_unweighted:
            raise Mismatch("the unit-interval solver is unweighted; use xp or clique")
        return disperse_unit_intervals(inst.centres), extra
    if solver == "clique":
        try:
            sol = solve_clique(inst)
        except ValueError as exc:
            raise Mismatch(str(exc)) from exc
        extra["anchor"] = sol.anchor
        return sol.dispersal, extra
    if solver == "xp":
        sol = solve_xp(inst)
        extra.update(k=sol.k, fixed=list(sol.fixed), assignments=sol.invocations)
        return sol.dispersal, extra
    if solver == "oracle":
        if inst.n > MAX_INTERVALS:
            raise Mismatch(f"the oracle handles at most {MAX_INTERVALS} intervals")
        return brute_force_intervals(inst)[0], extra
    raise Mismatch(f"unknown solver {solver!r}")


def solve_report(doc, inst: WeightedInstance, solver: str) -> dict:
    """Run ``solver`` and re-check that the dispersed instance is edgeless."""
    t0 = time.perf_counter()
    dispersal, extra = run_solver(inst, solver)
    wall = time.perf_counter() - t0
    cost = weighted_cost(inst.weights, dispersal, inst.metric)
    feasible = class_check(intersection_graph(apply_dispersal(inst, dispersal)), "edgeless")
    report = {
        "input_digest": io.digest(doc),
        "solver": solver,
        "backend": kernels.BACKEND,
        "n": inst.n,
        "dispersal": io.dispersal_to_doc(dispersal),
        "cost": fraction_str(cost) if isinstance(cost, Fraction) else repr(cost),
        "cost_decimal": float(cost),
        "wall_time": wall,
        "feasible": feasible,
    }
    report.update(extra)
    return report


def _read_doc(path):
    if path == "-":
        return io.loads(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return io.loads(fh.read())


def _write(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _err(msg):
    print(f"error: {msg}", file=sys.stderr)


def cmd_solve(args) -> int:
    try:
        doc = _read_doc(args.file)
        inst = io.instance_from_doc(doc)
    except (OSError, ValueError) as exc:
        _err(exc)
        return EXIT_PARSE
    if args.metric:
        inst = WeightedInstance(inst.objects, inst.weights, inst.kind, args.metric)
    try:
        report = solve_report(doc, inst, args.solver)
    except InfeasibleError as exc:
        _err(exc)
        return EXIT_INFEASIBLE
    except Mismatch as exc:
        _err(exc)
        return EXIT_MISMATCH
    if args.certificate:
        if not _is_unit_intervals(inst):
            _err("certificates cover unit intervals only")
            return EXIT_MISMATCH
        disp = io.dispersal_from_doc(report["dispersal"])
        cert = certificate_from_dispersal(inst.centres, inst.weights, disp)
        _write(io.dumps(io.certificate_to_doc(cert)) + "\n", args.certificate)
    _write(io.dumps(report) + "\n", args.out)
    return 0 if report["feasible"] else 1


def cmd_oracle(args) -> int:
    args.solver = "oracle"
    args.certificate = None
    return cmd_solve(args)


def cmd_verify(args) -> int:
    try:
        cert = io.certificate_from_doc(_read_doc(args.file))
    except (OSError, ValueError) as exc:
        _err(exc)
        return EXIT_PARSE
    ok = verify_certificate(cert)
    print(f"cost {fraction_str(cert.cost())} threshold {fraction_str(cert.threshold)}: {'accept' if ok else 'reject'}")
    return 0 if ok else 1


def cmd_assign(args) -> int:
    try:
        doc = _read_doc(args.file)
        inst = io.instance_from_doc(doc)
        slots = [io._num(s.strip(), "slots") for s in args.slots.split(",") if s.strip()]
        result = assign_slots(inst, slots)
    except InfeasibleError as exc:
        _err(exc)
        return EXIT_INFEASIBLE
    except (OSError, ValueError) as exc:
        _err(exc)
        return EXIT_PARSE
    out = {
        "slots": [i + 1 for i in result.slots],
        "dispersal": io.dispersal_to_doc(result.dispersal),
        "cost": fraction_str(result.cost),
    }
    _write(io.dumps(out) + "\n", args.out)
    return 0


def _three_partition(args) -> ThreePartitionInstance:
    if args.random_3p:
        if args.m is None or args.L is None:
            raise ValueError("--random-3p needs --m and --L")
        return ThreePartitionInstance.random_yes(args.m, args.L, args.seed)
    if args.L is None:
        raise ValueError("--L is required")
    if args.A is None:
        # first valid triple, repeated: a yes-instance
        triples = valid_triples(args.L)
        if not triples:
            raise ValueError(f"no valid triple sums to {args.L}")
        return ThreePartitionInstance(triples[0] * (args.m or 1), args.L)
    values = tuple(int(a) for a in args.A.split(","))
    tp = ThreePartitionInstance(values, args.L)
    if args.m is not None and args.m != tp.m:
        raise ValueError(f"--m {args.m} but {len(values)} values given")
    return tp


def cmd_generate(args) -> int:
    try:
        tp = _three_partition(args)
        if args.kind == "3p-intervals":
            inst = gen_interval_instance(tp, k=args.k, integer_scale=args.scale_integers)
        else:
            shape = "square" if args.kind == "3p-squares" else "disk"
            resolution = None if args.full else args.resolution
            inst = gen_2d_instance(tp, shape, args.delta, resolution, args.fillers)
    except ValueError as exc:
        _err(exc)
        return EXIT_PARSE
    if args.out in (None, "-"):
        count = io.write_hard_instance(inst, sys.stdout)
        stream = sys.stderr
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            count = io.write_hard_instance(inst, fh)
        stream = sys.stdout
    print(f"T={fraction_str(inst.threshold)} objects={count} values={','.join(map(str, tp.values))}", file=stream)
    return 0


def cmd_render(args) -> int:
    try:
        inst = io.instance_from_doc(_read_doc(args.file))
        disp = io.dispersal_from_doc(_read_doc(args.dispersal)) if args.dispersal else None
        svg = render_svg(inst, disp)
    except (OSError, ValueError, TypeError) as exc:
        _err(exc)
        return EXIT_PARSE
    _write(svg, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dispersal", description="Move geometric objects apart at minimum total cost.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve an instance file and print a JSON report")
    s.add_argument("file", help="instance JSON ('-' for stdin)")
    s.add_argument("--solver", choices=SOLVERS, default="xp")
    s.add_argument("--metric", choices=("L1", "L2"))
    s.add_argument("--certificate", metavar="PATH", help="also write a certificate for the result")
    s.add_argument("--out", help="report path (default stdout)")
    s.set_defaults(func=cmd_solve)

    o = sub.add_parser("oracle", help="brute-force optimum of a tiny instance")
    o.add_argument("file")
    o.add_argument("--metric", choices=("L1", "L2"))
    o.add_argument("--out")
    o.set_defaults(func=cmd_oracle)

    v = sub.add_parser("verify", help="check a certificate")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("assign", help="assign unit intervals to explicit slots")
    a.add_argument("file")
    a.add_argument("--slots", required=True, help="comma-separated slot centres")
    a.add_argument("--out")
    a.set_defaults(func=cmd_assign)

    g = sub.add_parser("generate", help="build a 3-Partition reduction instance")
    g.add_argument("kind", choices=("3p-intervals", "3p-squares", "3p-disks"))
    g.add_argument("--A", help="comma-separated values (default: a yes-instance)")
    g.add_argument("--L", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--random-3p", action="store_true", help="draw a random yes-instance")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--k", type=int, help="no-k-clique variant (intervals)")
    g.add_argument("--scale-integers", action="store_true", help="scale intervals to integer coordinates")
    g.add_argument("--delta", type=int, help="element size offset in 2-D (default 4L)")
    g.add_argument("--resolution", type=int, default=1, help="barrier cells per unit in 2-D (default 1)")
    g.add_argument("--full", action="store_true", help="2-D barrier cells of side 1/T")
    g.add_argument("--fillers", action="store_true", help="add filler strips to 2-D free spaces")
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("render", help="draw an instance (and a dispersal) as SVG")
    r.add_argument("file")
    r.add_argument("--dispersal", help="dispersal JSON or solve report")
    r.add_argument("--out")
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
