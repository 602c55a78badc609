"""Command-line front end: ``ihva <subcommand> ...``.

All randomness comes from one ``--seed``. Task ``i`` of a batch uses the
seed sequence ``[seed, i, ...]``, so results do not depend on the number of
workers or the order they finish in. ``IHVA_WORKERS`` sets the default
worker count.

Exit codes: 0 success, 2 bad usage or input, 3 resource guard, 4 numerical
failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import analysis, graph as gc, oracle
from .arrangement import arrange_round, stagger_arrangement
from .circuit import build, build_ihva_stagger, build_ihva_tree
from .exceptions import IhvaError, NumericalError, ParameterError, ResourceError
from .simulator import MAX_QUBITS, check_qubits
from .vqe import OptimizerConfig, minimize

WORKERS_ENV = "IHVA_WORKERS"
EXIT_USAGE, EXIT_RESOURCE, EXIT_NUMERICAL = 2, 3, 4


def int_list(text):
    """``"6,8,10"`` or ``"8..24"`` (inclusive) or a mix like ``"4,8..10"``."""
    out = []
    for part in text.split(","):
        lo, sep, hi = part.partition("..")
        try:
            out += list(range(int(lo), int(hi) + 1)) if sep else [int(part)]
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None
    return out


def _pool_map(fn, items, workers):
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))  # map keeps input order


def _emit(text, path):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def make_graph(family, n, d=3, q=0.5, seed=None, connected=True, signed=False, n_left=None):
    if family == "regular":
        g = gc.random_regular(n, d, seed=seed)
    elif family == "tree":
        g = gc.random_tree(n, seed=seed)
    elif family == "er":
        g = gc.erdos_renyi(n, q, seed=seed, connected=connected)
    elif family == "bipartite":
        left = n_left if n_left is not None else n // 2
        g = gc.random_bipartite(left, n - left, q, seed=seed)
    elif family == "heavyhex":
        g = gc.heavy_hex_patch(n, seed=seed)
    else:
        raise ParameterError(f"unknown graph family {family!r}")
    if signed:
        g = gc.assign_random_signs(g, seed=np.random.SeedSequence(seed).spawn(1)[0])
    return g


# ---- subcommands -----------------------------------------------------------


def cmd_generate(args):
    g = make_graph(args.family, args.n, args.d, args.q, args.seed, args.connected, args.signed, args.n_left)
    if args.output:
        out = Path(args.output)
        gc.save_edge_list(g, out)
        gc.save_json(g, out.with_suffix(".json"))
    else:
        _emit(gc.format_edge_list(g), None)


def cmd_arrange(args):
    g = gc.load_graph(args.graph)
    arranged = stagger_arrangement(g) if args.layout == "stagger" else arrange_round(g, seed=args.seed if args.random_roots else None)
    _emit(_dumps({"layout": args.layout, **arranged.to_dict()}), args.output)


def _c_max(g):
    return oracle.brute_force_maxcut(g).cut_value if g.n <= oracle.BRUTE_FORCE_LIMIT else None


def _config(args, seed):
    return OptimizerConfig(method=args.method, max_iters=args.max_iters, restarts=args.restarts,
                           init=args.init, objective=args.objective, seed=seed, shots=args.shots)


def cmd_optimize(args):
    g = gc.load_graph(args.graph)
    check_qubits(g.n)
    circuit = build(args.ansatz, g, args.p)
    c_max = _c_max(g)
    result = minimize(circuit, g, _config(args, args.seed), c_max=c_max if c_max and c_max > 0 else None)
    result.metadata["graph_file"] = str(args.graph)
    _emit(result.to_json() + "\n", args.output)
    if args.history:
        Path(args.history).write_text(result.history_csv())


def _compare_task(task):
    i, a = task
    g = make_graph(a["family"], a["n"], a["d"], a["q"], [a["seed"], i, 0])
    c_max = oracle.brute_force_maxcut(g).cut_value
    cfg = OptimizerConfig(objective=a["objective"], restarts=a["restarts"], max_iters=a["max_iters"], seed=[a["seed"], i, 1])
    run = minimize(build_ihva_tree(g, a["p"]), g, cfg, c_max=c_max)
    gw = [oracle.gw_maxcut(g, seed=[a["seed"], i, 2, k], rounding_trials=a["gw_trials"])
          for k in range(a["gw_repeats"])]
    best_gw = max(gw, key=lambda s: s.cut_value)
    greedy = oracle.greedy_maxcut(g, seed=[a["seed"], i, 3])
    for s in (best_gw, greedy):
        if oracle.cut_value(g, s.assignment) != s.cut_value:
            raise NumericalError(f"recounted cut disagrees on graph {i}")
    return [
        {"graph_id": i, "method": f"ihva-tree-p{a['p']}", "alpha": run.approx_ratio, "cut": run.best_cut, "c_max": c_max},
        {"graph_id": i, "method": "gw", "alpha": best_gw.cut_value / c_max, "cut": best_gw.cut_value, "c_max": c_max},
        {"graph_id": i, "method": "greedy", "alpha": greedy.cut_value / c_max, "cut": greedy.cut_value, "c_max": c_max},
    ]


def cmd_compare(args):
    spec = {k: getattr(args, k) for k in ("family", "n", "d", "q", "seed", "p", "objective", "restarts", "max_iters", "gw_repeats", "gw_trials")}
    if args.n > oracle.BRUTE_FORCE_LIMIT:
        raise ResourceError(f"comparison needs exact maxima; n={args.n} exceeds {oracle.BRUTE_FORCE_LIMIT}")
    rows = _pool_map(_compare_task, [(i, spec) for i in range(args.count)], args.workers)
    _emit(analysis.to_csv([r for group in rows for r in group]), args.output)


def _variance_task(task):
    (n, i), a = task
    g = make_graph(a["family"], n, a["d"], a["q"], [a["seed"], n, i, 0])
    v = analysis.variance_scan(g, build(a["ansatz"], g, a["p"]), a["samples"], seed=[a["seed"], n, i, 1])
    return {"N": n, "D": a["d"] if a["family"] == "regular" else "", "p": a["p"], "graph": i,
            "mean": v.mean, "var": v.variance, "stderr": v.stderr, "var_stderr": v.variance_stderr, "bound": v.bound}


def cmd_scan(args):
    if args.kind == "variance":
        spec = {k: getattr(args, k) for k in ("family", "q", "seed", "p", "samples", "ansatz")}
        spec["d"] = args.d[0]
        cells = [((n, i), spec) for n in args.n for i in range(args.graphs)
                 if args.family != "regular" or (n * spec["d"] % 2 == 0 and spec["d"] < n)]
        rows = _pool_map(_variance_task, cells, args.workers)
    elif args.kind == "depth":
        scan = analysis.depth_scan(args.d, args.n, args.trials, args.seed)
        for D, N, why in scan.skipped:
            print(f"skipped D={D} N={N}: {why}", file=sys.stderr)
        _emit(scan.csv(), args.output)
        return
    else:
        rows = []
        for n in args.n:
            g = gc.ring_graph(n)
            for name, circ in (("ihva-stagger", build_ihva_stagger(g, args.p)), ("ihva-tree", build_ihva_tree(g, args.p))):
                cone = analysis.lightcone_scan(g, circ)
                rows.append({"N": n, "ansatz": name, "p": args.p, "min": cone.min, "mean": cone.mean, "max": cone.max})
    _emit(analysis.to_csv(rows), args.output)


def _solution(args, sol):
    _emit(_dumps(sol.to_dict()), args.output)


def cmd_exact(args):
    _solution(args, oracle.brute_force_maxcut(gc.load_graph(args.graph)))


def cmd_gw(args):
    g = gc.load_graph(args.graph)
    sols = [oracle.gw_maxcut(g, seed=[args.seed, k], rounding_trials=args.trials) for k in range(args.repeats)]
    _solution(args, max(sols, key=lambda s: s.cut_value))


def cmd_greedy(args):
    _solution(args, oracle.greedy_maxcut(gc.load_graph(args.graph), seed=args.seed))


# ---- parser ----------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master seed")
    common.add_argument("-o", "--output", help="output file (default: stdout)")
    common.add_argument("--workers", type=int, default=int(os.environ.get(WORKERS_ENV, "1")),
                        help=f"worker processes for batches (default ${WORKERS_ENV} or 1)")

    opt = argparse.ArgumentParser(add_help=False)
    opt.add_argument("--objective", default="energy", help="'energy' or 'cvar:<alpha>'")
    opt.add_argument("--method", default="quasi-newton", choices=["quasi-newton", "derivative-free"])
    opt.add_argument("--restarts", type=int, default=5)
    opt.add_argument("--max-iters", type=int, default=500)
    opt.add_argument("--init", default="small-constant", choices=["small-constant", "uniform"])
    opt.add_argument("--shots", type=int, default=None, help="sample-based CVaR (derivative-free only)")

    p = argparse.ArgumentParser(prog="ihva", description="Hamiltonian-variational MaxCut experiments")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("generate", parents=[common], help="random graph to an edge list (+ JSON with -o)")
    s.add_argument("family", choices=["regular", "tree", "er", "bipartite", "heavyhex"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, default=3)
    s.add_argument("--q", type=float, default=0.5)
    s.add_argument("--n-left", type=int, default=None)
    s.add_argument("--connected", action="store_true")
    s.add_argument("--signed", action="store_true", help="random +/-1 edge weights")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("arrange", parents=[common], help="gate order of one round")
    s.add_argument("graph")
    s.add_argument("--layout", choices=["tree", "stagger"], default="tree")
    s.add_argument("--random-roots", action="store_true", help="seeded random BFS start nodes instead of lowest labels")
    s.set_defaults(func=cmd_arrange)

    s = sub.add_parser("optimize", parents=[common, opt], help="variational run on one graph")
    s.add_argument("graph")
    s.add_argument("--ansatz", default="ihva-tree",
                   choices=["ihva-tree", "ihva-stagger", "ma-qaoa", "equal-ihva-tree", "equal-qaoa"])
    s.add_argument("--p", type=int, default=1)
    s.add_argument("--history", help="per-iteration objective CSV")
    s.set_defaults(func=cmd_optimize)

    s = sub.add_parser("compare", parents=[common], help="iHVA vs Goemans-Williamson vs greedy on a batch")
    s.add_argument("--family", choices=["regular", "tree", "er"], default="regular")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, default=3)
    s.add_argument("--q", type=float, default=0.5)
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--p", type=int, default=2)
    s.add_argument("--objective", default="cvar:0.1")
    s.add_argument("--restarts", type=int, default=5)
    s.add_argument("--max-iters", type=int, default=500)
    s.add_argument("--gw-repeats", type=int, default=5, help="independent G-W runs; the best is kept")
    s.add_argument("--gw-trials", type=int, default=1, help="hyperplane roundings per G-W run")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("scan", parents=[common], help="variance, depth or light-cone scans to CSV")
    s.add_argument("kind", choices=["variance", "depth", "lightcone"])
    s.add_argument("--family", choices=["regular", "er"], default="regular")
    s.add_argument("--d", type=int_list, default=[3])
    s.add_argument("--n", type=int_list, default=[8])
    s.add_argument("--q", type=float, default=0.5)
    s.add_argument("--p", type=int, default=None, help="rounds (default 2 for variance, 1 otherwise)")
    s.add_argument("--ansatz", default="ihva-tree", choices=["ihva-tree", "ihva-stagger", "ma-qaoa"])
    s.add_argument("--samples", type=int, default=1024)
    s.add_argument("--graphs", type=int, default=1, help="graphs per size (variance)")
    s.add_argument("--trials", type=int, default=50, help="graphs per cell (depth)")
    s.set_defaults(func=cmd_scan)

    for name, fn, helptext in (("exact", cmd_exact, "exhaustive maximum cut"),
                               ("gw", cmd_gw, "Goemans-Williamson cut"),
                               ("greedy", cmd_greedy, "greedy placement plus 1-opt cut")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("graph")
        if name == "gw":
            s.add_argument("--trials", type=int, default=50, help="hyperplane roundings per run")
            s.add_argument("--repeats", type=int, default=5, help="independent runs; best is kept")
        s.set_defaults(func=fn)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "p", 0) is None:
        args.p = 2 if args.kind == "variance" else 1
    try:
        args.func(args)
    except ResourceError as e:
        print(f"ihva: resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except NumericalError as e:
        print(f"ihva: numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (IhvaError, OSError) as e:
        parser.print_usage(sys.stderr)
        print(f"ihva {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
