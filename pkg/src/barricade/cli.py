"""Command line entry point: ``barricade <command> ...``.

Every command writes its results to files named on the command line; rerunning
with the same inputs and ``--rng-seed`` gives byte-identical files. Wall-clock
fields are the one exception, so ``solve`` and ``experiment`` take
``--no-timing`` to zero them.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import solvers, validation
from .cascade import run_cascade
from .generators import MODELS, GenSpec, assign_params, generate
from .graph import GraphValidationError
from .harness import ConfigError, ExperimentConfig, run, write_outputs
from .ingest import SAMPLE_METHODS, SampleSpec, ingest_snap, sample_subgraph
from .io import ParseError, read_graph, write_graph
from .structure import SizeGuardError

log = logging.getLogger("barricade")


def _dump(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _range(text: str) -> tuple[float, float]:
    parts = text.replace(":", ",").split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {text!r}")
    return float(parts[0]), float(parts[1])


def _seed_list(text: str) -> list[int]:
    return [int(t) for t in text.replace(",", " ").split()] if text.strip() else []


def _load(args) -> "Graph":  # noqa: F821
    return read_graph(args.graph, args.barricades, args.default_barricade)


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True, help="edge list: 'u v [w]' per line")
    p.add_argument("--barricades", help="barricade file: 'u b' per line")
    p.add_argument("--default-barricade", type=float, default=1.0,
                   help="barricade for nodes missing from --barricades (default 1)")


# --------------------------------------------------------------------------
# commands


def cmd_solve(args) -> int:
    g = _load(args)
    if args.algo == "mss":
        rep = solvers.mss(g, args.rng_seed)
    elif args.algo == "sim":
        if args.k is None:
            raise SystemExit("sim needs --k")
        rep = solvers.sim(g, args.k, args.rng_seed)
    elif args.algo == "greedy":
        rep = solvers.greedy(g, args.k)
    elif args.k is None:
        rep = solvers.optimal_full(g, args.opt_max_nodes)
    else:
        rep = solvers.optimal_exhaustive(g, args.k, args.opt_max_nodes)
    out = rep.to_dict(timing=not args.no_timing)
    out["node_count"] = g.num_alive
    _dump(out, args.out)
    log.info("%s: %d seeds, sigma %d/%d", rep.algorithm, len(rep.seeds), rep.sigma, g.num_alive)
    return 0


def cmd_cascade(args) -> int:
    g = _load(args)
    trace = run_cascade(g, _seed_list(args.seeds))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(trace.to_json() + "\n")
    return 0


def cmd_generate(args) -> int:
    if args.spec:
        text = args.spec
        if not text.lstrip().startswith("{"):
            with open(text, encoding="utf-8") as fh:
                text = fh.read()
        spec = GenSpec.from_dict(json.loads(text))
    else:
        if args.model is None or args.n is None or args.density is None:
            raise SystemExit("generate needs --spec or all of --model, --n, --density")
        spec = GenSpec(args.model, args.n, args.density, args.weight_range or (1.0, 1.0),
                       args.barricade_range or (1.0, 1.0), args.rng_seed, args.mean_degree)
    g = generate(spec)
    write_graph(g, args.out_prefix)
    _dump(spec.to_dict(), f"{args.out_prefix}.spec.json")
    log.info("generated %s: %d nodes, %d edges", spec.model, g.node_count, g.edge_count)
    return 0


def cmd_ingest(args) -> int:
    with open(args.input, encoding="utf-8") as fh:
        g = ingest_snap(fh, "bidirected" if args.bidirected else "directed", args.default_barricade)
    if args.sample_n:
        g = sample_subgraph(g, SampleSpec(args.sample_n, args.method, args.rng_seed))
    else:
        g = g.compact()
    if args.weight_range or args.barricade_range:
        drawn = assign_params(g, args.weight_range or (1.0, 1.0), args.barricade_range or (0.0, 0.0),
                              args.rng_seed)
        g = g.with_weights(drawn.w if args.weight_range else g.w)
        g = g.with_barricades(drawn.b if args.barricade_range else g.b)
    write_graph(g, args.out_prefix)
    with open(f"{args.out_prefix}.labels", "w", encoding="utf-8") as fh:
        for i, lab in enumerate(g.labels.tolist()):
            fh.write(f"{i} {lab}\n")
    log.info("ingested %d nodes, %d edges", g.node_count, g.edge_count)
    return 0


def cmd_experiment(args) -> int:
    try:
        config = ExperimentConfig.load(args.config)
    except (ConfigError, json.JSONDecodeError, OSError) as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return 2
    result = run(config, workers=args.workers, timing=not args.no_timing)
    for path in write_outputs(result, args.out, args.aggregate):
        log.info("wrote %s", path)
    return 0


def cmd_validate(args) -> int:
    summaries = validation.run_all(args.trials, args.rng_seed, args.replacement_trials)
    report = {"rng_seed": args.rng_seed, "passed": all(s.passed for s in summaries),
              "suites": [s.to_dict() for s in summaries]}
    _dump(report, args.out)
    for s in summaries:
        log.info("%-28s %s (%d trials, %d violations)", s.name, "PASS" if s.passed else "FAIL",
                 s.trials, s.violations)
    return 0 if report["passed"] else 1


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="barricade", description="Influence maximization under barricade thresholds.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="pick seeds with one algorithm")
    _add_graph_args(p)
    p.add_argument("--algo", choices=("mss", "sim", "greedy", "opt"), required=True)
    p.add_argument("--k", type=int, help="budget; omit for the full-influence variant of greedy/opt")
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--opt-max-nodes", type=int, default=16)
    p.add_argument("--out", required=True)
    p.add_argument("--no-timing", action="store_true", help="write wall_time_s as 0")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("cascade", help="write the activation trace of a seed set")
    _add_graph_args(p)
    p.add_argument("--seeds", required=True, help="comma separated node ids")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_cascade)

    p = sub.add_parser("generate", help="synthetic graph to PREFIX.edges / PREFIX.barricades")
    p.add_argument("--spec", help="GenSpec as a JSON string or file")
    p.add_argument("--model", choices=MODELS)
    p.add_argument("--n", type=int)
    p.add_argument("--density", type=float, help="edge target (rg), probability (er) or exponent (power_law)")
    p.add_argument("--weight-range", type=_range)
    p.add_argument("--barricade-range", type=_range)
    p.add_argument("--mean-degree", type=float, default=6.0)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("ingest", help="SNAP edge list to a (sampled) graph")
    p.add_argument("--input", required=True)
    p.add_argument("--bidirected", action="store_true")
    p.add_argument("--sample-n", type=int)
    p.add_argument("--method", choices=SAMPLE_METHODS, default="bfs_ball")
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--weight-range", type=_range)
    p.add_argument("--barricade-range", type=_range)
    p.add_argument("--default-barricade", type=float, default=0.0)
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("experiment", help="run a sweep from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--aggregate", action="store_true", help="also write per-point means")
    p.add_argument("--no-timing", action="store_true")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("validate", help="randomized checks of the structural bounds")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--replacement-trials", type=int, default=50)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_validate)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ParseError, GraphValidationError, SizeGuardError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
