"""Command line front end: partition, sweep, eval and oracle subcommands.

All configuration is explicit flags; no environment variables are read.
Identical flags and seed give byte-identical outputs, except for the
``created`` timestamp in JSON summaries, which ``--no-timestamp`` drops.
The type knob is ``--info`` in bits (how much of the 1-bit node-type
signal the walker keeps); ``--alpha`` sets the flipping rate directly
and the two are mutually exclusive.
"""

from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .bruteforce import best_partition_bruteforce
from .codelength import codelength, one_level_codelength
from .flow import visit_rates
from .metrics import compute_metrics
from .network import (
    BipartiteNetwork,
    NetworkFormatError,
    is_connected,
    largest_connected_component,
    parse_network,
)
from .search import SearchParams, run_trials
from .serialize import parse_tree, run_summary_json, write_sweep_csv, write_tree
from .sweep import run_sweep
from .typeinfo import info_to_alpha, type_information

__all__ = ["main"]


def _add_common(p: argparse.ArgumentParser, trials: bool = True) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--info", type=float, default=None,
                   help="node-type information in bits, 0 to 1 (default 1)")
    g.add_argument("--alpha", type=float, default=None,
                   help="type flipping rate, 0 to 1 (alternative to --info)")
    if trials:
        p.add_argument("--trials", type=int, default=100, help="search restarts (default 100)")
        p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
        p.add_argument("--threads", type=int, default=1, help="worker threads (default 1)")
    p.add_argument("--format", choices=("auto", "tsv", "pajek"), default="auto",
                   help="input format; auto sniffs a leading '*' as pajek")
    p.add_argument("--out-dir", type=Path, default=Path("."),
                   help="directory for output files (default .)")
    p.add_argument("--no-timestamp", action="store_true",
                   help="omit the created field from JSON outputs")
    p.add_argument("input", type=Path, help="network file")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bimapeq",
        description="Community detection for bipartite networks with tunable node-type information.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="search for the best partition at one information level")
    _add_common(p)
    p.add_argument("--two-level", action="store_true",
                   help="restrict to flat partitions (default: hierarchical)")

    p = sub.add_parser("sweep", help="optimize across the 0..1 bit information grid")
    _add_common(p)
    p.add_argument("--step", type=float, default=0.05,
                   help="information grid step in bits (default 0.05)")
    p.add_argument("--fixed-tree", type=Path, default=None,
                   help="re-score this tree file across the grid instead of searching")

    p = sub.add_parser("eval", help="evaluate a stored partition at one information level")
    _add_common(p, trials=False)
    p.add_argument("--tree", type=Path, required=True, help="tree file to evaluate")

    p = sub.add_parser("oracle", help="exhaustive optimum for small networks")
    _add_common(p, trials=False)
    p.add_argument("--max-nodes", type=int, default=12,
                   help="refuse networks larger than this (default 12)")
    return ap


def _resolve_alpha(args) -> tuple[float, float]:
    if args.alpha is not None:
        if not 0.0 <= args.alpha <= 1.0:
            raise ValueError("--alpha must lie in [0, 1]")
        return args.alpha, type_information(args.alpha)
    info = 1.0 if args.info is None else args.info
    if not 0.0 <= info <= 1.0:
        raise ValueError("--info must lie in [0, 1]")
    return info_to_alpha(info), info


def _load_network(args) -> BipartiteNetwork:
    text = args.input.read_text(encoding="utf-8")
    fmt = args.format
    if fmt == "auto":
        first = next((ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")), "")
        fmt = "pajek" if first.lstrip().startswith("*") else "tsv"
    net = parse_network(text, "bipartite_pajek" if fmt == "pajek" else "tsv")
    if not is_connected(net):
        lcc = largest_connected_component(net)
        print(
            f"note: input is disconnected; keeping the largest component "
            f"({lcc.n_nodes} of {net.n_nodes} nodes, {lcc.n_edges} of {net.n_edges} edges)",
            file=sys.stderr,
        )
        net = lcc
    return net


def _timestamp(args) -> dict:
    if args.no_timestamp:
        return {}
    return {"created": datetime.now(timezone.utc).isoformat(timespec="seconds")}


def _net_fields(net: BipartiteNetwork) -> dict:
    return {
        "n_left": net.n_left,
        "n_right": net.n_right,
        "n_nodes": net.n_nodes,
        "n_edges": net.n_edges,
    }


def _cmd_partition(args) -> int:
    alpha, info = _resolve_alpha(args)
    net = _load_network(args)
    params = SearchParams(trials=args.trials, seed=args.seed, threads=args.threads)
    mode = "two_level" if args.two_level else "hierarchical"
    result = run_trials(net, alpha, params, hierarchical=not args.two_level)
    met = compute_metrics(net, result.tree, alpha)

    args.out_dir.mkdir(parents=True, exist_ok=True)
    stem = args.input.stem
    vr = visit_rates(net)
    sides = tuple(net.side(i) for i in range(net.n_nodes))
    header = {"alpha": repr(alpha), "info": repr(info), "bits": repr(result.bits),
              "seed": args.seed, "mode": mode}
    tree_path = args.out_dir / f"{stem}.tree"
    tree_path.write_text(write_tree(result.tree, vr.two_step, net.names, sides, header),
                         encoding="utf-8")
    summary = {
        "alpha": alpha,
        "info": info,
        "mode": mode,
        "bits": result.bits,
        "one_level_bits": met.one_level_bits,
        "extra_compression": met.extra_compression,
        "effective_module_size": met.effective_module_size,
        "n_modules": met.n_modules,
        "depth": met.depth,
        "trials": params.trials,
        "seed": params.seed,
        "threads": params.threads,
        "min_improvement": params.min_improvement,
        "best_trial": result.best_trial,
        "trial_bits": list(result.trial_bits),
        "input": args.input.name,
        **_net_fields(net),
        **_timestamp(args),
    }
    json_path = args.out_dir / f"{stem}.json"
    json_path.write_text(run_summary_json(summary), encoding="utf-8")
    print(f"bits: {result.bits:.6f}")
    print(f"extra compression: {met.extra_compression:.6f}")
    print(f"effective module size: {met.effective_module_size:.6f}")
    print(f"wrote {tree_path} and {json_path}")
    return 0


def _cmd_sweep(args) -> int:
    net = _load_network(args)
    if args.alpha is not None or args.info is not None:
        raise ValueError("sweep scans the whole information grid; drop --alpha/--info")
    fixed = None
    if args.fixed_tree is not None:
        parsed = parse_tree(args.fixed_tree.read_text(encoding="utf-8"))
        _check_tree_matches(parsed, net)
        fixed = parsed.tree
    params = SearchParams(trials=args.trials, seed=args.seed, threads=args.threads)
    records = run_sweep(net, step=args.step, params=params, fixed_tree=fixed)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = args.out_dir / f"{args.input.stem}.sweep.csv"
    csv_path.write_text(write_sweep_csv(records), encoding="utf-8")
    print(f"wrote {csv_path} ({len(records)} grid points)")
    return 0


def _check_tree_matches(parsed, net: BipartiteNetwork) -> None:
    if parsed.n_nodes != net.n_nodes:
        raise ValueError(
            f"tree file covers {parsed.n_nodes} nodes but the network has {net.n_nodes}"
        )
    if parsed.names() != net.names:
        raise ValueError("tree file node names do not match the network")


def _cmd_eval(args) -> int:
    alpha, info = _resolve_alpha(args)
    net = _load_network(args)
    parsed = parse_tree(args.tree.read_text(encoding="utf-8"))
    _check_tree_matches(parsed, net)
    tree = parsed.tree
    tree.validate(net.n_nodes)
    met = compute_metrics(net, tree, alpha)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    out_path = args.out_dir / f"{args.input.stem}.eval.json"
    summary = {
        "alpha": alpha,
        "info": info,
        "bits": met.bits,
        "one_level_bits": met.one_level_bits,
        "extra_compression": met.extra_compression,
        "effective_module_size": met.effective_module_size,
        "n_modules": met.n_modules,
        "depth": met.depth,
        "input": args.input.name,
        "tree": args.tree.name,
        **_net_fields(net),
        **_timestamp(args),
    }
    out_path.write_text(run_summary_json(summary), encoding="utf-8")
    print(f"bits: {met.bits:.6f}")
    print(f"wrote {out_path}")
    return 0


def _cmd_oracle(args) -> int:
    alpha, info = _resolve_alpha(args)
    net = _load_network(args)
    res = best_partition_bruteforce(net, alpha, max_nodes=args.max_nodes)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    out_path = args.out_dir / f"{args.input.stem}.oracle.json"
    partitions = [
        [[net.names[n] for n in np.flatnonzero(a == m)] for m in range(int(a.max()) + 1)]
        for a in res.assignments
    ]
    summary = {
        "alpha": alpha,
        "info": info,
        "bits": res.bits,
        "examined": res.examined,
        "n_optimal": len(res.assignments),
        "partitions": partitions,
        "one_level_bits": one_level_codelength(net, alpha),
        "input": args.input.name,
        **_net_fields(net),
        **_timestamp(args),
    }
    out_path.write_text(run_summary_json(summary), encoding="utf-8")
    print(f"optimum bits: {res.bits:.6f} over {res.examined} partitions")
    print(f"wrote {out_path}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handler = {
        "partition": _cmd_partition,
        "sweep": _cmd_sweep,
        "eval": _cmd_eval,
        "oracle": _cmd_oracle,
    }[args.command]
    try:
        return handler(args)
    except (NetworkFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
