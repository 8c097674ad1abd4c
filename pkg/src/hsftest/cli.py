"""Command-line interface: one binary, JSON reports on stdout.

Machine-readable output only goes to stdout; logs and the per-run
manifest line go to stderr.  Exit codes: 0 success (pass/accept), 1
domain failure (fail/reject verdicts, generation failure), 2 usage or
input-format errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from collections import Counter

from . import __version__, hierarchy
from .disks import FreqVector, disk_distribution, sampled_freq
from .errors import GenerationFailed, GraphError, EdgeListFormatError
from .genverify import (HsfParams, degree_histogram, generate_clique_chain,
                        generate_hsf, verify_hsf, verify_sf)
from .multigraph import load_edge_list, save_edge_list
from .oracle import QuerySession, oracle_query
from .tester import (PROPERTIES, TesterConfig, build_reference_set,
                     calibrated_config, universal_test)


def _params_from(args) -> HsfParams:
    if getattr(args, "params", None):
        with open(args.params) as fh:
            raw = json.load(fh)
        return HsfParams(raw["c"], raw["gamma"], int(raw["n0"]), raw["epsilon"])
    return HsfParams(args.c, args.gamma, args.n0, args.epsilon)


def _add_param_flags(sp, epsilon_default=0.5):
    sp.add_argument("--params", help="JSON file {c, gamma, n0, epsilon}")
    sp.add_argument("-c", type=float, default=8.0, help="power-law constant")
    sp.add_argument("-g", "--gamma", type=float, default=3.0, help="power-law exponent")
    sp.add_argument("--n0", type=int, default=64, help="hierarchy floor")
    sp.add_argument("-e", "--epsilon", type=float, default=epsilon_default)


def _params_json(p: HsfParams) -> dict:
    return {"c": p.c, "gamma": p.gamma, "n0": p.n0, "epsilon": p.epsilon,
            "delta": p.delta, "t": p.t}


def _emit(args, payload: dict | list, started: float, rc: int) -> int:
    out = json.dumps(payload, sort_keys=True)
    sys.stdout.write(out + "\n")
    manifest = {
        "subcommand": args.command,
        "inputs": [getattr(args, "graph", None) or getattr(args, "out", None)],
        "seed": getattr(args, "seed", None),
        "version": __version__,
        "wallClock": round(time.time() - started, 6),
        "outputDigest": hashlib.sha256(out.encode()).hexdigest(),
    }
    sys.stderr.write(json.dumps(manifest, sort_keys=True) + "\n")
    return rc


def _cmd_gen(args, started):
    params = _params_from(args)
    if args.chain_d:
        g = generate_clique_chain(args.n, args.chain_d, args.seed)
    else:
        g = generate_hsf(params, args.n, args.seed)
    save_edge_list(g, args.out)
    return _emit(args, {"n": g.n, "m": g.m, "out": args.out,
                        "params": _params_json(params)}, started, 0)


def _cmd_verify(args, started):
    g = load_edge_list(args.graph)
    if args.sf:
        rep = verify_sf(g, args.c, args.gamma)
        payload = {"verdict": "pass" if rep.ok else "fail"}
        if not rep.ok:
            payload["witnessDegree"] = rep.witness_degree
            payload["count"] = rep.witness_count
            payload["bound"] = rep.witness_bound
        return _emit(args, payload, started, 0 if rep.ok else 1)
    params = _params_from(args)
    rep = verify_hsf(g, params)
    payload = {"verdict": "pass" if rep.ok else "fail", "cascadeDepth": rep.k,
               "finalLevelSize": rep.final_size}
    if not rep.ok:
        payload["reason"] = rep.reason
    return _emit(args, payload, started, 0 if rep.ok else 1)


def _cmd_cascade(args, started):
    g = load_edge_list(args.graph)
    casc = hierarchy.cascade(g, detailed=True)
    levels = []
    for i, lvl in enumerate(casc.graphs):
        entry = {"level": i, "n": lvl.n, "m": lvl.m}
        if i < casc.k:
            entry["cliques"] = [
                {"members": list(u.members), "outDegree": u.out_degree, "kind": u.kind}
                for u in casc.units[i]
            ]
        levels.append(entry)
    return _emit(args, {"k": casc.k, "levels": levels}, started, 0)


def _cmd_partition(args, started):
    g = load_edge_list(args.graph)
    params = _params_from(args)
    part = hierarchy.global_partition(g, params)
    payload = {
        "components": [{"kind": c.kind, "members": list(c.members)}
                       for c in part.components],
        "cutEdgeCount": part.cut_edge_count,
        "maxComponentSize": part.max_component_size,
        "mode": part.mode,
        "params": _params_json(params),
    }
    return _emit(args, payload, started, 0)


def _oracle_chunk(chunk):
    g, params, vertices = chunk
    session = QuerySession(g)
    out = []
    for v in vertices:
        before = session.query_count
        comp = oracle_query(session, v, params)
        out.append({"v": v, "component": list(comp),
                    "queries": session.query_count - before})
    return out


def _cmd_oracle(args, started):
    g = load_edge_list(args.graph)
    params = _params_from(args)
    if args.vertices:
        vertices = [int(x) for x in args.vertices.split(",")]
    else:
        vertices = list(range(g.n))
    if args.jobs > 1 and len(vertices) > 1:
        from multiprocessing import get_context
        step = max(1, len(vertices) // args.jobs)
        chunks = [(g, params, vertices[i:i + step])
                  for i in range(0, len(vertices), step)]
        with get_context("fork").Pool(args.jobs) as pool:
            parts = pool.map(_oracle_chunk, chunks)
        results = [row for part in parts for row in part]
    else:
        results = _oracle_chunk((g, params, vertices))
    return _emit(args, results, started, 0)


def _cmd_disks(args, started):
    g = load_edge_list(args.graph)
    if args.samples:
        fv = sampled_freq(QuerySession(g), args.d, args.t, args.samples, args.seed)
    else:
        fv = disk_distribution(g, args.d, args.t)
    return _emit(args, json.loads(fv.to_json()), started, 0)


def _cmd_test(args, started):
    g = load_edge_list(args.graph)
    prop = PROPERTIES[args.property]
    if args.lam is not None:
        cfg = TesterConfig(args.epsilon, args.lam, args.d, args.t,
                           args.samples or 64, seed=args.seed)
    else:
        cfg = calibrated_config(args.property, args.epsilon, seed=args.seed)
        if args.samples:
            cfg.samples = args.samples
    ref_n = args.reference_n or min(g.n, 8)
    ref = build_reference_set(prop, ref_n, cfg.d, cfg.t)
    verdict = universal_test(QuerySession(g), ref, cfg)
    payload = {
        "verdict": verdict.verdict,
        "nearestReferenceDistance": verdict.distance,
        "lambda": cfg.lam,
        "sampled": json.loads(verdict.sampled.to_json()),
    }
    return _emit(args, payload, started, 0 if verdict.accept else 1)


def _cmd_stats(args, started):
    g = load_edge_list(args.graph)
    hist = degree_histogram(g)
    payload = {
        "n": g.n,
        "m": g.m,
        "maxDegree": max(hist) if hist else 0,
        "degreeHistogram": {str(k): v for k, v in sorted(hist.items())},
        "components": len(g.connected_components()),
        "clusterCoefficient": g.cluster_coefficient() if g.n else None,
    }
    return _emit(args, payload, started, 0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hsftest",
                                 description="hierarchical scale-free graph toolkit")
    ap.add_argument("--version", action="version", version=f"hsftest {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("gen", help="generate an instance (hierarchical or clique chain)")
    _add_param_flags(sp)
    sp.add_argument("-n", type=int, required=True, help="target vertex count")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--chain-d", type=int, default=0,
                    help="emit the clique-chain control family with this clique size")
    sp.add_argument("-o", "--out", required=True, help="edge-list output path")
    sp.set_defaults(func=_cmd_gen)

    sp = sub.add_parser("verify", help="check class membership")
    sp.add_argument("graph")
    sp.add_argument("--sf", action="store_true", help="power-law bound only")
    _add_param_flags(sp)
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("cascade", help="contraction cascade report")
    sp.add_argument("graph")
    sp.set_defaults(func=_cmd_cascade)

    sp = sub.add_parser("partition", help="global hyperfinite partition")
    sp.add_argument("graph")
    _add_param_flags(sp)
    sp.set_defaults(func=_cmd_partition)

    sp = sub.add_parser("oracle", help="local partitioning oracle queries")
    sp.add_argument("graph")
    _add_param_flags(sp)
    sp.add_argument("--vertices", help="comma-separated vertex list (default: all)")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=_cmd_oracle)

    sp = sub.add_parser("disks", help="disk frequency vector")
    sp.add_argument("graph")
    sp.add_argument("-d", type=int, required=True)
    sp.add_argument("-t", type=int, required=True)
    sp.add_argument("--samples", type=int, default=0, help="0 = exact")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=_cmd_disks)

    sp = sub.add_parser("test", help="universal property tester")
    sp.add_argument("graph")
    sp.add_argument("--property", required=True, choices=sorted(PROPERTIES))
    sp.add_argument("--epsilon", type=float, default=0.25)
    sp.add_argument("--lambda", dest="lam", type=float, default=None)
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--t", type=int, default=1)
    sp.add_argument("--samples", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--reference-n", type=int, default=0,
                    help="member size for the reference set (default min(n, 8))")
    sp.set_defaults(func=_cmd_test)

    sp = sub.add_parser("stats", help="basic graph statistics")
    sp.add_argument("graph")
    sp.set_defaults(func=_cmd_stats)
    return ap


def main(argv=None) -> int:
    started = time.time()
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args, started)
    except EdgeListFormatError as exc:
        sys.stderr.write(f"error: malformed graph file: {exc}\n")
        return 2
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except GenerationFailed as exc:
        sys.stderr.write(f"error: generation failed: {exc}\n")
        for line in exc.attempts:
            sys.stderr.write(f"  {line}\n")
        return 1
    except GraphError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
