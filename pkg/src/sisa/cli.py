"""Benchmark command line.

Subcommands: run (one cost-accounted algorithm run), oracle (brute-force
reference on small graphs, same record format), sweep (grid over one or two
config axes), trace encode/decode (instruction trace files).

Exit codes: 0 ok, 1 usage error, 2 data error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import asdict, replace
from itertools import product

from . import isa, mining, oracle
from .config import ALGOS, RunConfig, build_config, load_config_file
from .engine import SetEngine
from .errors import DataError, SisaError, UsageError
from .graph import (
    attach_vertex_labels,
    degeneracy_order_approx,
    degeneracy_order_exact,
    load_edge_list,
    orient,
)

CSV_HEADER = [
    "algo", "graph", "n", "m", "param_k", "param_tau", "param_sigma",
    "param_eps", "measure", "t", "budget", "gallop_mode", "gallop_threshold",
    "workers", "seed", "result_summary", "sim_time_total",
    "sim_time_pnm_stream", "sim_time_pnm_random", "sim_time_pum",
    "scu_hits", "scu_misses", "op_counts_json", "wall_ms",
]

SWEEP_KEYS = (
    "t", "budget", "gallop_threshold", "gallop_mode", "k", "tau", "sigma",
    "eps", "workers", "seed", "measure", "fraction",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", default=None, help="key=value config file")
    p.add_argument("--graph", default=None, help="edge list path")
    p.add_argument("--labels", default=None, help="vertex label file")
    p.add_argument("--name", default=None, help="graph display name")
    p.add_argument("--algo", default=None, choices=ALGOS)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--tau", type=int, default=None)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--measure", default=None)
    p.add_argument("--pattern", default=None, help="pattern edge list (si)")
    p.add_argument("--labeled", action="store_const", const=True, default=None,
                   help="parse graph/pattern labels and match them in si")
    p.add_argument("--fraction", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--order", default=None, choices=("exact", "approx"))
    p.add_argument("--kcs-variant", dest="kcs_variant", default=None)
    p.add_argument("--max-size", dest="max_size", type=int, default=None)
    p.add_argument("--root", type=int, default=None)
    p.add_argument("--direction", default=None, choices=("top_down", "bottom_up"))
    p.add_argument("--u", type=int, default=None)
    p.add_argument("--v", type=int, default=None)
    p.add_argument("--t", type=float, default=None,
                   help="bitvector degree threshold as a fraction of n")
    p.add_argument("--budget", type=float, default=None,
                   help="extra-storage budget fraction for bitvectors")
    p.add_argument("--gallop-threshold", dest="gallop_threshold", type=float,
                   default=None)
    p.add_argument("--gallop-mode", dest="gallop_mode", default=None,
                   choices=("cost-model", "ratio", "merge", "gallop"))
    p.add_argument("--aux-repr", dest="aux_repr", default=None, choices=("db", "sa"))
    p.add_argument("--dram-latency", dest="dram_latency", type=float, default=None)
    p.add_argument("--dram-bandwidth", dest="dram_bandwidth", type=float, default=None)
    p.add_argument("--link-bandwidth", dest="link_bandwidth", type=float, default=None)
    p.add_argument("--insitu-latency", dest="insitu_latency", type=float, default=None)
    p.add_argument("--parallel-rows", dest="parallel_rows", type=int, default=None)
    p.add_argument("--row-bits", dest="row_bits", type=int, default=None)
    p.add_argument("--word-bits", dest="word_bits", type=int, default=None)
    p.add_argument("--literal-streaming", dest="literal_streaming",
                   action="store_const", const=True, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--format", dest="fmt", default=None, choices=("csv", "json"))
    p.add_argument("--out", default=None, help="output path (default stdout)")


def _config_from_args(args) -> RunConfig:
    cli = {k: v for k, v in vars(args).items()
           if k not in ("cmd", "config", "sweep", "trace_cmd", "infile",
                        "outfile", "func")}
    file_vals = load_config_file(args.config) if getattr(args, "config", None) else {}
    cfg = build_config(file_vals, cli)
    cfg.validate()
    return cfg


def _load(cfg: RunConfig):
    if not cfg.graph:
        raise UsageError("--graph is required")
    with open(cfg.graph, "rb") as f:
        g, stats = load_edge_list(f, labeled=cfg.labeled,
                                  name=cfg.name or cfg.graph.rsplit("/", 1)[-1])
    if cfg.labels:
        with open(cfg.labels, "rb") as f:
            g = attach_vertex_labels(g, stats, f)
    return g, stats


def _prepare(cfg: RunConfig, g):
    if cfg.order == "exact":
        order = degeneracy_order_exact(g)
    else:
        order = degeneracy_order_approx(g, cfg.eps)
    g = orient(g, order)
    engine = SetEngine(
        params=cfg.cost_params(),
        policy=cfg.policy(),
        mode=cfg.selection_mode(),
        aux_repr=cfg.aux_repr_kind(),
    )
    handle = engine.load_graph(g, order)
    return engine, handle


def _load_pattern(cfg: RunConfig):
    with open(cfg.pattern, "rb") as f:
        pattern, _ = load_edge_list(f, labeled=cfg.labeled, name="pattern")
    return pattern


def run_algorithm(cfg: RunConfig, engine, handle) -> mining.MiningResult:
    workers = cfg.effective_workers()
    limit = cfg.limit or None
    algo = cfg.algo
    if algo == "tc":
        return mining.triangle_count(engine, handle, workers)
    if algo == "4cc":
        return mining.four_clique_count(engine, handle, workers)
    if algo == "kcc":
        return mining.k_clique_count(engine, handle, cfg.k, workers,
                                     listing=bool(limit), limit=limit)
    if algo == "kcs":
        return mining.k_clique_star_list(engine, handle, cfg.k,
                                         cfg.kcs_variant, workers, limit)
    if algo == "mc":
        return mining.maximal_cliques(engine, handle, workers, limit)
    if algo == "si":
        return mining.subgraph_isomorphism(engine, handle, _load_pattern(cfg),
                                           labeled=cfg.labeled, workers=workers,
                                           limit=limit)
    if algo == "fsm":
        return mining.frequent_subgraph_mining(engine, handle, cfg.sigma,
                                               cfg.max_size, workers)
    if algo == "sim":
        return mining.vertex_similarity(engine, handle, cfg.u, cfg.v, cfg.measure)
    if algo == "jp":
        return mining.jarvis_patrick(engine, handle, cfg.tau, workers)
    if algo == "lp":
        return mining.link_prediction_eval(engine, handle, cfg.fraction,
                                           cfg.measure, cfg.seed, workers)
    if algo == "bfs":
        return mining.bfs(engine, handle, cfg.root, cfg.direction, workers)
    raise UsageError(f"unknown algorithm {algo!r}")


def run_oracle(cfg: RunConfig, g):
    algo = cfg.algo
    if algo == "tc":
        return oracle.triangle_count(g)
    if algo == "4cc":
        return oracle.four_clique_count(g)
    if algo == "kcc":
        return oracle.k_clique_count(g, cfg.k)
    if algo == "kcs":
        return oracle.k_clique_stars(g, cfg.k)
    if algo == "mc":
        return oracle.maximal_cliques(g)
    if algo == "si":
        return oracle.subgraph_isomorphism(g, _load_pattern(cfg), cfg.labeled)
    if algo == "fsm":
        return oracle.frequent_subgraph_mining(g, cfg.sigma, cfg.max_size)
    if algo == "sim":
        return oracle.vertex_similarity(g, cfg.u, cfg.v, cfg.measure)
    if algo == "jp":
        return oracle.jarvis_patrick(g, cfg.tau)
    if algo == "lp":
        return oracle.link_prediction_eval(g, cfg.fraction, cfg.measure, cfg.seed)
    if algo == "bfs":
        return oracle.bfs_levels(g, cfg.root)
    raise UsageError(f"unknown algorithm {algo!r}")


def summarize(algo: str, value) -> str:
    if algo == "tc":
        return f"tc={value}"
    if algo == "4cc":
        return f"4cc={value}"
    if algo == "kcc":
        return f"kcc={value}"
    if algo == "kcs":
        count = len(value) if isinstance(value, list) else value
        return f"kcs={count}"
    if algo == "mc":
        count = len(value) if isinstance(value, list) else value
        return f"mc={count}"
    if algo == "si":
        return f"si={value}"
    if algo == "fsm":
        total = sum(len(v) for v in value.values())
        return f"fsm={total}"
    if algo == "sim":
        return f"sim={value:.10g}"
    if algo == "jp":
        return f"jp={len(value)}"
    if algo == "lp":
        return f"lp_eff={value}"
    if algo == "bfs":
        reached = sum(1 for p in value if p >= 0)
        return f"bfs_reached={reached}"
    return str(value)


def _param_str(cfg: RunConfig, key: str) -> str:
    if key == "param_k" and cfg.algo in ("kcc", "kcs"):
        return str(cfg.k)
    if key == "param_tau" and cfg.algo == "jp":
        return str(cfg.tau)
    if key == "param_sigma" and cfg.algo == "fsm":
        return f"{cfg.sigma:.10g}"
    if key == "param_eps" and cfg.order == "approx":
        return f"{cfg.eps:.10g}"
    if key == "measure" and cfg.algo in ("sim", "lp"):
        return cfg.measure
    return ""


def build_row(cfg: RunConfig, g, summary: str, ledger_dict: dict, wall_ms: float) -> list:
    return [
        cfg.algo,
        cfg.name or (cfg.graph.rsplit("/", 1)[-1] if cfg.graph else g.name),
        g.n,
        g.m,
        _param_str(cfg, "param_k"),
        _param_str(cfg, "param_tau"),
        _param_str(cfg, "param_sigma"),
        _param_str(cfg, "param_eps"),
        _param_str(cfg, "measure"),
        f"{cfg.t:.10g}",
        f"{cfg.budget:.10g}",
        cfg.gallop_mode,
        f"{cfg.gallop_threshold:.10g}",
        cfg.effective_workers(),
        cfg.seed,
        summary,
        f"{ledger_dict['sim_time_total']:.10g}",
        f"{ledger_dict['sim_time_pnm_stream']:.10g}",
        f"{ledger_dict['sim_time_pnm_random']:.10g}",
        f"{ledger_dict['sim_time_pum']:.10g}",
        ledger_dict["scu_hits"],
        ledger_dict["scu_misses"],
        json.dumps(ledger_dict["op_counts"], sort_keys=True),
        f"{wall_ms:.3f}",
    ]


_EMPTY_LEDGER = {
    "sim_time_total": 0.0,
    "sim_time_pnm_stream": 0.0,
    "sim_time_pnm_random": 0.0,
    "sim_time_pum": 0.0,
    "scu_hits": 0,
    "scu_misses": 0,
    "op_counts": {},
}


def _write_csv(rows: list, out_path: str) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(rows)
    _write_text(buf.getvalue(), out_path)


def _write_text(text: str, out_path: str) -> None:
    if out_path:
        with open(out_path, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _json_value(value):
    if isinstance(value, dict):
        return {str(k): _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return value


def cmd_run(args) -> int:
    cfg = _config_from_args(args)
    g, stats = _load(cfg)
    engine, handle = _prepare(cfg, g)
    t0 = time.perf_counter()
    result = run_algorithm(cfg, engine, handle)
    wall_ms = (time.perf_counter() - t0) * 1000.0
    summary = summarize(cfg.algo, result.value)
    ld = result.ledger.to_dict()
    if cfg.fmt == "csv":
        _write_csv([build_row(cfg, g, summary, ld, wall_ms)], cfg.out)
    else:
        payload = {
            "config": asdict(cfg),
            "graph": {
                "name": cfg.name or g.name,
                "n": g.n,
                "m": g.m,
                "self_loops_dropped": stats.self_loops_dropped,
                "duplicate_edges_dropped": stats.duplicate_edges_dropped,
                "id_mapping": {str(k): v for k, v in stats.id_mapping.items()},
            },
            "result_summary": summary,
            "value": _json_value(result.value),
            "patterns": _json_value(result.patterns),
            "patterns_limit_hit": result.patterns_limit_hit,
            "extras": _json_value(result.extras),
            "ledger": _json_value(ld),
            "wall_ms": wall_ms,
        }
        _write_text(json.dumps(payload, indent=2) + "\n", cfg.out)
    return 0


def cmd_oracle(args) -> int:
    cfg = _config_from_args(args)
    g, stats = _load(cfg)
    t0 = time.perf_counter()
    value = run_oracle(cfg, g)
    wall_ms = (time.perf_counter() - t0) * 1000.0
    if cfg.algo == "bfs":  # brute-force levels; summary counts reached vertices
        summary = f"bfs_reached={sum(1 for lv in value if lv >= 0)}"
    else:
        summary = summarize(cfg.algo, value)
    if cfg.fmt == "csv":
        _write_csv([build_row(cfg, g, summary, _EMPTY_LEDGER, wall_ms)], cfg.out)
    else:
        payload = {
            "config": asdict(cfg),
            "graph": {"name": cfg.name or g.name, "n": g.n, "m": g.m},
            "result_summary": summary,
            "value": _json_value(value),
            "wall_ms": wall_ms,
        }
        _write_text(json.dumps(payload, indent=2) + "\n", cfg.out)
    return 0


def _parse_sweep_axes(specs: list[str]) -> list[tuple[str, list]]:
    from .config import _coerce

    if not specs:
        raise UsageError("sweep needs at least one --sweep key=v1,v2,... axis")
    if len(specs) > 2:
        raise UsageError("sweep supports at most two axes")
    axes = []
    for spec in specs:
        if "=" not in spec:
            raise UsageError(f"bad sweep spec {spec!r}; expected key=v1,v2,...")
        key, vals = spec.split("=", 1)
        key = key.strip()
        if key not in SWEEP_KEYS:
            raise UsageError(f"cannot sweep {key!r}; choose from {SWEEP_KEYS}")
        values = [_coerce(key, v.strip()) for v in vals.split(",") if v.strip()]
        if not values:
            raise UsageError(f"sweep axis {key!r} has no values")
        axes.append((key, values))
    return axes


def cmd_sweep(args) -> int:
    cfg = _config_from_args(args)
    axes = _parse_sweep_axes(args.sweep)
    g, _stats = _load(cfg)
    rows = []
    names = [name for name, _ in axes]
    for combo in product(*(vals for _, vals in axes)):
        point = replace(cfg, **dict(zip(names, combo)))
        point.validate()
        engine, handle = _prepare(point, g)
        t0 = time.perf_counter()
        result = run_algorithm(point, engine, handle)
        wall_ms = (time.perf_counter() - t0) * 1000.0
        rows.append(build_row(point, g, summarize(point.algo, result.value),
                              result.ledger.to_dict(), wall_ms))
    _write_csv(rows, cfg.out)
    return 0


def cmd_trace(args) -> int:
    if args.trace_cmd == "encode":
        instrs = []
        with open(args.infile) as f:
            for lineno, raw in enumerate(f, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                toks = line.split()
                if len(toks) != 4:
                    raise DataError(
                        f"{args.infile}:{lineno}: expected 'op rs1 rs2 rd'"
                    )
                op = toks[0]
                opcode = isa.OPCODES.get(op)
                if opcode is None:
                    try:
                        opcode = int(op, 0)
                    except ValueError:
                        raise DataError(f"{args.infile}:{lineno}: unknown op {op!r}")
                try:
                    rs1, rs2, rd = (int(t) for t in toks[1:])
                except ValueError:
                    raise DataError(f"{args.infile}:{lineno}: bad register index")
                instrs.append(isa.SisaInstruction(opcode, rs1, rs2, rd))
        isa.write_trace_file(args.outfile, instrs)
        return 0
    instrs = isa.read_trace_file(args.infile)
    lines = [
        f"{i.opcode:#x} {i.rs1} {i.rs2} {i.rd}  # {i.mnemonic}" for i in instrs
    ]
    _write_text("\n".join(lines) + ("\n" if lines else ""), args.outfile)
    return 0


def make_parser() -> _Parser:
    parser = _Parser(prog="sisa", description=__doc__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    p_run = sub.add_parser("run", help="run one algorithm with cost accounting")
    _add_run_flags(p_run)
    p_run.set_defaults(func=cmd_run)

    p_oracle = sub.add_parser("oracle", help="brute-force reference run")
    _add_run_flags(p_oracle)
    p_oracle.set_defaults(func=cmd_oracle)

    p_sweep = sub.add_parser("sweep", help="grid sweep over config axes")
    _add_run_flags(p_sweep)
    p_sweep.add_argument("--sweep", action="append", default=[],
                         metavar="KEY=V1,V2,...")
    p_sweep.set_defaults(func=cmd_sweep)

    p_trace = sub.add_parser("trace", help="instruction trace tools")
    trace_sub = p_trace.add_subparsers(dest="trace_cmd", required=True)
    for name in ("encode", "decode"):
        tp = trace_sub.add_parser(name)
        tp.add_argument("--in", dest="infile", required=True)
        tp.add_argument("--out", dest="outfile",
                        required=(name == "encode"), default="")
        tp.set_defaults(func=cmd_trace)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as e:
        return int(e.code or 0)
    except UsageError as e:
        sys.stderr.write(f"error: {e}\n")
        return 1
    except (DataError, SisaError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except OSError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
