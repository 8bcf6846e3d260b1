"""Run configuration: defaults, key=value config files, CLI merging.

Precedence is CLI flags > config file > built-in defaults.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, fields

from .costmodel import CostParams, SelectionMode
from .errors import UsageError
from .mining import MEASURES
from .sets import DB, SA, RepresentationPolicy

ALGOS = ("tc", "4cc", "kcc", "kcs", "mc", "si", "fsm", "sim", "jp", "lp", "bfs")


@dataclass
class RunConfig:
    graph: str = ""
    labels: str = ""
    name: str = ""
    algo: str = "tc"
    k: int = 3
    tau: int = 1
    sigma: float = 0.5
    eps: float = 0.5
    measure: str = "jaccard"
    pattern: str = ""
    labeled: bool = False
    fraction: float = 0.2
    seed: int = 0
    limit: int = 0  # 0 means unlimited
    order: str = "exact"
    kcs_variant: str = "A"
    max_size: int = 4
    root: int = 0
    direction: str = "top_down"
    u: int = 0
    v: int = 1
    t: float = 0.4
    budget: float = 0.10
    gallop_threshold: float = 5.0
    gallop_mode: str = "cost-model"
    aux_repr: str = "db"
    dram_latency: float = 100.0
    dram_bandwidth: float = 16.0
    link_bandwidth: float = 16.0
    insitu_latency: float = 50.0
    parallel_rows: int = 16
    row_bits: int = 65536
    word_bits: int = 32
    literal_streaming: bool = False
    workers: int = 1
    fmt: str = "csv"
    out: str = ""

    def validate(self) -> None:
        if self.algo not in ALGOS:
            raise UsageError(f"unknown algorithm {self.algo!r}; choose from {ALGOS}")
        if self.algo == "kcc" and self.k < 3:
            raise UsageError("kcc needs k >= 3")
        if self.algo == "kcs":
            if self.k < 2:
                raise UsageError("kcs needs k >= 2")
            if self.kcs_variant.upper() not in ("A", "B"):
                raise UsageError("kcs variant must be A or B")
        if self.algo == "si" and not self.pattern:
            raise UsageError("si needs --pattern PATH")
        if self.algo == "fsm" and self.sigma < 0:
            raise UsageError("sigma must be nonnegative")
        if self.algo == "lp" and not (0.0 < self.fraction < 1.0):
            raise UsageError("removal fraction must lie strictly between 0 and 1")
        if self.algo in ("sim", "lp") and self.measure not in MEASURES:
            raise UsageError(f"measure must be one of {MEASURES}")
        if self.algo == "sim" and self.u == self.v:
            raise UsageError("sim needs two distinct vertices")
        if self.algo == "jp" and self.tau < 0:
            raise UsageError("tau must be nonnegative")
        if self.algo == "bfs" and self.direction not in ("top_down", "bottom_up"):
            raise UsageError("direction must be top_down or bottom_up")
        if not (0.0 <= self.t <= 1.0):
            raise UsageError("t must lie in [0, 1]")
        if self.gallop_threshold < 1:
            raise UsageError("gallop_threshold must be >= 1")
        if self.gallop_mode not in ("cost-model", "ratio", "merge", "gallop"):
            raise UsageError("gallop_mode must be cost-model, ratio, merge, or gallop")
        if self.order not in ("exact", "approx"):
            raise UsageError("order must be exact or approx")
        if self.order == "approx" and self.eps <= 0:
            raise UsageError("eps must be positive")
        if self.aux_repr not in ("db", "sa"):
            raise UsageError("aux_repr must be db or sa")
        if self.workers < 1:
            raise UsageError("workers must be >= 1")
        if self.fmt not in ("csv", "json"):
            raise UsageError("format must be csv or json")

    def effective_workers(self) -> int:
        env = os.environ.get("SISA_THREADS")
        if env:
            try:
                return max(1, int(env))
            except ValueError:
                raise UsageError(f"SISA_THREADS must be an integer, got {env!r}")
        return self.workers

    def cost_params(self) -> CostParams:
        return CostParams(
            dram_latency=self.dram_latency,
            dram_bandwidth=self.dram_bandwidth,
            link_bandwidth=self.link_bandwidth,
            insitu_latency=self.insitu_latency,
            parallel_rows=self.parallel_rows,
            row_bits=self.row_bits,
            word_bits=self.word_bits,
            literal_streaming=self.literal_streaming,
        )

    def policy(self) -> RepresentationPolicy:
        return RepresentationPolicy(
            db_threshold=self.t,
            budget_fraction=self.budget,
            galloping_threshold=self.gallop_threshold,
        )

    def selection_mode(self) -> SelectionMode:
        return {
            "cost-model": SelectionMode.COST_MODEL,
            "ratio": SelectionMode.RATIO,
            "merge": SelectionMode.FORCE_MERGE,
            "gallop": SelectionMode.FORCE_GALLOP,
        }[self.gallop_mode]

    def aux_repr_kind(self):
        return DB if self.aux_repr == "db" else SA


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(name: str, raw: str):
    if name not in _FIELD_TYPES:
        raise UsageError(f"unknown config key {name!r}")
    current = getattr(RunConfig(), name)
    if isinstance(current, bool):
        val = raw.strip().lower()
        if val in ("1", "true", "yes", "on"):
            return True
        if val in ("0", "false", "no", "off"):
            return False
        raise UsageError(f"config key {name}: expected a boolean, got {raw!r}")
    if isinstance(current, int):
        return int(raw)
    if isinstance(current, float):
        return float(raw)
    return raw


def load_config_file(path: str) -> dict:
    """Parse "key = value" lines; '#' starts a comment."""
    out = {}
    with open(path) as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, val = (s.strip() for s in line.split("=", 1))
            try:
                out[key] = _coerce(key, val)
            except ValueError:
                raise UsageError(f"{path}:{lineno}: bad value for {key}: {val!r}")
    return out


def build_config(file_values: dict | None = None, cli_values: dict | None = None) -> RunConfig:
    cfg = RunConfig()
    for source in (file_values or {}, cli_values or {}):
        for key, val in source.items():
            if val is None:
                continue
            if not hasattr(cfg, key):
                raise UsageError(f"unknown config key {key!r}")
            setattr(cfg, key, val)
    return cfg
