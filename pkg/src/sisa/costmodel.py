"""Analytic cost models for the three execution backends, variant selection,
and the bookkeeping objects (ledger, metadata cache) used to account them.

Backends:
  PNM_STREAM  streaming scans in near-memory cores (merge-style ops)
  PNM_RANDOM  latency-bound probes in near-memory cores (galloping, bit probes)
  PUM         in-situ bulk bitwise ops on whole DRAM rows (bitvector ops)

The streaming model divides the streamed bytes by the bottleneck bandwidth;
`literal_streaming` switches to multiplying by it instead, for fidelity
experiments with the (dimensionally odd) published formula.
"""
from __future__ import annotations

import enum
from collections import OrderedDict
from dataclasses import dataclass, field, replace

from .errors import UsageError
from .sets import DB, SA, RepresentationPolicy, SetMetadata, Variant


@dataclass(frozen=True)
class CostParams:
    """Model constants.  Times are abstract units (think ns), bandwidths
    bytes per unit, sizes in elements or bits as noted."""

    dram_latency: float = 100.0  # one DRAM access
    dram_bandwidth: float = 16.0  # bytes/unit into a near-memory core
    link_bandwidth: float = 16.0  # bytes/unit between cores
    insitu_latency: float = 50.0  # one bulk bitwise op over q rows
    parallel_rows: int = 16  # rows processable per bulk op
    row_bits: int = 65536  # DRAM row size in bits (8 KB)
    word_bits: int = 32  # element width for storage accounting
    literal_streaming: bool = False

    def __post_init__(self):
        for name in (
            "dram_latency",
            "dram_bandwidth",
            "link_bandwidth",
            "insitu_latency",
            "parallel_rows",
            "row_bits",
            "word_bits",
        ):
            if getattr(self, name) <= 0:
                raise UsageError(f"cost parameter {name} must be positive")
        if self.row_bits % 8 != 0:
            raise UsageError("row_bits must be a multiple of 8")

    def with_updates(self, **kw) -> "CostParams":
        return replace(self, **kw)


def _ceil_log2(x: int) -> int:
    # ceil(log2(max(x, 2))), integer-exact
    x = max(int(x), 2)
    return (x - 1).bit_length()


def cost_streaming(size_a: int, size_b: int, p: CostParams) -> float:
    """Merge-style scan over two element streams of the given lengths."""
    bw = min(p.dram_bandwidth, p.link_bandwidth)
    volume = (p.word_bits / 8.0) * max(size_a, size_b)
    if p.literal_streaming:
        return p.dram_latency + volume * bw
    return p.dram_latency + volume / bw


def cost_random(size_a: int, size_b: int, p: CostParams) -> float:
    """Binary-search probes of the smaller set into the larger one."""
    probes = min(size_a, size_b)
    return p.dram_latency * probes * _ceil_log2(max(size_a, size_b))


def cost_probes(count: int, haystack: int, p: CostParams) -> float:
    """`count` binary-search probes into a set of size `haystack`."""
    return p.dram_latency * count * _ceil_log2(haystack)


def cost_pum(n_bits: int, p: CostParams) -> float:
    """One bulk bitwise operation over an n_bits-wide bitvector."""
    rows = -(-int(n_bits) // (p.parallel_rows * p.row_bits))  # ceil
    return p.dram_latency + p.insitu_latency * rows


class Backend(enum.Enum):
    PNM_STREAM = "pnm_stream"
    PNM_RANDOM = "pnm_random"
    PUM = "pum"


class SelectionMode(enum.Enum):
    COST_MODEL = "cost-model"
    RATIO = "ratio"
    FORCE_MERGE = "merge"
    FORCE_GALLOP = "gallop"


def select_variant(
    meta_a: SetMetadata,
    meta_b: SetMetadata,
    p: CostParams,
    policy: RepresentationPolicy,
    mode: SelectionMode = SelectionMode.COST_MODEL,
) -> tuple[Variant, float]:
    """Pick the intersection variant for two sets from their metadata.

    Two bitvectors always go in-situ; a mixed pair always probes the
    bitvector.  For two sparse arrays, cost-model mode takes the argmin of
    the streaming and random models (ties to merge); ratio mode gallops
    when one set is galloping_threshold times larger than the other.
    """
    ca, cb = meta_a.cardinality, meta_b.cardinality
    if meta_a.repr_kind is DB and meta_b.repr_kind is DB:
        return Variant.DB_DB, cost_pum(meta_a.universe, p)
    if meta_a.repr_kind is DB or meta_b.repr_kind is DB:
        sa_card = cb if meta_a.repr_kind is DB else ca
        return Variant.SA_DB, p.dram_latency * sa_card
    merge_t = cost_streaming(ca, cb, p)
    gallop_t = cost_random(ca, cb, p)
    if mode is SelectionMode.FORCE_MERGE:
        return Variant.MERGE, merge_t
    if mode is SelectionMode.FORCE_GALLOP:
        return Variant.GALLOP, gallop_t
    if mode is SelectionMode.RATIO:
        lo, hi = min(ca, cb), max(ca, cb)
        gallop = hi >= policy.galloping_threshold * lo and hi > 0
        return (Variant.GALLOP, gallop_t) if gallop else (Variant.MERGE, merge_t)
    if gallop_t < merge_t:
        return Variant.GALLOP, gallop_t
    return Variant.MERGE, merge_t


class ScuCache:
    """LRU cache standing in for the dispatcher's metadata cache."""

    def __init__(self, capacity_bytes: int = 32768, entry_size_bytes: int = 16):
        if capacity_bytes <= 0 or entry_size_bytes <= 0:
            raise UsageError("cache sizes must be positive")
        self.capacity_entries = max(1, capacity_bytes // entry_size_bytes)
        self._lru: OrderedDict[int, None] = OrderedDict()

    def access(self, set_id: int) -> bool:
        """Touch an entry; returns True on hit, installs + evicts on miss."""
        if set_id in self._lru:
            self._lru.move_to_end(set_id)
            return True
        self._lru[set_id] = None
        if len(self._lru) > self.capacity_entries:
            self._lru.popitem(last=False)
        return False

    def invalidate(self, set_id: int) -> None:
        self._lru.pop(set_id, None)

    def __len__(self) -> int:
        return len(self._lru)


def scu_access(set_id: int, cache: ScuCache, p: CostParams) -> tuple[bool, float]:
    """Metadata lookup: free on a cache hit, one DRAM access on a miss."""
    hit = cache.access(set_id)
    return hit, 0.0 if hit else p.dram_latency


@dataclass
class CostLedger:
    """Accumulated simulated time per backend plus instruction and
    metadata-cache counters for one run (or one worker)."""

    times: dict = field(
        default_factory=lambda: {b: 0.0 for b in Backend}
    )
    op_counts: dict = field(default_factory=dict)
    scu_hits: int = 0
    scu_misses: int = 0

    def add_time(self, backend: Backend, t: float) -> None:
        self.times[backend] += t

    def count_op(self, opcode: int, k: int = 1) -> None:
        self.op_counts[opcode] = self.op_counts.get(opcode, 0) + k

    def record_scu(self, hit: bool) -> None:
        if hit:
            self.scu_hits += 1
        else:
            self.scu_misses += 1

    @property
    def serialized_total(self) -> float:
        return sum(self.times.values())

    def to_dict(self) -> dict:
        return {
            "sim_time_total": self.serialized_total,
            "sim_time_pnm_stream": self.times[Backend.PNM_STREAM],
            "sim_time_pnm_random": self.times[Backend.PNM_RANDOM],
            "sim_time_pum": self.times[Backend.PUM],
            "scu_hits": self.scu_hits,
            "scu_misses": self.scu_misses,
            "op_counts": {f"{op:#x}": c for op, c in sorted(self.op_counts.items())},
        }


def ledger_merge(a: CostLedger, b: CostLedger) -> CostLedger:
    """Component-wise sum; commutative and associative."""
    out = CostLedger()
    for backend in Backend:
        out.times[backend] = a.times[backend] + b.times[backend]
    for src in (a, b):
        for op, c in src.op_counts.items():
            out.op_counts[op] = out.op_counts.get(op, 0) + c
    out.scu_hits = a.scu_hits + b.scu_hits
    out.scu_misses = a.scu_misses + b.scu_misses
    return out
