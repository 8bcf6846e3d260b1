"""Cost-accounted set execution.

SetEngine owns the registered (immutable) sets of one or more graphs plus
the policy/cost configuration.  All mining work happens through
WorkerContext, which layers a private ledger, a private metadata-cache
shard, and a private scratch store for temporaries on top of the shared
base store; contexts are therefore safe to drive from parallel workers.

Every catalog operation is charged to one of the three backends:

    merge scans            -> PNM_STREAM   (streaming model)
    galloping / bit probes -> PNM_RANDOM   (latency * probe count)
    bitvector bulk ops     -> PUM          (in-situ row model)

Metadata lookups go through the cache shard: hits are free, misses cost one
DRAM access.  Representation conversions are charged as a stream of the
bitvector side; set creation/destruction is free (allocation plumbing).
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import sets as S
from .costmodel import (
    Backend,
    CostLedger,
    CostParams,
    ScuCache,
    SelectionMode,
    cost_probes,
    cost_pum,
    cost_random,
    cost_streaming,
    ledger_merge,
    scu_access,
    select_variant,
)
from .errors import UsageError
from .graph import Graph, VertexOrder
from .isa import (
    OP_ADD,
    OP_CARD_DIFFERENCE,
    OP_CARD_INTERSECT,
    OP_CARD_UNION,
    OP_DIFFERENCE,
    OP_INTERSECT_DB_DB,
    OP_INTERSECT_GALLOP,
    OP_INTERSECT_MERGE,
    OP_INTERSECT_SA_DB,
    OP_MEMBERSHIP,
    OP_REMOVE,
    OP_UNION,
)
from .sets import (
    DB,
    SA,
    BudgetState,
    RepresentationPolicy,
    SetMetadata,
    SetValue,
    Variant,
    choose_representation,
)

_TEMP_STRIDE = 1 << 40

_INTERSECT_OPCODE = {
    Variant.MERGE: OP_INTERSECT_MERGE,
    Variant.GALLOP: OP_INTERSECT_GALLOP,
    Variant.SA_DB: OP_INTERSECT_SA_DB,
    Variant.DB_DB: OP_INTERSECT_DB_DB,
}


@dataclass
class GraphHandle:
    """A graph bound to engine set IDs."""

    graph: Graph
    neigh: np.ndarray  # set id of N(v), per vertex
    out: np.ndarray | None  # set id of N+(v), per vertex (oriented graphs)
    order: VertexOrder | None = None


class SetEngine:
    def __init__(
        self,
        params: CostParams | None = None,
        policy: RepresentationPolicy | None = None,
        mode: SelectionMode = SelectionMode.COST_MODEL,
        aux_repr: S.SetRepr = DB,
        scu_capacity_bytes: int = 32768,
        scu_entry_bytes: int = 16,
    ):
        self.params = params or CostParams()
        self.policy = policy or RepresentationPolicy()
        self.mode = mode
        self.aux_repr = aux_repr
        self.scu_capacity_bytes = scu_capacity_bytes
        self.scu_entry_bytes = scu_entry_bytes
        self._values: dict[int, SetValue] = {}
        self._meta: dict[int, SetMetadata] = {}
        self._next_id = 0

    # -- registration -------------------------------------------------------

    def register(self, value: SetValue) -> int:
        sid = self._next_id
        self._next_id += 1
        value.payload.setflags(write=False)
        self._values[sid] = value
        self._meta[sid] = SetMetadata(
            set_id=sid,
            repr_kind=value.repr_kind,
            cardinality=value.cardinality(),
            universe=value.universe,
        )
        return sid

    def load_graph(self, g: Graph, order: VertexOrder | None = None) -> GraphHandle:
        """Register all neighborhoods, selecting SA/DB per the policy:
        a set qualifies when its size reaches db_threshold * n, and
        qualifying sets are granted largest-first within the storage
        budget."""
        groups = [[len(a) for a in g.adj]]
        if g.out_adj is not None:
            groups.append([len(a) for a in g.out_adj])
        sizes = [s for grp in groups for s in grp]
        baseline_bits = self.params.word_bits * sum(sizes)
        budget = BudgetState(
            baseline_bits, self.policy.budget_fraction, self.params.word_bits
        )
        flat_order = sorted(range(len(sizes)), key=lambda i: (-sizes[i], i))
        reprs = [SA] * len(sizes)
        for i in flat_order:
            reprs[i] = choose_representation(sizes[i], g.n, self.policy, budget)

        neigh = np.empty(g.n, dtype=np.int64)
        for v in range(g.n):
            val = SetValue(SA, g.adj[v], g.n)
            if reprs[v] is DB:
                val = S.convert(val, DB)
            neigh[v] = self.register(val)
        out = None
        if g.out_adj is not None:
            out = np.empty(g.n, dtype=np.int64)
            for v in range(g.n):
                val = SetValue(SA, g.out_adj[v], g.n)
                if reprs[g.n + v] is DB:
                    val = S.convert(val, DB)
                out[v] = self.register(val)
        return GraphHandle(graph=g, neigh=neigh, out=out, order=order)

    def worker(self, worker_id: int = 0) -> "WorkerContext":
        return WorkerContext(self, worker_id)

    def value(self, sid: int) -> SetValue:
        return self._values[sid]

    def meta(self, sid: int) -> SetMetadata:
        return self._meta[sid]


class WorkerContext:
    """Worker-private view: shared read-only base sets, private temporaries,
    private ledger and metadata-cache shard."""

    def __init__(self, engine: SetEngine, worker_id: int = 0):
        self.engine = engine
        self.worker_id = worker_id
        self.ledger = CostLedger()
        self.scu = ScuCache(engine.scu_capacity_bytes, engine.scu_entry_bytes)
        self._values: dict[int, SetValue] = {}
        self._meta: dict[int, SetMetadata] = {}
        self._next_temp = 0
        self.params = engine.params
        self.policy = engine.policy
        self.mode = engine.mode

    # -- store plumbing (uncosted) -------------------------------------------

    def value(self, sid: int) -> SetValue:
        if sid < 0:
            return self._values[sid]
        return self.engine._values[sid]

    def meta(self, sid: int) -> SetMetadata:
        if sid < 0:
            return self._meta[sid]
        return self.engine._meta[sid]

    def _register_temp(self, value: SetValue) -> int:
        self._next_temp += 1
        sid = -(self.worker_id * _TEMP_STRIDE + self._next_temp)
        self._values[sid] = value
        self._meta[sid] = SetMetadata(
            set_id=sid,
            repr_kind=value.repr_kind,
            cardinality=value.cardinality(),
            universe=value.universe,
        )
        return sid

    def new_set(self, elements=(), universe: int | None = None, repr_kind=None) -> int:
        if universe is None:
            raise UsageError("new_set needs a universe size")
        kind = repr_kind or self.engine.aux_repr
        return self._register_temp(S.make_set(elements, universe, kind))

    def free(self, sid: int) -> None:
        if sid >= 0:
            raise UsageError("cannot free a base set")
        del self._values[sid]
        del self._meta[sid]
        self.scu.invalidate(sid)

    def elements(self, sid: int) -> np.ndarray:
        return self.value(sid).elements()

    # -- accounting helpers ----------------------------------------------------

    def _touch(self, *sids: int) -> None:
        for sid in sids:
            hit, t = scu_access(sid, self.scu, self.params)
            self.ledger.record_scu(hit)
            if t:
                self.ledger.add_time(Backend.PNM_RANDOM, t)

    def _charge(self, backend: Backend, t: float, opcode: int) -> None:
        self.ledger.add_time(backend, t)
        self.ledger.count_op(opcode)

    def _pick_intersect(self, a: int, b: int, variant: Variant):
        ma, mb = self.meta(a), self.meta(b)
        if variant is Variant.AUTO:
            v, t = select_variant(ma, mb, self.params, self.policy, self.mode)
            return v, t
        v = S.resolve_variant(self.value(a), self.value(b), variant)
        if v is Variant.MERGE:
            return v, cost_streaming(ma.cardinality, mb.cardinality, self.params)
        if v is Variant.GALLOP:
            return v, cost_random(ma.cardinality, mb.cardinality, self.params)
        if v is Variant.SA_DB:
            sa_card = mb.cardinality if ma.repr_kind is DB else ma.cardinality
            return v, self.params.dram_latency * sa_card
        return v, cost_pum(ma.universe, self.params)

    @staticmethod
    def _intersect_backend(v: Variant) -> Backend:
        if v is Variant.MERGE:
            return Backend.PNM_STREAM
        if v is Variant.DB_DB:
            return Backend.PUM
        return Backend.PNM_RANDOM

    # -- catalog operations ------------------------------------------------------

    def intersect(self, a: int, b: int, variant: Variant = Variant.AUTO) -> int:
        self._touch(a, b)
        v, t = self._pick_intersect(a, b, variant)
        self._charge(self._intersect_backend(v), t, _INTERSECT_OPCODE[v])
        return self._register_temp(S.intersect(self.value(a), self.value(b), v))

    def intersect_card(self, a: int, b: int, variant: Variant = Variant.AUTO) -> int:
        self._touch(a, b)
        v, t = self._pick_intersect(a, b, variant)
        self._charge(self._intersect_backend(v), t, OP_CARD_INTERSECT)
        return S.intersect_cardinality(self.value(a), self.value(b), v)

    def union(self, a: int, b: int) -> int:
        self._touch(a, b)
        ma, mb = self.meta(a), self.meta(b)
        if ma.repr_kind is SA and mb.repr_kind is SA:
            self._charge(
                Backend.PNM_STREAM,
                cost_streaming(ma.cardinality, mb.cardinality, self.params),
                OP_UNION,
            )
        elif ma.repr_kind is DB and mb.repr_kind is DB:
            self._charge(Backend.PUM, cost_pum(ma.universe, self.params), OP_UNION)
        else:
            sa_card = mb.cardinality if ma.repr_kind is DB else ma.cardinality
            self.ledger.add_time(Backend.PUM, cost_pum(ma.universe, self.params))
            self._charge(
                Backend.PNM_RANDOM, self.params.dram_latency * sa_card, OP_UNION
            )
        return self._register_temp(S.union(self.value(a), self.value(b)))

    def union_card(self, a: int, b: int) -> int:
        """|A u B| fused as |A| + |B| - |A n B|, costed like the intersection."""
        self._touch(a, b)
        v, t = self._pick_intersect(a, b, Variant.AUTO)
        self._charge(self._intersect_backend(v), t, OP_CARD_UNION)
        inter = S.intersect_cardinality(self.value(a), self.value(b), v)
        return self.meta(a).cardinality + self.meta(b).cardinality - inter

    def _pick_difference(self, a: int, b: int, variant: Variant):
        ma, mb = self.meta(a), self.meta(b)
        merge_t = cost_streaming(ma.cardinality, mb.cardinality, self.params)
        gallop_t = cost_probes(ma.cardinality, max(mb.cardinality, 2), self.params)
        if variant is Variant.GALLOP:
            return Variant.GALLOP, gallop_t
        if variant is Variant.MERGE:
            return Variant.MERGE, merge_t
        if self.mode is SelectionMode.FORCE_MERGE:
            return Variant.MERGE, merge_t
        if self.mode is SelectionMode.FORCE_GALLOP:
            return Variant.GALLOP, gallop_t
        if self.mode is SelectionMode.RATIO:
            if mb.cardinality >= self.policy.galloping_threshold * max(ma.cardinality, 1):
                return Variant.GALLOP, gallop_t
            return Variant.MERGE, merge_t
        if gallop_t < merge_t:
            return Variant.GALLOP, gallop_t
        return Variant.MERGE, merge_t

    def _difference_cost(self, a: int, b: int, variant: Variant):
        """(variant-for-values, [(backend, time), ...])"""
        ma, mb = self.meta(a), self.meta(b)
        if ma.repr_kind is SA and mb.repr_kind is SA:
            v, t = self._pick_difference(a, b, variant)
            backend = (
                Backend.PNM_STREAM if v is Variant.MERGE else Backend.PNM_RANDOM
            )
            return v, [(backend, t)]
        if ma.repr_kind is DB and mb.repr_kind is DB:
            return Variant.AUTO, [(Backend.PUM, cost_pum(ma.universe, self.params))]
        if ma.repr_kind is SA:  # probe a's members against b's complement
            return Variant.AUTO, [
                (Backend.PNM_RANDOM, self.params.dram_latency * ma.cardinality)
            ]
        return Variant.AUTO, [  # copy the bitvector, then clear b's members
            (Backend.PUM, cost_pum(ma.universe, self.params)),
            (Backend.PNM_RANDOM, self.params.dram_latency * mb.cardinality),
        ]

    def difference(self, a: int, b: int, variant: Variant = Variant.AUTO) -> int:
        self._touch(a, b)
        v, charges = self._difference_cost(a, b, variant)
        for backend, t in charges[:-1]:
            self.ledger.add_time(backend, t)
        self._charge(*charges[-1], OP_DIFFERENCE)
        return self._register_temp(S.difference(self.value(a), self.value(b), v))

    def difference_card(self, a: int, b: int, variant: Variant = Variant.AUTO) -> int:
        self._touch(a, b)
        v, charges = self._difference_cost(a, b, variant)
        for backend, t in charges[:-1]:
            self.ledger.add_time(backend, t)
        self._charge(*charges[-1], OP_CARD_DIFFERENCE)
        return S.difference(self.value(a), self.value(b), v).cardinality()

    def membership(self, a: int, x: int) -> bool:
        self._touch(a)
        ma = self.meta(a)
        if ma.repr_kind is SA:
            t = cost_probes(1, max(ma.cardinality, 2), self.params)
        else:
            t = self.params.dram_latency
        self._charge(Backend.PNM_RANDOM, t, OP_MEMBERSHIP)
        return S.membership(self.value(a), x)

    def _mutate(self, sid: int, x: int, add: bool) -> None:
        if sid >= 0:
            raise UsageError("base sets are immutable; mutate a private copy")
        self._touch(sid)
        val = self._values[sid]
        meta = self._meta[sid]
        if val.repr_kind is DB:
            self._charge(
                Backend.PNM_RANDOM, self.params.dram_latency, OP_ADD if add else OP_REMOVE
            )
        else:
            self._charge(
                Backend.PNM_STREAM,
                cost_streaming(meta.cardinality, 1, self.params),
                OP_ADD if add else OP_REMOVE,
            )
        present = S.membership(val, x)
        self._values[sid] = S.add_element(val, x) if add else S.remove_element(val, x)
        if add and not present:
            meta.cardinality += 1
        elif not add and present:
            meta.cardinality -= 1

    def add_element(self, sid: int, x: int) -> None:
        self._mutate(sid, x, add=True)

    def remove_element(self, sid: int, x: int) -> None:
        self._mutate(sid, x, add=False)

    def convert(self, sid: int, target: S.SetRepr) -> int:
        self._touch(sid)
        universe = self.meta(sid).universe
        bw = min(self.params.dram_bandwidth, self.params.link_bandwidth)
        self.ledger.add_time(
            Backend.PNM_STREAM, self.params.dram_latency + (universe / 8.0) / bw
        )
        return self._register_temp(S.convert(self.value(sid), target))

    def cardinality(self, sid: int) -> int:
        self._touch(sid)
        return self.meta(sid).cardinality

    def copy_temp(self, sid: int) -> int:
        """Private mutable copy of any set (no charge: allocation plumbing)."""
        return self._register_temp(self.value(sid).copy())


def run_workers(engine: SetEngine, items, worker_fn, workers: int = 1):
    """Deterministically partition `items` (stride w) across worker contexts,
    run them (threads when workers > 1), and merge the ledgers in worker
    order.  Returns (per-worker outputs, merged ledger)."""
    workers = max(1, int(workers))
    contexts = [engine.worker(i) for i in range(workers)]
    parts = [items[i::workers] for i in range(workers)]
    if workers == 1:
        outs = [worker_fn(contexts[0], parts[0])]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(worker_fn, ctx, part)
                for ctx, part in zip(contexts, parts)
            ]
            outs = [f.result() for f in futures]
    merged = contexts[0].ledger
    for ctx in contexts[1:]:
        merged = ledger_merge(merged, ctx.ledger)
    return outs, merged
