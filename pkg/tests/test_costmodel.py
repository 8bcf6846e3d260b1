"""Cost formulas, variant selection, the metadata cache, and ledgers."""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sisa.costmodel import (
    Backend,
    CostLedger,
    CostParams,
    ScuCache,
    SelectionMode,
    cost_pum,
    cost_random,
    cost_streaming,
    ledger_merge,
    scu_access,
    select_variant,
)
from sisa.errors import UsageError
from sisa.sets import DB, SA, RepresentationPolicy, SetMetadata, Variant

P = CostParams()


def _meta(card, kind, universe=1 << 20, sid=0):
    return SetMetadata(set_id=sid, repr_kind=kind, cardinality=card, universe=universe)


def test_cost_streaming_examples():
    assert cost_streaming(1000, 500, P) == 350.0
    assert cost_streaming(0, 0, P) == P.dram_latency
    base = cost_streaming(100, 50, P) - P.dram_latency
    assert cost_streaming(200, 50, P) - P.dram_latency == 2 * base


def test_cost_streaming_literal_flag():
    lit = CostParams(literal_streaming=True)
    assert cost_streaming(1000, 500, lit) == 100.0 + 4.0 * 1000 * 16


def test_cost_random_examples():
    assert cost_random(10, 1024, P) == 10000.0
    assert cost_random(0, 12345, P) == 0.0
    assert cost_random(1, 2, P) == 100.0


def test_cost_pum_examples():
    assert cost_pum(65536, P) == 150.0
    assert cost_pum(0, P) == P.dram_latency
    q_r = P.parallel_rows * P.row_bits
    assert cost_pum(q_r + 1, P) == P.dram_latency + 2 * P.insitu_latency


def test_params_validation():
    with pytest.raises(UsageError):
        CostParams(dram_latency=0)
    with pytest.raises(UsageError):
        CostParams(row_bits=100)


@given(
    a=st.integers(min_value=0, max_value=10**6),
    b=st.integers(min_value=0, max_value=10**6),
    da=st.integers(min_value=0, max_value=10**4),
    db_=st.integers(min_value=0, max_value=10**4),
)
@settings(max_examples=200, deadline=None)
def test_costs_monotone(a, b, da, db_):
    assert cost_streaming(a + da, b + db_, P) >= cost_streaming(a, b, P)
    assert cost_random(a + da, b + db_, P) >= cost_random(a, b, P)
    assert cost_pum(a + da, P) >= cost_pum(a, P)


def test_select_variant_db_pairs():
    policy = RepresentationPolicy()
    v, t = select_variant(_meta(500, DB, 65536), _meta(9000, DB, 65536), P, policy)
    assert v is Variant.DB_DB and t == cost_pum(65536, P)
    v, t = select_variant(_meta(12, SA), _meta(9000, DB), P, policy)
    assert v is Variant.SA_DB and t == P.dram_latency * 12
    v, _ = select_variant(_meta(9000, DB), _meta(12, SA), P, policy)
    assert v is Variant.SA_DB


def test_select_variant_cost_model_examples():
    policy = RepresentationPolicy()
    v, _ = select_variant(_meta(100, SA), _meta(100, SA), P, policy)
    assert v is Variant.MERGE
    v, _ = select_variant(
        _meta(10, SA), _meta(1000, SA), P, policy, SelectionMode.RATIO
    )
    assert v is Variant.GALLOP
    v, _ = select_variant(_meta(1, SA), _meta(1 << 20, SA), P, policy)
    assert v is Variant.GALLOP  # one probe beats streaming a megabyte


def test_select_variant_is_argmin():
    policy = RepresentationPolicy()
    import numpy as np

    rng = np.random.default_rng(3)
    for _ in range(10**4):
        ca = int(rng.integers(0, 1 << int(rng.integers(1, 21))))
        cb = int(rng.integers(0, 1 << int(rng.integers(1, 21))))
        v, t = select_variant(_meta(ca, SA), _meta(cb, SA), P, policy)
        merge_t = cost_streaming(ca, cb, P)
        gallop_t = cost_random(ca, cb, P)
        assert t == min(merge_t, gallop_t)
        assert v is (Variant.GALLOP if gallop_t < merge_t else Variant.MERGE)


def test_scu_cache_examples():
    cache = ScuCache()
    hit, t = scu_access(1, cache, P)
    assert (hit, t) == (False, P.dram_latency)
    hit, t = scu_access(1, cache, P)
    assert (hit, t) == (True, 0.0)


def test_scu_lru_eviction():
    cache = ScuCache(capacity_bytes=32768, entry_size_bytes=16)
    assert cache.capacity_entries == 2048
    for sid in range(2049):
        scu_access(sid, cache, P)
    hit, _ = scu_access(0, cache, P)  # evicted by the 2049th distinct id
    assert not hit
    hit, _ = scu_access(2048, cache, P)
    assert hit


def test_ledger_merge_identity_commutativity():
    a = CostLedger()
    a.add_time(Backend.PUM, 5.0)
    a.count_op(0x4)
    a.record_scu(True)
    empty = CostLedger()
    assert ledger_merge(a, empty).to_dict() == a.to_dict()
    b = CostLedger()
    b.add_time(Backend.PNM_STREAM, 2.5)
    b.count_op(0x4)
    b.count_op(0x0)
    b.record_scu(False)
    assert ledger_merge(a, b).to_dict() == ledger_merge(b, a).to_dict()
    ab_c = ledger_merge(ledger_merge(a, b), a)
    a_bc = ledger_merge(a, ledger_merge(b, a))
    assert ab_c.to_dict() == a_bc.to_dict()


def test_ledger_merge_partitioned_equals_whole():
    """Eight per-worker ledgers over a partitioned workload merge to the
    single-worker ledger (each op touches fresh set IDs, so cache shards
    behave identically)."""
    from sisa.engine import SetEngine, run_workers
    from sisa.sets import make_sa

    engine = SetEngine()
    ids = [
        (engine.register(make_sa(range(i % 7), 64)),
         engine.register(make_sa(range(3, 9), 64)))
        for i in range(64)
    ]

    def work(ctx, pairs):
        return [ctx.intersect_card(a, b) for a, b in pairs]

    outs1, ledger1 = run_workers(engine, ids, work, workers=1)
    outs8, ledger8 = run_workers(engine, ids, work, workers=8)
    assert sorted(x for o in outs8 for x in o) == sorted(outs1[0])
    assert ledger8.to_dict() == ledger1.to_dict()
