"""Acceptance suite: one test per acceptance criterion, each printing a
PASS line (run with `pytest tests/test_acceptance.py -v -s`)."""
import time

import numpy as np
import pytest

from conftest import full_corpus, named_corpus, prepare
from sisa import graph as G
from sisa import mining, oracle
from sisa import sets as S
from sisa.costmodel import (
    CostParams,
    SelectionMode,
    cost_pum,
    cost_random,
    cost_streaming,
    select_variant,
)
from sisa.engine import SetEngine
from sisa.isa import MNEMONICS, SisaInstruction, decode, encode
from sisa.sets import DB, SA, RepresentationPolicy, SetMetadata, Variant

PARAMS = CostParams()


def test_oracle_equivalence_full_matrix():
    """Every mining operation equals the brute-force oracle on the corpus."""
    t0 = time.perf_counter()
    corpus = full_corpus()
    patterns = [G.complete_graph(2), G.complete_graph(3), G.path_graph(3)]

    for g in corpus:
        engine, h = prepare(g)
        assert mining.triangle_count(engine, h).value == oracle.triangle_count(g)
        assert mining.four_clique_count(engine, h).value == oracle.four_clique_count(g)
        assert mining.maximal_cliques(engine, h).patterns == oracle.maximal_cliques(g)
        assert mining.bfs(engine, h, 0, "top_down").value == oracle.bfs_parents(g, 0)
        assert mining.bfs(engine, h, 0, "bottom_up").value == oracle.bfs_parents(g, 0)
        for k in (3, 4, 5):
            assert (
                mining.k_clique_count(engine, h, k).value
                == oracle.k_clique_count(g, k)
            ), (g.name, k)
            for variant in ("A", "B"):
                assert (
                    mining.k_clique_star_list(engine, h, k, variant).patterns
                    == oracle.k_clique_stars(g, k)
                ), (g.name, k, variant)
        for tau in (0, 1, 2):
            assert (
                mining.jarvis_patrick(engine, h, tau).value
                == oracle.jarvis_patrick(g, tau)
            ), (g.name, tau)
        for m in mining.MEASURES:
            assert (
                mining.vertex_similarity(engine, h, 0, 1, m).value
                == oracle.vertex_similarity(g, 0, 1, m)
            ), (g.name, m)
        for p in patterns:
            if p.n <= g.n:
                assert (
                    mining.subgraph_isomorphism(engine, h, p).value
                    == oracle.subgraph_isomorphism(g, p)
                ), (g.name, p.name)
        if g.m >= 1:
            assert (
                mining.link_prediction_eval(engine, h, 0.34, "common_neighbors", 0).value
                == oracle.link_prediction_eval(g, 0.34, "common_neighbors", 0)
            ), g.name

    # labeled subgraph isomorphism
    lab_pattern = G.from_edges(
        2, [(0, 1)], vertex_labels=["a", "b"], edge_labels={(0, 1): "x"}
    )
    for seed in (0, 1, 2, 3, 4):
        base = G.gnp_random_graph(8, 0.45, seed=seed)
        g = G.from_edges(
            8,
            base.edges(),
            vertex_labels=[("a" if v % 2 else "b") for v in range(8)],
            edge_labels={e: ("x" if (e[0] + e[1]) % 3 else "y") for e in base.edges()},
        )
        engine, h = prepare(g)
        assert (
            mining.subgraph_isomorphism(engine, h, lab_pattern, labeled=True).value
            == oracle.subgraph_isomorphism(g, lab_pattern, labeled=True)
        ), seed

    # frequent subgraph mining on the named corpus
    for g in named_corpus():
        engine, h = prepare(g)
        assert (
            mining.frequent_subgraph_mining(engine, h, 0.5, max_size=4).value
            == oracle.frequent_subgraph_mining(g, 0.5, max_size=4)
        ), g.name

    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0, f"oracle equivalence took {elapsed:.1f}s (budget 60s)"
    print(f"PASS: oracle equivalence on full corpus and matrix ({elapsed:.1f}s)")


def test_representation_and_variant_invariance():
    """1000 random set pairs per representation combination agree across all
    applicable variants; whole-algorithm outputs agree across t."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    universe = 256
    for _ in range(1000):
        xs = np.unique(rng.integers(0, universe, size=rng.integers(0, 60)))
        ys = np.unique(rng.integers(0, universe, size=rng.integers(0, 60)))
        expect_and = sorted(set(xs.tolist()) & set(ys.tolist()))
        expect_or = sorted(set(xs.tolist()) | set(ys.tolist()))
        expect_diff = sorted(set(xs.tolist()) - set(ys.tolist()))
        reprs_a = [S.make_sa(xs, universe), S.make_db(xs, universe)]
        reprs_b = [S.make_sa(ys, universe), S.make_db(ys, universe)]
        for a in reprs_a:
            for b in reprs_b:
                if a.repr_kind is SA and b.repr_kind is SA:
                    variants = [Variant.MERGE, Variant.GALLOP]
                elif a.repr_kind is DB and b.repr_kind is DB:
                    variants = [Variant.DB_DB]
                else:
                    variants = [Variant.SA_DB]
                for v in variants:
                    assert S.intersect(a, b, v).elements().tolist() == expect_and
                    assert S.intersect_cardinality(a, b, v) == len(expect_and)
                assert S.union(a, b).elements().tolist() == expect_or
                assert S.difference(a, b).elements().tolist() == expect_diff

    g = G.gnp_random_graph(8, 0.45, seed=77)
    reference = None
    for t in (0.0, 0.4, 1.0):
        engine, h = prepare(g, t=t)
        outputs = (
            mining.triangle_count(engine, h).value,
            mining.maximal_cliques(engine, h).patterns,
            mining.k_clique_count(engine, h, 3).value,
            mining.jarvis_patrick(engine, h, 1).value,
        )
        reference = reference or outputs
        assert outputs == reference, t
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0, f"invariance checks took {elapsed:.1f}s (budget 30s)"
    print(f"PASS: representation/variant invariance ({elapsed:.1f}s)")


def test_cost_model_checks():
    """Pinned formula values, argmin selection, and the AUTO inequality on a
    seeded recursive-matrix graph."""
    assert cost_streaming(1000, 500, PARAMS) == 350.0
    assert cost_random(10, 1024, PARAMS) == 10000.0
    assert cost_pum(65536, PARAMS) == 150.0

    policy = RepresentationPolicy()
    rng = np.random.default_rng(11)
    for _ in range(10**4):
        ca = int(rng.integers(0, 1 << int(rng.integers(1, 21))))
        cb = int(rng.integers(0, 1 << int(rng.integers(1, 21))))
        ma = SetMetadata(0, SA, ca, 1 << 20)
        mb = SetMetadata(1, SA, cb, 1 << 20)
        v, t = select_variant(ma, mb, PARAMS, policy)
        assert t == min(cost_streaming(ca, cb, PARAMS), cost_random(ca, cb, PARAMS))

    g = G.rmat_graph(1024, 4096, seed=3)
    totals = {}
    results = {}
    for mode in (
        SelectionMode.COST_MODEL,
        SelectionMode.FORCE_MERGE,
        SelectionMode.FORCE_GALLOP,
    ):
        engine, h = prepare(g, t=1.0, mode=mode)  # all sparse arrays
        res = mining.triangle_count(engine, h)
        totals[mode] = res.ledger.serialized_total
        results[mode] = res.value
    assert len(set(results.values())) == 1
    assert totals[SelectionMode.COST_MODEL] <= min(
        totals[SelectionMode.FORCE_MERGE], totals[SelectionMode.FORCE_GALLOP]
    )
    print(
        "PASS: cost-model checks "
        f"(auto={totals[SelectionMode.COST_MODEL]:.0f} <= "
        f"merge={totals[SelectionMode.FORCE_MERGE]:.0f}, "
        f"gallop={totals[SelectionMode.FORCE_GALLOP]:.0f})"
    )


def test_degeneracy_exact_and_approx_bounds():
    t0 = time.perf_counter()
    for g in full_corpus():
        c = G.degeneracy_order_exact(g).degeneracy_bound
        assert c == oracle.degeneracy(g), g.name
        for eps in (0.1, 0.5, 1.0):
            vo = G.degeneracy_order_approx(g, eps)
            assert sorted(vo.rank.tolist()) == list(range(g.n))
            assert vo.degeneracy_bound <= (2 + eps) * c, (g.name, eps)
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0, f"degeneracy checks took {elapsed:.1f}s (budget 10s)"
    print(f"PASS: degeneracy exact + (2+eps) approximation bound ({elapsed:.1f}s)")


def test_isa_codec_criterion():
    assert encode(SisaInstruction(0x4, rs1=1, rs2=2, rd=3)) == 0x08208196
    rng = np.random.default_rng(5)
    ops = sorted(MNEMONICS)
    for op in ops:
        regs = rng.integers(0, 32, size=(10**4, 3))
        for rs1, rs2, rd in regs:
            instr = SisaInstruction(op, int(rs1), int(rs2), int(rd))
            word = encode(instr)
            assert word & 0x7F == 0x16
            assert decode(word) == instr
    print(f"PASS: codec identity over {len(ops)} opcodes x 10^4 register triples")


def test_policy_fidelity():
    # n = 10, threshold 0.4n = 4: hubs 0..3 have degrees {5,5,4,4}, the six
    # leaves have degree 1, so exactly 40% of vertices qualify
    edges = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    edges += [(0, 4), (0, 5), (1, 6), (1, 7), (2, 8), (3, 9)]
    g = G.from_edges(10, edges)
    degrees = g.degrees
    assert sorted(degrees[:4].tolist()) == [4, 4, 5, 5]
    engine = SetEngine(
        policy=RepresentationPolicy(db_threshold=0.4, budget_fraction=1000.0)
    )
    h = engine.load_graph(g)
    kinds = [engine.meta(int(s)).repr_kind for s in h.neigh]
    assert [k is DB for k in kinds] == [True] * 4 + [False] * 6

    # exact budget accounting at the default 10% cap
    g2 = G.gnp_random_graph(40, 0.6, seed=1)
    policy = RepresentationPolicy(db_threshold=0.4, budget_fraction=0.10)
    engine2 = SetEngine(policy=policy)
    h2 = engine2.load_graph(g2)
    baseline_bits = 32 * int(g2.degrees.sum())
    db_bits = sum(
        g2.n for s in h2.neigh if engine2.meta(int(s)).repr_kind is DB
    )
    assert db_bits <= 0.10 * baseline_bits
    # grants went to the largest eligible neighborhoods first
    granted = [v for v in range(g2.n) if engine2.meta(int(h2.neigh[v])).repr_kind is DB]
    eligible = [v for v in range(g2.n) if g2.degrees[v] >= 0.4 * g2.n]
    by_size = sorted(eligible, key=lambda v: (-int(g2.degrees[v]), v))
    assert granted == sorted(by_size[: len(granted)])
    assert db_bits + g2.n > 0.10 * baseline_bits or len(granted) == len(eligible)
    print(
        f"PASS: policy fidelity (exact 40% threshold; {db_bits} extra bits "
        f"<= 10% of {baseline_bits})"
    )


def test_determinism_and_parallel_soundness():
    corpus = full_corpus()

    def run_once(g, workers):
        engine, h = prepare(g)
        mc = mining.maximal_cliques(engine, h, workers=workers)
        tc = mining.triangle_count(engine, h, workers=workers)
        jp = mining.jarvis_patrick(engine, h, 1, workers=workers)
        return (
            mc.patterns,
            tc.value,
            jp.value,
            mc.ledger.serialized_total,
            tc.ledger.serialized_total,
        )

    for g in corpus:
        first = run_once(g, 1)
        second = run_once(g, 1)
        assert first == second, g.name  # identical results and ledger totals
        eight = run_once(g, 8)
        assert eight[:3] == first[:3], g.name  # identical logical results
    print("PASS: single-worker determinism and 1-vs-8-worker soundness")
