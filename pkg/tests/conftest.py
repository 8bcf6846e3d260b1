import pytest

from sisa import graph as G
from sisa.costmodel import CostParams, SelectionMode
from sisa.engine import SetEngine
from sisa.sets import DB, RepresentationPolicy


def named_corpus():
    return [
        G.complete_graph(3),
        G.complete_graph(4),
        G.complete_graph(5),
        G.complete_graph(6),
        G.cycle_graph(5),
        G.path_graph(3),
        G.star_graph(5),
        G.empty_graph(3),
        G.disjoint_union(G.complete_graph(3), G.complete_graph(3), name="2xK3"),
    ]


def random_corpus():
    out = []
    for i, p in enumerate((0.2, 0.3, 0.4, 0.5)):
        for seed in range(5):
            out.append(G.gnp_random_graph(8, p, seed=100 * i + seed))
    return out


def full_corpus():
    return named_corpus() + random_corpus()


def prepare(
    g,
    t: float = 0.4,
    budget: float = 0.10,
    mode: SelectionMode = SelectionMode.COST_MODEL,
    order: str = "exact",
    eps: float = 0.5,
    gallop_threshold: float = 5.0,
    params: CostParams | None = None,
    aux_repr=DB,
):
    """Order, orient, and load a graph into a fresh engine."""
    if order == "exact":
        vo = G.degeneracy_order_exact(g)
    else:
        vo = G.degeneracy_order_approx(g, eps)
    oriented = G.orient(g, vo)
    engine = SetEngine(
        params=params or CostParams(),
        policy=RepresentationPolicy(
            db_threshold=t, budget_fraction=budget, galloping_threshold=gallop_threshold
        ),
        mode=mode,
        aux_repr=aux_repr,
    )
    handle = engine.load_graph(oriented, vo)
    return engine, handle


@pytest.fixture(scope="session")
def corpus():
    return full_corpus()
