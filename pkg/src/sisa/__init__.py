"""Set-centric graph mining with per-operation cost accounting."""

__version__ = "0.1.0"

from .costmodel import (  # noqa: F401
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
from .engine import GraphHandle, SetEngine, WorkerContext  # noqa: F401
from .graph import (  # noqa: F401
    Graph,
    VertexOrder,
    degeneracy_order_approx,
    degeneracy_order_exact,
    from_edges,
    load_edge_list,
    orient,
)
from .sets import (  # noqa: F401
    DB,
    SA,
    RepresentationPolicy,
    SetMetadata,
    SetRepr,
    SetValue,
    Variant,
    choose_representation,
)
