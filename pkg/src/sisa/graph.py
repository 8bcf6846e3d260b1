"""Graph loading, degeneracy ordering, edge orientation, and generators.

Graphs are immutable once built: vertex IDs are dense ints in [0, n), each
neighborhood is a sorted int32 array, and every undirected edge appears in
both endpoint neighborhoods.  Orientation adds per-vertex out-neighborhoods
(edges pointing from lower to higher order rank).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import GraphFormatError, UsageError


@dataclass(frozen=True)
class Graph:
    n: int
    m: int
    adj: tuple  # per-vertex sorted int32 arrays
    vertex_labels: tuple | None = None
    edge_labels: dict | None = None  # (u, v) with u < v -> label
    out_adj: tuple | None = None
    name: str = ""

    @property
    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adj], dtype=np.int64)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            nbrs = self.adj[u]
            for v in nbrs[nbrs > u]:
                out.append((u, int(v)))
        return out

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adj[u]
        i = int(np.searchsorted(a, v))
        return i < len(a) and int(a[i]) == v

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and all(np.array_equal(a, b) for a, b in zip(self.adj, other.adj))
            and self.vertex_labels == other.vertex_labels
            and self.edge_labels == other.edge_labels
        )

    def __hash__(self):
        return hash((self.n, self.m))


@dataclass(frozen=True)
class VertexOrder:
    rank: np.ndarray  # rank[v] = position of v in the order
    degeneracy_bound: int

    def sequence(self) -> np.ndarray:
        """Vertices listed in order position."""
        return np.argsort(self.rank, kind="stable")


@dataclass
class LoadStats:
    duplicate_edges_dropped: int = 0
    self_loops_dropped: int = 0
    lines_parsed: int = 0
    id_mapping: dict = field(default_factory=dict)  # original id -> dense id


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def from_edges(
    n: int,
    edges,
    vertex_labels=None,
    edge_labels=None,
    name: str = "",
) -> Graph:
    """Build a graph from (u, v) pairs over vertex IDs already in [0, n).
    Self-loops and duplicates are dropped silently."""
    seen = set()
    for u, v in edges:
        if u == v:
            continue
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge ({u}, {v}) outside vertex range [0, {n})")
        seen.add((min(u, v), max(u, v)))
    adj = [[] for _ in range(n)]
    for u, v in seen:
        adj[u].append(v)
        adj[v].append(u)
    adj_arrays = tuple(_freeze(np.array(sorted(a), dtype=np.int32)) for a in adj)
    return Graph(
        n=n,
        m=len(seen),
        adj=adj_arrays,
        vertex_labels=tuple(vertex_labels) if vertex_labels is not None else None,
        edge_labels=dict(edge_labels) if edge_labels else None,
        name=name,
    )


def _read_text(source) -> str:
    if isinstance(source, bytes):
        return source.decode()
    if isinstance(source, str):
        return source
    data = source.read()
    return data.decode() if isinstance(data, bytes) else data


def load_edge_list(source, labeled: bool = False, name: str = "") -> tuple[Graph, LoadStats]:
    """Parse a whitespace-separated edge list.

    Lines are "u v" (or "u v edge_label" when labeled); '#'/'%' lines are
    comments.  When labeled, leading "v <id> <label>" lines assign vertex
    labels.  Original IDs are remapped to [0, n) in sorted-ID order so the
    result is invariant under line reordering; the mapping is reported in
    the stats.
    """
    text = _read_text(source)
    stats = LoadStats()
    raw_edges: list[tuple[int, int]] = []
    raw_edge_labels: dict[tuple[int, int], str] = {}
    raw_vertex_labels: dict[int, str] = {}

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        toks = line.split()
        if labeled and toks[0] == "v":
            if len(toks) != 3:
                raise GraphFormatError(
                    f"line {lineno}: vertex label line needs 'v <id> <label>'"
                )
            try:
                raw_vertex_labels[int(toks[1])] = toks[2]
            except ValueError:
                raise GraphFormatError(f"line {lineno}: bad vertex id {toks[1]!r}")
            continue
        max_toks = 3 if labeled else 2
        if len(toks) < 2 or len(toks) > max_toks:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex id in {line!r}")
        stats.lines_parsed += 1
        if u == v:
            stats.self_loops_dropped += 1
            continue
        key = (min(u, v), max(u, v))
        raw_edges.append(key)
        if labeled and len(toks) == 3:
            raw_edge_labels[key] = toks[2]

    unique = sorted(set(raw_edges))
    stats.duplicate_edges_dropped = len(raw_edges) - len(unique)
    if not unique:
        raise GraphFormatError("empty graph: no edges found")

    ids = sorted({x for e in unique for x in e} | set(raw_vertex_labels))
    stats.id_mapping = {orig: i for i, orig in enumerate(ids)}
    n = len(ids)
    remapped = [(stats.id_mapping[u], stats.id_mapping[v]) for u, v in unique]

    vlabels = None
    if labeled and raw_vertex_labels:
        vlabels = [None] * n
        for orig, lab in raw_vertex_labels.items():
            vlabels[stats.id_mapping[orig]] = lab
    elabels = None
    if raw_edge_labels:
        elabels = {
            (stats.id_mapping[u], stats.id_mapping[v]): lab
            for (u, v), lab in raw_edge_labels.items()
        }

    g = from_edges(n, remapped, vertex_labels=vlabels, edge_labels=elabels, name=name)
    return g, stats


def attach_vertex_labels(g: Graph, stats: LoadStats, source) -> Graph:
    """Apply a "vertex_id label" file (IDs are original, pre-remap IDs)."""
    text = _read_text(source)
    labels = [None] * g.n
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        toks = line.split()
        if len(toks) != 2:
            raise GraphFormatError(f"label line {lineno}: expected 'vertex_id label'")
        try:
            orig = int(toks[0])
        except ValueError:
            raise GraphFormatError(f"label line {lineno}: bad vertex id {toks[0]!r}")
        if orig not in stats.id_mapping:
            raise GraphFormatError(f"label line {lineno}: unknown vertex {orig}")
        labels[stats.id_mapping[orig]] = toks[1]
    return replace(g, vertex_labels=tuple(labels))


def degeneracy_order_exact(g: Graph) -> VertexOrder:
    """Iterative minimum-degree peeling; ties broken by lowest vertex ID.
    The bound equals the graph degeneracy exactly."""
    deg = g.degrees.copy()
    alive = np.ones(g.n, dtype=bool)
    rank = np.empty(g.n, dtype=np.int32)
    sentinel = g.n + int(deg.max(initial=0)) + 1
    bound = 0
    for i in range(g.n):
        masked = np.where(alive, deg, sentinel)
        v = int(np.argmin(masked))  # argmin takes the lowest ID on ties
        bound = max(bound, int(deg[v]))
        rank[v] = i
        alive[v] = False
        nbrs = g.adj[v]
        live = nbrs[alive[nbrs]]
        deg[live] -= 1
    return VertexOrder(rank=_freeze(rank), degeneracy_bound=bound)


def degeneracy_order_approx(g: Graph, eps: float) -> VertexOrder:
    """Round-based peeling: each round retires every vertex whose residual
    degree is at most (1 + eps) times the residual average, then deletes
    them from the residual graph.  Vertices are ranked by (round, ID)."""
    if eps <= 0:
        raise UsageError("eps must be positive")
    deg = g.degrees.copy()
    alive = np.ones(g.n, dtype=bool)
    rank = np.empty(g.n, dtype=np.int32)
    pos = 0
    while alive.any():
        avg = deg[alive].mean()
        sel = alive & (deg <= (1.0 + eps) * avg)
        for v in np.flatnonzero(sel):
            rank[v] = pos
            pos += 1
        for v in np.flatnonzero(sel):
            deg[g.adj[v]] -= 1
        alive &= ~sel
    order = VertexOrder(rank=_freeze(rank), degeneracy_bound=0)
    bound = max_out_degree(g, order)
    return VertexOrder(rank=order.rank, degeneracy_bound=bound)


def max_out_degree(g: Graph, order: VertexOrder) -> int:
    r = order.rank
    best = 0
    for v in range(g.n):
        nbrs = g.adj[v]
        best = max(best, int(np.count_nonzero(r[nbrs] > r[v])))
    return best


def orient(g: Graph, order: VertexOrder) -> Graph:
    """Direct each edge from lower to higher rank; out-neighborhoods stay
    sorted by vertex ID."""
    r = np.asarray(order.rank)
    if not np.array_equal(np.sort(r), np.arange(g.n)):
        raise UsageError("order.rank is not a permutation of the vertices")
    out = tuple(_freeze(g.adj[v][r[g.adj[v]] > r[v]]) for v in range(g.n))
    return replace(g, out_adj=out)


# ---------------------------------------------------------------------------
# Generators (used by tests, the benchmark CLI, and the cost-model checks)


def complete_graph(k: int, name: str = "") -> Graph:
    return from_edges(k, [(i, j) for i in range(k) for j in range(i + 1, k)],
                      name=name or f"K{k}")


def cycle_graph(k: int, name: str = "") -> Graph:
    return from_edges(k, [(i, (i + 1) % k) for i in range(k)], name=name or f"C{k}")


def path_graph(k: int, name: str = "") -> Graph:
    return from_edges(k, [(i, i + 1) for i in range(k - 1)], name=name or f"P{k}")


def star_graph(leaves: int, name: str = "") -> Graph:
    return from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)],
                      name=name or f"S{leaves}")


def empty_graph(k: int, name: str = "") -> Graph:
    return from_edges(k, [], name=name or f"E{k}")


def disjoint_union(a: Graph, b: Graph, name: str = "") -> Graph:
    edges = a.edges() + [(u + a.n, v + a.n) for u, v in b.edges()]
    return from_edges(a.n + b.n, edges, name=name)


def gnp_random_graph(n: int, p: float, seed: int, name: str = "") -> Graph:
    rng = np.random.default_rng(seed)
    mat = rng.random((n, n))
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if mat[i, j] < p]
    return from_edges(n, edges, name=name or f"gnp{n}_{seed}")


def rmat_graph(
    n: int,
    m: int,
    seed: int,
    a: float = 0.57,
    b: float = 0.19,
    c: float = 0.19,
    name: str = "",
) -> Graph:
    """Recursive-matrix random graph; n must be a power of two.  Distinct
    non-loop undirected edges are accumulated until m are found."""
    if n & (n - 1) or n <= 1:
        raise UsageError("rmat size must be a power of two > 1")
    levels = int(math.log2(n))
    rng = np.random.default_rng(seed)
    edges: set[tuple[int, int]] = set()
    while len(edges) < m:
        batch = max(1024, 2 * (m - len(edges)))
        r = rng.random((batch, levels))
        u_bit = r >= a + b
        v_bit = ((r >= a) & (r < a + b)) | (r >= a + b + c)
        us = np.zeros(batch, dtype=np.int64)
        vs = np.zeros(batch, dtype=np.int64)
        for lvl in range(levels):
            us = (us << 1) | u_bit[:, lvl]
            vs = (vs << 1) | v_bit[:, lvl]
        for u, v in zip(us.tolist(), vs.tolist()):
            if u != v:
                edges.add((min(u, v), max(u, v)))
                if len(edges) >= m:
                    break
    return from_edges(n, sorted(edges), name=name or f"rmat{n}_{seed}")


def sample_edges(edges: list, fraction: float, seed: int) -> list:
    """Seeded uniform sample of ceil(fraction * m) edges (sorted)."""
    if not (0.0 < fraction < 1.0):
        raise UsageError("removal fraction must lie strictly between 0 and 1")
    k = math.ceil(fraction * len(edges))
    rng = np.random.default_rng(seed)
    idx = rng.choice(len(edges), size=k, replace=False)
    return sorted(edges[i] for i in np.sort(idx))
