"""Cayley graphs G_{d,p,q} on PGL_2(F_q) / PSL_2(F_q) and their verified metrics."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field, fields

import numpy as np

from .primes import FamilyParams
from .projective import (
    PGL2,
    GraphSpec,
    GroupTable,
    canonicalize,
    enumerate_group,
    generator_matrix,
    group_order,
    right_multiply,
    square_table,
    table_bytes,
)

__all__ = [
    "MemoryBudgetExceeded",
    "CayleyGraph",
    "GraphReport",
    "build",
    "bfs_levels",
    "check_connected",
    "check_bipartite",
    "two_coloring",
    "girth_bfs",
    "moore_bound",
    "main_inequality_rhs",
    "verify_report",
    "default_memory_gib",
]

MEMORY_ENV = "QUATCAYLEY_MEMORY_GIB"


class MemoryBudgetExceeded(MemoryError):
    pass


def default_memory_gib() -> float:
    return float(os.environ.get(MEMORY_ENV, "8"))


@dataclass(frozen=True, eq=False)
class CayleyGraph:
    """``adjacency[v, s]`` is the vertex ``v * s`` for generator image ``s``.

    Because the generator set is inversion-closed the graph is undirected:
    ``adjacency[adjacency[v, s], inverse[s]] == v``.
    """

    spec: GraphSpec
    table: GroupTable = field(repr=False)
    adjacency: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return int(self.adjacency.shape[0])

    @property
    def degree(self) -> int:
        return int(self.adjacency.shape[1])


def estimate_bytes(spec: GraphSpec) -> int:
    n = group_order(spec.q, spec.group_kind)
    # group table + int32 adjacency + one int64 (n, 4) product buffer per generator pass
    return table_bytes(spec.q, spec.group_kind) + n * (spec.d + 1) * 4 + 3 * n * 4 * 8


def build(spec: GraphSpec, memory_gib: float | None = None) -> CayleyGraph:
    budget = (default_memory_gib() if memory_gib is None else memory_gib) * 2**30
    need = estimate_bytes(spec)
    if need > budget:
        raise MemoryBudgetExceeded(
            f"G({spec.d},{spec.p},{spec.q}) needs about {need / 2**30:.2f} GiB, budget is {budget / 2**30:.2f} GiB"
        )
    table = enumerate_group(spec.q, spec.group_kind)
    gens = generator_matrix(spec)
    adj = np.empty((len(table), len(gens)), dtype=np.int32)
    for s, g in enumerate(gens):
        prod = canonicalize(right_multiply(table.elements, g, spec.q), spec.q)
        adj[:, s] = table.index_of(prod)
    if (adj < 0).any():
        raise AssertionError("a generator image maps outside the vertex group")
    inv = np.asarray(spec.inverse)
    rows = np.arange(adj.shape[0])
    if not (adj[adj, inv[None, :]] == rows[:, None]).all():
        raise AssertionError("adjacency is not symmetric")
    if (adj == rows[:, None]).any():
        raise AssertionError("loop edge: a generator image is the identity")
    adj.setflags(write=False)
    return CayleyGraph(spec=spec, table=table, adjacency=adj)


def bfs_levels(adj: np.ndarray, root: int = 0) -> np.ndarray:
    """Distance from ``root`` for every vertex (-1 when unreachable)."""
    dist = np.full(adj.shape[0], -1, dtype=np.int32)
    dist[root] = 0
    frontier = np.array([root], dtype=np.int64)
    level = 0
    while frontier.size:
        level += 1
        nbrs = np.unique(adj[frontier].ravel())
        nbrs = nbrs[dist[nbrs] < 0]
        dist[nbrs] = level
        frontier = nbrs
    return dist


def _adjacency(g) -> np.ndarray:
    return g.adjacency if isinstance(g, CayleyGraph) else np.asarray(g)


def check_connected(g) -> bool:
    return bool((bfs_levels(_adjacency(g)) >= 0).all())


def two_coloring(g) -> np.ndarray | None:
    """A proper 2-coloring (0/1 per vertex), or None if some component has an odd cycle."""
    adj = _adjacency(g)
    color = np.full(adj.shape[0], -1, dtype=np.int8)
    while (color < 0).any():
        root = int(np.flatnonzero(color < 0)[0])
        dist = bfs_levels(adj, root)
        comp = dist >= 0
        color[comp] = dist[comp] % 2
        verts = np.flatnonzero(comp)
        if (color[adj[verts]] == color[verts][:, None]).any():
            return None
    return color


def check_bipartite(g) -> bool:
    return two_coloring(g) is not None


def girth_bfs(g, root: int = 0) -> float:
    """Length of the shortest cycle through ``root``; ``math.inf`` if there is none.

    For a vertex-transitive graph (every Cayley graph) this is the girth.
    Level ``k`` of the BFS closes an odd cycle ``2k+1`` when an edge joins
    two level-``k`` vertices, and an even cycle ``2k+2`` when a new vertex is
    reached from two different level-``k`` vertices.
    """
    adj = _adjacency(g)
    dist = np.full(adj.shape[0], -1, dtype=np.int32)
    dist[root] = 0
    frontier = np.array([root], dtype=np.int64)
    k = 0
    while frontier.size:
        nbrs = adj[frontier].ravel()
        if (dist[nbrs] == k).any():
            return 2 * k + 1
        fresh = nbrs[dist[nbrs] < 0]
        uniq, counts = np.unique(fresh, return_counts=True)
        if (counts > 1).any():
            return 2 * k + 2
        dist[uniq] = k + 1
        frontier = uniq
        k += 1
    return math.inf


def moore_bound(degree: int, n: int, parity: str) -> float:
    """Upper bound on the girth of a ``degree``-regular graph on ``n`` vertices."""
    if degree < 3:
        raise ValueError("degree must be >= 3")
    lg = math.log(n) / math.log(degree - 1)
    if parity == "odd":
        return 2 * lg + 1
    if parity == "even":
        return 2 * lg + 2 - 2 * math.log(2) / math.log(degree - 1)
    raise ValueError(f"parity must be 'odd' or 'even', got {parity!r}")


def main_inequality_rhs(d: int, p: int, n: int, legendre_pq: int) -> float:
    """Girth lower bound: ``(2/3k) log_d n`` when (p/q) = 1, ``(4/3k) log_d n - log_p 4`` when -1."""
    kappa = math.log(p) / math.log(d)
    log_d_n = math.log(n) / math.log(d)
    if legendre_pq == 1:
        return 2.0 / (3.0 * kappa) * log_d_n
    return 4.0 / (3.0 * kappa) * log_d_n - math.log(4) / math.log(p)


# absolute slack on floating comparisons against the analytic bounds
BOUND_TOL = 1e-9


@dataclass(frozen=True)
class GraphReport:
    d: int
    p: int
    q: int
    group_kind: str
    n: int
    degree: int
    connected: bool
    bipartite: bool
    girth: int
    girth_method_agreement: bool
    main_inequality_rhs: float
    main_inequality_ok: bool
    moore_rhs: float
    moore_ok: bool
    girth_ratio: float
    legendre_pq: int
    theoretical_regime: bool
    psl_bipartition: bool | None = None

    def as_record(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def violations(self) -> list[str]:
        """Invariants that fail for this instance."""
        bad = []
        if self.degree != self.d + 1:
            bad.append("regularity")
        if self.connected and not self.main_inequality_ok:
            bad.append("main_inequality")
        if not self.moore_ok:
            bad.append("moore")
        if not self.girth_method_agreement:
            bad.append("girth_method_agreement")
        if self.connected and self.bipartite != (self.legendre_pq == -1):
            bad.append("bipartite_vs_legendre")
        if self.bipartite and self.girth % 2:
            bad.append("odd_girth_in_bipartite")
        if self.psl_bipartition is False:
            bad.append("psl_bipartition")
        return bad


def verify_report(g: CayleyGraph, params: FamilyParams | None = None, word_check: bool = True) -> GraphReport:
    """Run every check on a built graph.

    ``params`` only has to agree with the graph's ``(d, p)``; the bound uses
    ``kappa = log_d p`` of the graph itself.  With ``word_check`` the girth
    is recomputed by the word search and compared with the BFS value.
    """
    from .wordgirth import girth_words

    spec = g.spec
    if params is not None and (params.d, params.p) != (spec.d, spec.p):
        raise ValueError(f"params are for (d, p) = ({params.d}, {params.p}), graph is ({spec.d}, {spec.p})")
    connected = check_connected(g)
    coloring = two_coloring(g)
    bipartite = coloring is not None
    psl_bipartition = None
    if bipartite and connected and spec.group_kind == PGL2:
        det = (g.table.elements[:, 0] * g.table.elements[:, 3] - g.table.elements[:, 1] * g.table.elements[:, 2]) % spec.q
        in_psl = square_table(spec.q)[det]
        # the identity (vertex 0, color 0) lies in PSL_2
        psl_bipartition = bool(((coloring == 0) == in_psl).all()) and int(in_psl.sum()) * 2 == g.n
    girth = girth_bfs(g)
    if math.isinf(girth):
        raise AssertionError("a Cayley graph with d >= 2 generators cannot be acyclic")
    girth = int(girth)
    if word_check:
        wg = girth_words(spec, max_len=girth)
        agreement = wg.girth == girth
    else:
        agreement = True
    rhs = main_inequality_rhs(spec.d, spec.p, g.n, spec.legendre_pq)
    parity = "odd" if girth % 2 else "even"
    moore = moore_bound(g.degree, g.n, parity)
    return GraphReport(
        d=spec.d,
        p=spec.p,
        q=spec.q,
        group_kind=spec.group_kind,
        n=g.n,
        degree=g.degree,
        connected=connected,
        bipartite=bipartite,
        girth=girth,
        girth_method_agreement=agreement,
        main_inequality_rhs=rhs,
        main_inequality_ok=girth >= rhs - BOUND_TOL,
        moore_rhs=moore,
        moore_ok=girth <= moore + BOUND_TOL,
        girth_ratio=girth / (math.log(g.n) / math.log(spec.d)),
        legendre_pq=spec.legendre_pq,
        theoretical_regime=spec.theoretical_regime,
        psl_bipartition=psl_bipartition,
    )
