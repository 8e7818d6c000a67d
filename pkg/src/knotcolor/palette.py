"""Palette graphs, their spanning forests and (n, m)-adjacency matrices."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .coloring import Coloring, validate_coloring
from .diagram import KnotDiagram
from .errors import InvalidParameters, NotConnected
from .linalg import det_int, drop_column, rank_mod_p

SOLID = "solid"
BROKEN = "broken"


@dataclass(frozen=True, order=True)
class PaletteEdge:
    src: int
    label: int
    dst: int
    origin: str = SOLID

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.src, self.label, self.dst)

    @property
    def is_loop(self) -> bool:
        return self.src == self.dst


@dataclass(frozen=True)
class PaletteGraph:
    n: int
    m: int
    vertices: tuple[int, ...]
    edges: tuple[PaletteEdge, ...]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "vertices": list(self.vertices),
            "edges": [
                {"src": e.src, "label": e.label, "dst": e.dst, "origin": e.origin}
                for e in self.edges
            ],
        }


@dataclass(frozen=True)
class SpanningForest:
    vertices: tuple[int, ...]
    edges: tuple[PaletteEdge, ...]
    component_count: int

    @property
    def is_tree(self) -> bool:
        return self.component_count == 1


def _reduce(x: int, n: int) -> int:
    return x % n if n else x


def palette_graph_of_set(S: Iterable[int], n: int, m: int) -> PaletteGraph:
    """Every ``s1 -> s3`` labelled ``s2`` with ``m s1 + (1 - m) s2 = s3`` inside ``S``."""
    verts = sorted({_reduce(s, n) for s in S})
    present = set(verts)
    edges = []
    for s1 in verts:
        for s2 in verts:
            s3 = _reduce(m * s1 + (1 - m) * s2, n)
            if s3 in present:
                edges.append(PaletteEdge(s1, s2, s3, BROKEN))
    return PaletteGraph(n, m, tuple(verts), tuple(sorted(edges)))


def palette_graph_of_coloring(diagram: KnotDiagram, coloring: Coloring) -> PaletteGraph:
    """Solid edges for the distinct local colorings at polychromatic crossings."""
    if coloring.is_trivial:
        raise InvalidParameters("the palette graph of a coloring needs a nontrivial coloring")
    if not validate_coloring(diagram, coloring):
        raise InvalidParameters("coloring does not satisfy the crossing conditions")
    vals = coloring.values
    triples = set()
    for src, over, dst in diagram.roles:
        if vals[src] != vals[over]:
            triples.add((vals[src], vals[over], vals[dst]))
    edges = tuple(PaletteEdge(s1, s2, s3, SOLID) for s1, s2, s3 in sorted(triples))
    p = coloring.params
    return PaletteGraph(p.n, p.m, tuple(sorted(set(vals))), edges)


def _neighbours(G: PaletteGraph) -> dict[int, list[tuple[PaletteEdge, int]]]:
    adj: dict[int, list[tuple[PaletteEdge, int]]] = {v: [] for v in G.vertices}
    for e in G.edges:
        if e.is_loop:
            continue
        adj[e.src].append((e, e.dst))
        adj[e.dst].append((e, e.src))
    for lst in adj.values():
        lst.sort()
    return adj


def spanning_forest(G: PaletteGraph) -> SpanningForest:
    """BFS from the smallest unvisited color, scanning incident edges in sorted order."""
    adj = _neighbours(G)
    seen: set[int] = set()
    chosen = []
    comps = 0
    for root in G.vertices:
        if root in seen:
            continue
        comps += 1
        seen.add(root)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for e, w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    chosen.append(e)
                    queue.append(w)
    return SpanningForest(G.vertices, tuple(chosen), comps)


def is_connected(G: PaletteGraph) -> bool:
    """Undirected connectivity over all edges of the graph."""
    return spanning_forest(G).component_count <= 1


def edge_row(e: PaletteEdge, vertices: tuple[int, ...], m: int) -> list[int]:
    col = {v: j for j, v in enumerate(vertices)}
    row = [0] * len(vertices)
    row[col[e.dst]] += 1
    row[col[e.src]] -= m
    row[col[e.label]] += m - 1
    return row


def adjacency_matrix(F: SpanningForest | Iterable[PaletteEdge], G: PaletteGraph) -> list[list[int]]:
    """Rows are forest edges, columns the colors of ``G`` in increasing order."""
    edges = F.edges if isinstance(F, SpanningForest) else tuple(F)
    return [edge_row(e, G.vertices, G.m) for e in edges]


def adjacency_minor(A: list[list[int]], j: int) -> list[list[int]]:
    """``A_j``: the adjacency matrix with column ``j`` removed; square only for a tree."""
    cols = len(A[0]) if A else 0
    if len(A) != cols - 1:
        raise NotConnected(f"{len(A)} forest edges for {cols} colors; the forest is not a tree")
    return drop_column(A, j)


@dataclass(frozen=True)
class DetLemmaReport:
    p: int
    m: int
    colors: int
    determinants: tuple[int, ...]
    divisible: tuple[bool, ...]
    unit_mod: tuple[bool, ...]
    rank_mod_p: int
    rank_ok: bool
    bound: int
    bound_ok: bool
    connected: bool

    @property
    def ok(self) -> bool:
        return (
            self.connected
            and self.rank_ok
            and self.bound_ok
            and all(self.divisible)
            and all(self.unit_mod)
        )


def verify_det_lemma(diagram: KnotDiagram, coloring: Coloring) -> DetLemmaReport:
    """Check the determinant congruences of the minors ``A_j`` column by column.

    For each ``j``: ``det A_j`` is 0 or divisible by ``p``, and is congruent to
    ``+-1`` modulo ``|m - 1|``.  Also checks ``rank_p(A) <= k - 2`` and
    ``|det A_j| <= M^(k-1)``.  Violations are reported, never raised.
    """
    G = palette_graph_of_coloring(diagram, coloring)
    F = spanning_forest(G)
    p, m = coloring.params.n, coloring.params.m
    k = len(G.vertices)
    A = adjacency_matrix(F, G)
    connected = F.is_tree
    dets: list[int] = []
    if connected:
        dets = [det_int(adjacency_minor(A, j)) for j in range(k)]
    if p:
        divisible = tuple(d % p == 0 for d in dets)
        rank = rank_mod_p(A, p)
    else:
        divisible = tuple(True for _ in dets)
        rank = -1
    mod = abs(m - 1)
    unit = tuple(mod <= 1 or d % mod in (1 % mod, -1 % mod) for d in dets)
    M = max(abs(m), abs(m - 1))
    bound = M ** (k - 1)
    return DetLemmaReport(
        p=p,
        m=m,
        colors=k,
        determinants=tuple(dets),
        divisible=divisible,
        unit_mod=unit,
        rank_mod_p=rank,
        rank_ok=rank <= k - 2,
        bound=bound,
        bound_ok=all(abs(d) <= bound for d in dets),
        connected=connected,
    )


def circuit_ranks(G: PaletteGraph, p: int) -> tuple[int, int]:
    """``(rank_p of the forest equations, rank_p of all non-loop edge equations)``."""
    F = spanning_forest(G)
    full = [edge_row(e, G.vertices, G.m) for e in G.edges if not e.is_loop]
    return rank_mod_p(adjacency_matrix(F, G), p), rank_mod_p(full, p) if full else 0


def export_dot(G: PaletteGraph, F: SpanningForest | None = None, name: str = "palette") -> str:
    forest = set(F.edges) if F is not None else set()
    lines = [f"digraph {name} {{"]
    for v in G.vertices:
        lines.append(f'  c{v} [label="{v}"];')
    for e in G.edges:
        attrs = [f'label="{e.label}"']
        if e.origin == BROKEN:
            attrs.append("style=dashed")
        if e in forest:
            attrs.append("penwidth=2.5")
        lines.append(f"  c{e.src} -> c{e.dst} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
