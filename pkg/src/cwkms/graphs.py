"""Finite directed multigraphs with stable vertex and edge order.

Graphs are immutable after construction and every derived object (bundles,
adjacency matrices, reports) uses the insertion order of the input, so
repeated runs produce identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import DanglingEndpoint, DuplicateId, UnknownVertex


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class EdgeBundle:
    """The set of edges leaving one vertex; empty exactly at sinks."""

    vertex: str
    edges: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class DirectedGraph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    labels: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_vset", frozenset(self.vertices))
        object.__setattr__(self, "_edge_by_id", {e.id: e for e in self.edges})
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.src].append(e.id)
        object.__setattr__(self, "_out", {v: tuple(ids) for v, ids in out.items()})

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_vertex(self, v: str) -> bool:
        return v in self._vset

    def edge(self, eid: str) -> Edge:
        return self._edge_by_id[eid]

    def has_edge(self, eid: str) -> bool:
        return eid in self._edge_by_id

    def src(self, eid: str) -> str:
        return self._edge_by_id[eid].src

    def dst(self, eid: str) -> str:
        return self._edge_by_id[eid].dst

    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def out_edges(self, v: str) -> tuple[str, ...]:
        return self._out[v]

    def is_sink(self, v: str) -> bool:
        return not self._out[v]

    def sinks(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if self.is_sink(v))

    def non_sinks(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if not self.is_sink(v))


def build_graph(spec: dict) -> DirectedGraph:
    """Build and validate a graph from its description record.

    Expected shape: ``{"vertices": [...], "edges": [{"id","src","dst"}...]}``
    with optional ``labels``.  Vertices referenced by edges must be declared.
    """
    vertices = list(spec.get("vertices", []))
    seen = set()
    for v in vertices:
        if v in seen:
            raise DuplicateId(f"duplicate vertex id {v!r}")
        seen.add(v)
    edges = []
    eseen = set()
    for rec in spec.get("edges", []):
        eid, src, dst = rec["id"], rec["src"], rec["dst"]
        if eid in eseen:
            raise DuplicateId(f"duplicate edge id {eid!r}")
        eseen.add(eid)
        if src not in seen:
            raise DanglingEndpoint(f"edge {eid!r} has unknown source {src!r}")
        if dst not in seen:
            raise DanglingEndpoint(f"edge {eid!r} has unknown target {dst!r}")
        edges.append(Edge(eid, src, dst))
    return DirectedGraph(tuple(vertices), tuple(edges), dict(spec.get("labels", {})))


def edge_bundle(graph: DirectedGraph, v: str) -> EdgeBundle:
    """Outgoing edges of ``v``; raises UnknownVertex for foreign ids."""
    if not graph.has_vertex(v):
        raise UnknownVertex(f"vertex {v!r} not in graph")
    return EdgeBundle(v, graph.out_edges(v))


def adjacency_counts(graph: DirectedGraph) -> list[list[int]]:
    """Edge multiplicity matrix m[i][j] = number of edges v_i -> v_j in the
    stable vertex order."""
    index = {v: i for i, v in enumerate(graph.vertices)}
    n = len(graph.vertices)
    m = [[0] * n for _ in range(n)]
    for e in graph.edges:
        m[index[e.src]][index[e.dst]] += 1
    return m


def graph_to_dict(graph: DirectedGraph) -> dict:
    out = {
        "vertices": list(graph.vertices),
        "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in graph.edges],
    }
    if graph.labels:
        out["labels"] = dict(graph.labels)
    return out


def graph_to_json(graph: DirectedGraph) -> str:
    return json.dumps(graph_to_dict(graph), indent=2, sort_keys=False)


def graph_from_json(text: str) -> DirectedGraph:
    return build_graph(json.loads(text))
