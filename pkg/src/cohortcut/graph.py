"""Undirected simple graphs of students and tagged interaction edges."""

from __future__ import annotations

import json
from functools import cached_property
from typing import Iterable

import numpy as np

EDGE_TAGS = ("class", "floor", "dorm", "campus")
_TAG_CODE = {name: code for code, name in enumerate(EDGE_TAGS)}


class Graph:
    """Simple undirected graph with a tag per edge.

    Edges are stored canonically: ``u < v``, sorted lexicographically, no
    self-loops, and an unordered pair appears at most once regardless of tag.
    """

    def __init__(self, node_count: int, edges_u, edges_v, tags, *,
                 validate: bool = True):
        if node_count < 1:
            raise ValueError("node_count must be positive")
        self.node_count = int(node_count)
        u = np.asarray(edges_u, dtype=np.int32)
        v = np.asarray(edges_v, dtype=np.int32)
        t = np.asarray(tags, dtype=np.uint8)
        if not (u.shape == v.shape == t.shape):
            raise ValueError("edge arrays must have equal length")
        lo = np.minimum(u, v)
        hi = np.maximum(u, v)
        order = np.lexsort((hi, lo))
        self.edges_u = lo[order]
        self.edges_v = hi[order]
        self.tags = t[order]
        if validate:
            self._check_invariants()

    def _check_invariants(self):
        if self.edge_count == 0:
            return
        if self.edges_u.min() < 0 or self.edges_v.max() >= self.node_count:
            raise ValueError("edge endpoint out of range")
        if np.any(self.edges_u == self.edges_v):
            raise ValueError("self-loops are not allowed")
        if np.any(self.tags >= len(EDGE_TAGS)):
            raise ValueError("unknown edge tag code")
        packed = self.edges_u.astype(np.int64) * self.node_count + self.edges_v
        if np.unique(packed).shape[0] != packed.shape[0]:
            raise ValueError("duplicate edges are not allowed")

    @classmethod
    def from_edge_list(cls, node_count: int,
                       edges: Iterable[tuple[int, int, str]]) -> "Graph":
        """Build a graph from ``(u, v, tag_name)`` triples."""
        us, vs, ts = [], [], []
        for u, v, tag in edges:
            if tag not in _TAG_CODE:
                raise ValueError(f"unknown edge tag {tag!r}")
            us.append(u)
            vs.append(v)
            ts.append(_TAG_CODE[tag])
        return cls(node_count, us, vs, ts)

    @property
    def edge_count(self) -> int:
        return int(self.edges_u.shape[0])

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.bincount(self.edges_u, minlength=self.node_count)
        deg += np.bincount(self.edges_v, minlength=self.node_count)
        return deg.astype(np.int64)

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Adjacency in CSR form: ``(indptr int64, indices int32)``, with
        each row's neighbor list sorted ascending."""
        indptr = np.zeros(self.node_count + 1, dtype=np.int64)
        np.cumsum(self.degrees, out=indptr[1:])
        src = np.concatenate((self.edges_u, self.edges_v))
        dst = np.concatenate((self.edges_v, self.edges_u))
        order = np.lexsort((dst, src))
        return indptr, dst[order].astype(np.int32)

    def edge_set(self) -> set[tuple[int, int]]:
        return set(zip(self.edges_u.tolist(), self.edges_v.tolist()))

    def has_same_edges(self, other: "Graph") -> bool:
        return (self.node_count == other.node_count
                and np.array_equal(self.edges_u, other.edges_u)
                and np.array_equal(self.edges_v, other.edges_v)
                and np.array_equal(self.tags, other.tags))

    def induced_subgraph(self, nodes: np.ndarray) -> "Graph":
        """Subgraph on ``nodes``, renumbered by position in ``nodes``."""
        nodes = np.asarray(nodes, dtype=np.int64)
        member = np.zeros(self.node_count, dtype=bool)
        member[nodes] = True
        pos = np.full(self.node_count, -1, dtype=np.int64)
        pos[nodes] = np.arange(nodes.shape[0])
        keep = member[self.edges_u] & member[self.edges_v]
        return Graph(max(1, nodes.shape[0]), pos[self.edges_u[keep]],
                     pos[self.edges_v[keep]], self.tags[keep], validate=False)


def save_graph_json(g: Graph, path) -> None:
    """Write ``{"n": ..., "edges": [[u, v, "tag"], ...]}`` with u < v."""
    edges = [[int(u), int(v), EDGE_TAGS[t]]
             for u, v, t in zip(g.edges_u, g.edges_v, g.tags)]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"n": g.node_count, "edges": edges}, fh)
        fh.write("\n")


def load_graph_json(path) -> Graph:
    """Read the JSON graph format, rejecting self-loops and duplicates."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc.get("n"), int):
        raise ValueError(f"{path}: 'n' must be an integer")
    return Graph.from_edge_list(doc["n"],
                                [(u, v, tag) for u, v, tag in doc["edges"]])
