"""Simple undirected graphs stored as per-vertex adjacency bit rows.

Vertex ids are ``0..n-1``. A vertex set is an ``int`` bitmask throughout the
package (bit ``v`` set means ``v`` is in the set); :func:`mask` and
:func:`members` convert to and from iterables.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadParams,
    Disconnected,
    EmptyGraph,
    LoopOrMultiEdge,
    MalformedInput,
    TooLarge,
    VertexOutOfRange,
)

MAX_VERTICES = 63


def mask(vertices: Iterable[int] | int) -> int:
    if isinstance(vertices, (int, np.integer)):
        return int(vertices)
    m = 0
    for v in vertices:
        m |= 1 << int(v)
    return m


def members(m: int) -> list[int]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise EmptyGraph("graph has no vertices")
        if self.n > MAX_VERTICES:
            raise TooLarge(f"n = {self.n} exceeds the {MAX_VERTICES}-vertex limit")
        if len(self.rows) != self.n:
            raise MalformedInput("row count does not match n")
        for u, row in enumerate(self.rows):
            if row >> self.n:
                raise VertexOutOfRange(f"row {u} references a vertex >= n")
            if row >> u & 1:
                raise LoopOrMultiEdge(f"self-loop at {u}")
            for v in members(row):
                if not self.rows[v] >> u & 1:
                    raise MalformedInput(f"asymmetric adjacency between {u} and {v}")
        if self.labels is not None and len(self.labels) != self.n:
            raise MalformedInput("label count does not match n")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]],
                   labels: Sequence[str] | None = None) -> "Graph":
        if n < 1:
            raise EmptyGraph("graph has no vertices")
        rows = [0] * n
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise LoopOrMultiEdge(f"self-loop at {u}")
            if rows[u] >> v & 1:
                raise LoopOrMultiEdge(f"duplicate edge ({u}, {v})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), tuple(labels) if labels is not None else None)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def neighbors(self, v: int) -> int:
        return self.rows[v]

    def closed_neighbors(self, v: int) -> int:
        return self.rows[v] | 1 << v

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n) for v in members(self.rows[u]) if u < v)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def max_degree(self) -> int:
        return max(self.degree(v) for v in range(self.n))

    @cached_property
    def adj(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges:
            a[u, v] = a[v, u] = True
        return a

    def is_connected(self) -> bool:
        seen = frontier = 1
        while frontier:
            nxt = 0
            for v in members(frontier):
                nxt |= self.rows[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == self.full

    def require_nontrivial_connected(self) -> None:
        if self.n < 2:
            raise BadParams("metric and game operations need n >= 2")
        if not self.is_connected():
            raise Disconnected("graph is disconnected")

    def induced(self, vertex_mask: int) -> "Graph":
        keep = members(vertex_mask)
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        labels = [self.label(v) for v in keep] if self.labels is not None else None
        return Graph.from_edges(len(keep), edges, labels)

    def relabeled(self, labels: Sequence[str]) -> "Graph":
        return Graph(self.n, self.rows, tuple(labels))

    # -- serialization --------------------------------------------------

    def to_edgelist(self) -> str:
        lines = [str(self.n)] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc: dict = {"n": self.n, "edges": [list(e) for e in self.edges]}
        if self.labels is not None:
            doc["labels"] = list(self.labels)
        return json.dumps(doc)

    def to_graph6(self) -> str:
        if self.n > 62:
            raise TooLarge("graph6 output is limited to 62 vertices here")
        bits = [self.has_edge(i, j) for j in range(1, self.n) for i in range(j)]
        bits += [False] * (-len(bits) % 6)
        chars = [chr(self.n + 63)]
        for k in range(0, len(bits), 6):
            val = 0
            for b in bits[k:k + 6]:
                val = val << 1 | b
            chars.append(chr(val + 63))
        return "".join(chars)


# -- parsing --------------------------------------------------------------

class Format(str, enum.Enum):
    GRAPH6 = "graph6"
    EDGELIST = "edgelist"
    JSON = "json"


def parse_graph(data: bytes | str, fmt: Format | str) -> Graph:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedInput(str(exc)) from exc
    fmt = Format(fmt)
    if fmt is Format.GRAPH6:
        return _parse_graph6(data.strip())
    if fmt is Format.EDGELIST:
        return _parse_edgelist(data)
    return _parse_json(data)


def _parse_graph6(s: str) -> Graph:
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise MalformedInput("empty graph6 string")
    if any(not 63 <= ord(c) <= 126 for c in s):
        raise MalformedInput("graph6 characters must lie in 63..126")
    n = ord(s[0]) - 63
    if n == 63:
        raise TooLarge("graph6 headers for n > 62 are not supported")
    if n == 0:
        raise EmptyGraph("graph6 string encodes 0 vertices")
    nbits = n * (n - 1) // 2
    body = s[1:]
    if len(body) != -(-nbits // 6):
        raise MalformedInput(f"graph6 body has {len(body)} chars, expected {-(-nbits // 6)}")
    bits = []
    for c in body:
        val = ord(c) - 63
        bits.extend((val >> (5 - k)) & 1 for k in range(6))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def _parse_edgelist(text: str) -> Graph:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise MalformedInput("edgelist has no vertex-count line")
    try:
        n = int(lines[0])
        edges = []
        for line in lines[1:]:
            parts = line.split()
            if len(parts) != 2:
                raise MalformedInput(f"expected two ids per edge line, got {line!r}")
            edges.append((int(parts[0]), int(parts[1])))
    except ValueError as exc:
        if isinstance(exc, MalformedInput):
            raise
        raise MalformedInput(str(exc)) from exc
    if n == 0:
        raise EmptyGraph("vertex count is 0")
    if n < 0:
        raise MalformedInput("negative vertex count")
    return Graph.from_edges(n, edges)


def _parse_json(text: str) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(str(exc)) from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("n"), int) \
            or not isinstance(doc.get("edges", []), list):
        raise MalformedInput('expected {"n": int, "edges": [[int,int],...]}')
    n = doc["n"]
    if n == 0:
        raise EmptyGraph("n is 0")
    edges = doc.get("edges", [])
    if any(not isinstance(e, list) or len(e) != 2 or not all(isinstance(x, int) for x in e)
           for e in edges):
        raise MalformedInput("each edge must be a pair of integers")
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list)
                               or not all(isinstance(x, str) for x in labels)):
        raise MalformedInput("labels must be a list of strings")
    return Graph.from_edges(n, edges, labels)


# -- families ---------------------------------------------------------------

def generate_family(family: str, *params: int) -> Graph:
    """Standard named graphs.

    Path and cycle vertices are numbered along the path/cycle; labels are the
    1-based positions (vertex id ``i`` carries label ``i + 1``). The star
    ``star:k`` is ``K_{1,k}`` with the center as vertex 0.
    """
    try:
        p = [int(x) for x in params]
    except (TypeError, ValueError) as exc:
        raise BadParams(str(exc)) from exc

    def need(count):
        if len(p) != count:
            raise BadParams(f"{family} takes {count} parameter(s), got {len(p)}")

    if family == "path":
        need(1)
        (n,) = p
        if n < 2:
            raise BadParams("path needs n >= 2")
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)],
                                [str(i + 1) for i in range(n)])
    if family == "cycle":
        need(1)
        (n,) = p
        if n < 3:
            raise BadParams("cycle needs n >= 3")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)],
                                [str(i + 1) for i in range(n)])
    if family == "complete":
        need(1)
        (n,) = p
        if n < 2:
            raise BadParams("complete graph needs n >= 2")
        return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    if family == "star":
        need(1)
        (k,) = p
        if k < 1:
            raise BadParams("star needs k >= 1 leaves")
        return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)])
    if family == "complete_bipartite":
        need(2)
        a, b = p
        if a < 1 or b < 1:
            raise BadParams("complete bipartite needs both sides >= 1")
        return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])
    raise BadParams(f"unknown family {family!r}")


def paw() -> Graph:
    """Triangle 0-1-2 with pendant vertex 3 attached to 0."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)])


# -- distances --------------------------------------------------------------

@dataclass(frozen=True)
class DistanceMatrix:
    d: np.ndarray

    @property
    def n(self) -> int:
        return self.d.shape[0]

    def __getitem__(self, key):
        return int(self.d[key]) if isinstance(key, tuple) else self.d[key]

    @cached_property
    def spheres(self) -> tuple[tuple[int, ...], ...]:
        """``spheres[w][k]`` is the bitmask of vertices at distance ``k`` from ``w``."""
        out = []
        for w in range(self.n):
            row = self.d[w]
            out.append(tuple(mask(np.flatnonzero(row == k)) for k in range(int(row.max()) + 1)))
        return tuple(out)


@lru_cache(maxsize=512)
def distance_matrix(G: Graph) -> DistanceMatrix:
    """All-pairs hop distances by bit-parallel BFS."""
    d = np.zeros((G.n, G.n), dtype=np.int64)
    for s in range(G.n):
        seen = frontier = 1 << s
        k = 0
        while frontier:
            for v in members(frontier):
                d[s, v] = k
            nxt = 0
            for v in members(frontier):
                nxt |= G.rows[v]
            frontier = nxt & ~seen
            seen |= frontier
            k += 1
        if seen != G.full:
            raise Disconnected("graph is disconnected")
    d.setflags(write=False)
    return DistanceMatrix(d)


# -- twins ------------------------------------------------------------------

class TwinKind(str, enum.Enum):
    TRUE_TWIN = "TRUE_TWIN"
    FALSE_TWIN = "FALSE_TWIN"


@dataclass(frozen=True)
class TwinStructure:
    classes: tuple[tuple[int, ...], ...]
    pair_kind: dict[tuple[int, int], TwinKind]

    @property
    def has_true_twins(self) -> bool:
        return TwinKind.TRUE_TWIN in self.pair_kind.values()

    @property
    def has_false_twins(self) -> bool:
        return TwinKind.FALSE_TWIN in self.pair_kind.values()

    @property
    def is_twin_free(self) -> bool:
        return not self.pair_kind

    def class_of(self, v: int) -> tuple[int, ...]:
        for c in self.classes:
            if v in c:
                return c
        raise VertexOutOfRange(v)

    def kind_of(self, v: int) -> TwinKind | None:
        """Twin kind of ``v``'s class, or None for a singleton class."""
        c = self.class_of(v)
        if len(c) == 1:
            return None
        u = c[0] if c[0] != v else c[1]
        return self.pair_kind[min(u, v), max(u, v)]


def are_twins(G: Graph, u: int, v: int) -> bool:
    bu, bv = 1 << u, 1 << v
    return G.rows[u] & ~bv == G.rows[v] & ~bu


def twin_structure(G: Graph) -> TwinStructure:
    parent = list(range(G.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pair_kind = {}
    for u in range(G.n):
        for v in range(u + 1, G.n):
            if are_twins(G, u, v):
                pair_kind[u, v] = TwinKind.TRUE_TWIN if G.has_edge(u, v) else TwinKind.FALSE_TWIN
                parent[find(v)] = find(u)
    groups: dict[int, list[int]] = {}
    for v in range(G.n):
        groups.setdefault(find(v), []).append(v)
    classes = tuple(sorted(tuple(g) for g in groups.values()))
    return TwinStructure(classes, pair_kind)
