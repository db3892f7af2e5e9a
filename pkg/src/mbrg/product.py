"""Lexicographic products and the layer-wise test for resolving sets."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .errors import PreconditionDelta, TooLarge, VertexOutOfRange
from .graph import MAX_VERTICES, Graph, are_twins, mask, members
from .metric import is_dominating, is_locating, is_strictly_locating


@dataclass(frozen=True)
class ProductGraph:
    """``G o H`` with vertex ``(g, h)`` stored as id ``g * n_h + h``."""

    base: Graph
    g: Graph
    h: Graph

    @property
    def n_g(self) -> int:
        return self.g.n

    @property
    def n_h(self) -> int:
        return self.h.n

    def vertex(self, g: int, h: int) -> int:
        return g * self.h.n + h

    def g_of(self, v: int) -> int:
        return v // self.h.n

    def h_of(self, v: int) -> int:
        return v % self.h.n

    @cached_property
    def layer_masks(self) -> tuple[int, ...]:
        """Bitmask of the H-layer over each vertex of G."""
        block = (1 << self.h.n) - 1
        return tuple(block << (g * self.h.n) for g in range(self.g.n))

    def layer(self, g: int) -> int:
        return self.layer_masks[g]

    def g_layer(self, h: int) -> int:
        return mask(self.vertex(g, h) for g in range(self.g.n))

    def local(self, m: int, g: int) -> int:
        """The part of ``m`` inside layer ``g``, as a mask over V(H)."""
        return (m >> (g * self.h.n)) & ((1 << self.h.n) - 1)

    def lift(self, local_mask: int, g: int) -> int:
        return local_mask << (g * self.h.n)


def lex_product(G: Graph, H: Graph) -> ProductGraph:
    G.require_nontrivial_connected()
    H.require_nontrivial_connected()
    n = G.n * H.n
    if n > MAX_VERTICES:
        raise TooLarge(f"|V(G o H)| = {n} exceeds {MAX_VERTICES}")
    edges = []
    for g in range(G.n):
        for a, b in H.edges:
            edges.append((g * H.n + a, g * H.n + b))
    for g1, g2 in G.edges:
        for a in range(H.n):
            for b in range(H.n):
                edges.append((g1 * H.n + a, g2 * H.n + b))
    labels = [f"({G.label(g)},{H.label(h)})" for g in range(G.n) for h in range(H.n)]
    return ProductGraph(Graph.from_edges(n, edges, labels), G, H)


class LayerDiagnostic(NamedTuple):
    condition: str
    layers: tuple[int, ...]
    detail: str


def layered_resolving_check(P: ProductGraph, W) -> tuple[bool, LayerDiagnostic | None]:
    """Decide whether ``W`` resolves ``G o H`` from its traces on the layers.

    Requires ``max_degree(H) <= n(H) - 2``. Conditions, in the order
    reported by the diagnostic:

    (i)   every layer meets ``W``;
    (ii)  each trace ``T_x`` is locating in ``H``;
    (iii) adjacent ``x, y`` with equal closed neighbourhoods in ``G``:
          ``T_x`` or ``T_y`` strictly locating;
    (iv)  non-adjacent ``x, y`` with equal open neighbourhoods in ``G``:
          ``T_x`` or ``T_y`` locating-dominating.
    """
    G, H = P.g, P.h
    if H.max_degree > H.n - 2:
        raise PreconditionDelta("H has a dominating vertex; use the direct check")
    w = mask(W)
    if w >> P.base.n:
        raise VertexOutOfRange(f"{W!r} is not inside V(G o H)")
    traces = [P.local(w, x) for x in range(G.n)]

    for x, t in enumerate(traces):
        if not t:
            return False, LayerDiagnostic("i", (x,), f"layer {x} is untouched")
    for x, t in enumerate(traces):
        if not is_locating(H, t):
            return False, LayerDiagnostic("ii", (x,), f"trace on layer {x} is not locating")
    for x in range(G.n):
        for y in range(x + 1, G.n):
            if not are_twins(G, x, y):
                continue
            tx, ty = traces[x], traces[y]
            if G.has_edge(x, y):
                if not (is_strictly_locating(H, tx) or is_strictly_locating(H, ty)):
                    return False, LayerDiagnostic(
                        "iii", (x, y), f"true twins {x},{y}: neither trace strictly locating")
            elif not (is_dominating(H, tx) or is_dominating(H, ty)):
                return False, LayerDiagnostic(
                    "iv", (x, y), f"false twins {x},{y}: neither trace locating-dominating")
    return True, None


def layer_subgraph(P: ProductGraph, g: int) -> Graph:
    return P.base.induced(P.layer(g))


def g_layer_subgraph(P: ProductGraph, h: int) -> Graph:
    return P.base.induced(P.g_layer(h))


def layer_members(P: ProductGraph, m: int, g: int) -> list[int]:
    return members(P.local(m, g))
