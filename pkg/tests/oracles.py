"""Independent reference implementations used as test oracles.

Everything here works from the literal definitions through networkx: no
hyperedges, no pruning, no shared code with the package beyond the Graph
container.
"""

import itertools
from functools import lru_cache

import networkx as nx

from mbrg.graph import Graph, members
from mbrg.metric import SetProperty
from mbrg.solver import Player

R, S = Player.RESOLVER, Player.SPOILER


def to_nx(G: Graph) -> nx.Graph:
    ref = nx.Graph()
    ref.add_nodes_from(range(G.n))
    ref.add_edges_from(G.edges)
    return ref


def has_property(G: Graph, S_, prop: SetProperty) -> bool:
    ref = to_nx(G)
    S_ = set(S_)
    if prop is SetProperty.RESOLVING:
        dist = dict(nx.all_pairs_shortest_path_length(ref))
        vecs = {tuple(dist[v][w] for w in sorted(S_)) for v in range(G.n)}
        return len(vecs) == G.n
    traces = [frozenset(ref[v]) & S_ for v in range(G.n) if v not in S_]
    locating = len(set(traces)) == len(traces)
    dominating = all(traces)
    if prop is SetProperty.LOCATING:
        return locating
    if prop is SetProperty.STRICTLY_LOCATING:
        return locating and frozenset(S_) not in traces
    if prop is SetProperty.DOMINATING:
        return dominating
    return locating and dominating


def game_oracle(G: Graph):
    """(winner, winner's total moves) for the R-game and the S-game.

    Plain minimax on the literal resolving predicate. Resolver wins once her
    set resolves; Spoiler wins once Resolver's set plus the unclaimed
    vertices no longer resolve. The winner minimises and the loser maximises
    the winner's move count.
    """
    ref = to_nx(G)
    dist = dict(nx.all_pairs_shortest_path_length(ref))
    n = G.n
    full = (1 << n) - 1

    @lru_cache(maxsize=None)
    def resolves(m):
        cols = members(m)
        return len({tuple(dist[v][w] for w in cols) for v in range(n)}) == n

    @lru_cache(maxsize=None)
    def value(r, s, rmove):
        if resolves(r):
            return R, r.bit_count()
        if not resolves(full & ~s):
            return S, s.bit_count()
        free = members(full & ~(r | s))
        kids = [value(r | 1 << v, s, False) if rmove else value(r, s | 1 << v, True)
                for v in free]
        me = R if rmove else S
        mine = [k for w, k in kids if w is me]
        if mine:
            return me, min(mine)
        return me.other, max(k for _, k in kids)

    return value(0, 0, True), value(0, 0, False)


def connected_atlas(max_n: int):
    """Every connected graph on 2..max_n vertices (max_n <= 7), up to isomorphism."""
    for g in nx.graph_atlas_g():
        if 2 <= g.number_of_nodes() <= max_n and nx.is_connected(g):
            yield Graph.from_edges(g.number_of_nodes(), list(g.edges))


def min_size(G: Graph, prop: SetProperty) -> int:
    return min(k for k in range(G.n + 1) for c in itertools.combinations(range(G.n), k)
               if has_property(G, c, prop))
