"""Scripted strategies for games on lexicographic products, and their verifier.

A strategy maps a :class:`~mbrg.solver.GameState` to a vertex. The verifier
lets the scripted side follow it while the opponent tries every legal reply,
so a passing verification proves the script wins against all play.

Layer-local bookkeeping works on masks over ``V(H)``: ``P.local(m, g)``
extracts the part of ``m`` inside layer ``g``. Tables in this module use
1-based positions along the path or cycle, so position ``p`` is local vertex
``p - 1``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Hashable, NamedTuple

from .errors import InapplicableContext, ResourceLimit, TerminalState, UnknownStrategy
from .graph import Graph, TwinKind, generate_family, members, twin_structure
from .metric import (Pairing, SetProperty, check_set_property, find_pairing_resolving,
                     hyperedges)
from .product import ProductGraph
from .solver import GameState, Player, Solver, TargetSpec

DEFAULT_VERIFY_NODE_CAP = 20_000_000
INF = math.inf


# -- local games ------------------------------------------------------------

class LocalGame:
    """The game played inside one copy of ``H`` for a given goal family."""

    def __init__(self, H: Graph, family: SetProperty):
        self.H = H
        self.family = SetProperty(family)
        self.edges = hyperedges(H, self.family)
        self.solver = Solver(TargetSpec(H, self.family), vertex_cap=max(16, H.n))
        self.spoiler_wins = lru_cache(maxsize=None)(self._spoiler_wins)
        self.best = lru_cache(maxsize=None)(self._best)

    def achieved(self, r: int) -> bool:
        return all(e & r for e in self.edges)

    def broken(self, s: int) -> bool:
        return any(e & ~s == 0 for e in self.edges)

    def _spoiler_wins(self, r: int, s: int, spoiler_to_move: bool) -> bool:
        done = self.solver.terminal_winner(r, s)
        if done is not None:
            return done is Player.SPOILER
        mover = Player.SPOILER if spoiler_to_move else Player.RESOLVER
        return self.solver.value(r, s, mover).winner is Player.SPOILER

    def _best(self, r: int, s: int, mover: Player) -> int | None:
        try:
            return self.solver.best_move(GameState(r, s, mover))[0]
        except TerminalState:
            free = self.H.full & ~(r | s)
            return members(free)[0] if free else None


@lru_cache(maxsize=None)
def local_game(H: Graph, family: SetProperty) -> LocalGame:
    return LocalGame(H, SetProperty(family))


# -- strategy base ------------------------------------------------------------

class Strategy:
    """Base class: ``move`` picks a vertex, ``memo_key`` summarises what it reads.

    ``memo_key`` must capture everything ``move`` depends on; the verifier
    merges positions with equal keys.
    """

    name = "strategy"
    role = Player.RESOLVER

    def __init__(self, context):
        self.context = context
        self.preconditions: dict[str, bool] = {}

    @property
    def graph(self) -> Graph:
        return self.context.base if isinstance(self.context, ProductGraph) else self.context

    def move(self, state: GameState) -> int:
        raise NotImplementedError

    def memo_key(self, state: GameState) -> Hashable:
        return (state.resolver_set, state.spoiler_set, state.to_move,
                state.history[-1] if state.history else None)

    def _mine_theirs(self, state: GameState) -> tuple[int, int]:
        if self.role is Player.RESOLVER:
            return state.resolver_set, state.spoiler_set
        return state.spoiler_set, state.resolver_set

    def _fallback(self, state: GameState) -> int:
        return members(self.graph.full & ~state.claimed)[0]

    def __repr__(self):
        return f"<{self.name} ({self.role.value})>"


def _require_product(context, name) -> ProductGraph:
    if not isinstance(context, ProductGraph):
        raise InapplicableContext(f"{name} needs a lexicographic product")
    return context


def _require_h(P: ProductGraph, kind: str, sizes, name) -> None:
    for n in sizes:
        if P.h == generate_family(kind, n):
            return
    raise InapplicableContext(f"{name} needs the second factor to be a {kind} "
                              f"on {sorted(sizes)} vertices")


def _is_h(P: ProductGraph, kind: str, n: int) -> bool:
    return P.h.n == n and P.h == generate_family(kind, n)


def movers(state: GameState) -> list[Player]:
    """Who made each entry of ``state.history`` (passes included)."""
    k = len(state.history)
    return [state.to_move.other if (k - 1 - i) % 2 == 0 else state.to_move for i in range(k)]


# -- pairing --------------------------------------------------------------------

class PairingResolver(Strategy):
    """Answer inside the pair the opponent just entered; otherwise open a fresh pair."""

    name = "pairing_resolver"

    def __init__(self, context, pairing: Pairing | None = None):
        super().__init__(context)
        if pairing is None:
            pairing = find_pairing_resolving(self.graph)
            if pairing is None:
                raise InapplicableContext("graph admits no pairing resolving set")
        self.pairing = pairing if isinstance(pairing, Pairing) else Pairing(tuple(pairing))
        self.preconditions["pairing_given"] = True

    def move(self, state):
        mine, theirs = self._mine_theirs(state)
        free = self.graph.full & ~state.claimed
        last = state.history[-1] if state.history else None
        threatened = []
        for a, b in self.pairing.pairs:
            pm = 1 << a | 1 << b
            if pm & mine or not pm & theirs:
                continue
            other = b if theirs >> a & 1 else a
            if free >> other & 1:
                threatened.append((last not in (a, b), a, other))
        if threatened:
            return min(threatened)[2]
        for a, b in self.pairing.pairs:
            if free >> a & 1 and free >> b & 1:
                return a
        return self._fallback(state)


class EvenMatchingResolver(PairingResolver):
    """One vertex from each block ``{2j-1, 2j}`` in every path or cycle layer."""

    name = "even_matching_resolver"

    def __init__(self, context):
        P = _require_product(context, self.name)
        if P.h.n % 2 or P.h.n < 6 or not (_is_h(P, "path", P.h.n) or _is_h(P, "cycle", P.h.n)):
            raise InapplicableContext("needs H = P_2l or C_2l with l >= 3")
        pairs = tuple((P.vertex(g, 2 * j), P.vertex(g, 2 * j + 1))
                      for g in range(P.n_g) for j in range(P.h.n // 2))
        super().__init__(P, Pairing(pairs))
        self.preconditions = {"H_even_path_or_cycle": True}


# -- layer-goal resolvers ----------------------------------------------------------

def layer_goals(G: Graph) -> tuple[SetProperty, ...]:
    """What Resolver must build in each layer so the layers combine to a resolving set."""
    tw = twin_structure(G)
    goals = []
    for g in range(G.n):
        kind = tw.kind_of(g)
        if kind is TwinKind.TRUE_TWIN:
            goals.append(SetProperty.STRICTLY_LOCATING)
        elif kind is TwinKind.FALSE_TWIN:
            goals.append(SetProperty.LOCATING_DOMINATING)
        else:
            goals.append(SetProperty.LOCATING)
    return tuple(goals)


class LayeredResolver(Strategy):
    """Resolver playing a separate goal game in each H-layer.

    Replies come from ``table_reply`` for the layer the opponent just played
    in. A table reply is skipped when the exact local game says it loses the
    layer (``guard_table``). Without a usable table entry, a layer that
    Spoiler could break with one more move is answered with the exact local
    optimum; otherwise Resolver makes a free move in the lowest unfinished
    layer.
    """

    guard_table = True

    def __init__(self, context, goals=None):
        P = _require_product(context, self.name)
        super().__init__(P)
        self.P = P
        self.goals = tuple(goals) if goals is not None else layer_goals(P.g)
        self.games = [local_game(P.h, goal) for goal in self.goals]

    def openers(self, state: GameState) -> tuple[int, ...]:
        first = [-1] * self.P.n_g
        for v in state.history:
            if v is None:
                continue
            g = self.P.g_of(v)
            if first[g] < 0:
                first[g] = v
        return tuple(first)

    def memo_key(self, state):
        return (state.resolver_set, state.spoiler_set, state.to_move,
                state.history[-1] if state.history else None, self.openers(state))

    def table_reply(self, g: int, r: int, s: int, last: int, state: GameState) -> int | None:
        return None

    def move(self, state):
        P = self.P
        R, S = state.resolver_set, state.spoiler_set
        last = state.history[-1] if state.history else None
        order = list(range(P.n_g))
        if last is not None:
            order.remove(P.g_of(last))
            order.insert(0, P.g_of(last))
        for g in order:
            r, s = P.local(R, g), P.local(S, g)
            game = self.games[g]
            if game.achieved(r):
                continue
            free = P.h.full & ~(r | s)
            if last is not None and g == P.g_of(last) and S >> last & 1:
                reply = self.table_reply(g, r, s, P.h_of(last), state)
                if reply is not None and free >> reply & 1 and (
                        not self.guard_table or not game.spoiler_wins(r | 1 << reply, s, True)):
                    return P.vertex(g, reply)
            if free and game.spoiler_wins(r, s, True):
                return P.vertex(g, game.best(r, s, Player.RESOLVER))
        for g in range(P.n_g):
            r, s = P.local(R, g), P.local(S, g)
            if not self.games[g].achieved(r) and P.h.full & ~(r | s):
                return P.vertex(g, self.games[g].best(r, s, Player.RESOLVER))
        return self._fallback(state)


def _pos(p: int) -> int:
    return p - 1


class P4LayerResolver(LayeredResolver):
    """Second-player replies in P_4 layers, chosen by the twin type of the layer."""

    name = "p4_layer_resolver"
    # first reply to Spoiler's opening position, by layer goal
    LD_REPLY = {1: 2, 2: 1, 3: 4, 4: 3}
    STRICT_REPLY = {1: 3, 2: 4, 3: 1, 4: 2}

    def __init__(self, context):
        P = _require_product(context, self.name)
        _require_h(P, "path", [4], self.name)
        super().__init__(P)
        self.preconditions = {"H_is_P4": True}

    def table_reply(self, g, r, s, last, state):
        goal = self.goals[g]
        if r == 0 and s == 1 << last:
            table = self.STRICT_REPLY if goal is SetProperty.STRICTLY_LOCATING else self.LD_REPLY
            return _pos(table[last + 1])
        if r.bit_count() == 1 and s.bit_count() == 2:
            # Spoiler's second move in the layer: take whichever vertex completes the goal
            free = P4_FULL & ~(r | s)
            for v in members(free):
                if self.games[g].achieved(r | 1 << v):
                    return v
        return None


P4_FULL = 0b1111


class C4C5Resolver(LayeredResolver):
    """Antipodal reply in C_4 layers; in C_5 layers, two steps on for true twins, else one."""

    name = "c4_c5_resolver"

    def __init__(self, context):
        P = _require_product(context, self.name)
        _require_h(P, "cycle", [4, 5], self.name)
        super().__init__(P)
        self.twin = twin_structure(P.g)
        self.preconditions = {"H_is_C4_or_C5": True}

    def _first_reply(self, g, j):
        m = self.P.h.n
        if m == 4 or self.twin.kind_of(g) is TwinKind.TRUE_TWIN:
            return (j + 2) % m
        return (j + 1) % m

    def table_reply(self, g, r, s, last, state):
        m = self.P.h.n
        if r == 0 and s == 1 << last:
            return self._first_reply(g, last)
        if r.bit_count() == 1 and s.bit_count() == 2:
            j = members(s & ~(1 << last))[0]
            if r != 1 << self._first_reply(g, j):
                return None
            a = members(r)[0]
            if m == 4 or a == (j + 2) % m:
                pair = ((a + 1) % m, (a - 1) % m)
            else:
                pair = ((j + 3) % m, (j + 4) % m)
            if last in pair:
                return pair[1] if last == pair[0] else pair[0]
        return None


class OddPathResolver(LayeredResolver):
    """Strictly locating set in every P_{2l+1} layer: pairs, then a closing triple.

    Blocks along the path are ``{1,2}, ..., {2l-3, 2l-2}`` and the triple
    ``{2l-1, 2l, 2l+1}``. With ``variant="literal"`` every table reply is
    played as written; that version loses, e.g. in ``P_7`` Spoiler can leave
    Resolver with ``{1, 4, 7}``, where 3 and 5 both see only 4. The default
    variant drops table replies that lose the layer (see ``guard_table``).
    """

    name = "odd_path_resolver"

    def __init__(self, context, variant: str = "guarded"):
        P = _require_product(context, self.name)
        m = P.h.n
        if m % 2 == 0 or m < 7 or not _is_h(P, "path", m):
            raise InapplicableContext("needs H = P_{2l+1} with l >= 3")
        tw = twin_structure(P.g)
        self.preconditions = {"G_false_twin_free": not tw.has_false_twins}
        if tw.has_false_twins:
            raise InapplicableContext("G has false twins")
        super().__init__(P, goals=[SetProperty.STRICTLY_LOCATING] * P.n_g)
        self.preconditions = {"G_false_twin_free": True, "H_odd_path": True}
        self.guard_table = variant != "literal"
        ell = (m - 1) // 2
        # 1-based positions of the closing triple and the last pair
        self.a, self.b, self.c = 2 * ell - 1, 2 * ell, 2 * ell + 1
        self.p = 2 * ell - 2

    def table_reply(self, g, r, s, last, state):
        x = last + 1
        a, b, c, p = self.a, self.b, self.c, self.p
        has = lambda m, q: bool(m >> _pos(q) & 1)  # noqa: E731
        if x < a:
            partner = x + 1 if x % 2 else x - 1
            if not has(r, partner) and not has(s, partner):
                return _pos(partner)
            return None
        if x == a:
            if not has(r | s, p):
                return _pos(p)
            return _pos(b) if has(r, p) else _pos(c)
        # x is 2l or 2l+1
        other = c if x == b else b
        if has(s, a) and has(r, p) and not has(r, b) and not has(r, c) and not has(s, other):
            return _pos(other)
        if not has(r | s, a):
            return _pos(a)
        return None


class OddCycleResolver(LayeredResolver):
    """Strictly locating set in every C_{2l+1} layer, anchored at Spoiler's first move.

    Positions are rotated so Spoiler's opening vertex in the layer becomes
    ``2l+1``; Resolver answers with ``2l``, then pairs ``{2j-1, 2j}`` for
    ``j <= l-2`` and one reply inside ``{2l-3, 2l-2, 2l-1}``.
    """

    name = "odd_cycle_resolver"

    def __init__(self, context, variant: str = "guarded"):
        P = _require_product(context, self.name)
        m = P.h.n
        if m % 2 == 0 or m < 7 or not _is_h(P, "cycle", m):
            raise InapplicableContext("needs H = C_{2l+1} with l >= 3")
        tw = twin_structure(P.g)
        if tw.has_false_twins:
            raise InapplicableContext("G has false twins")
        super().__init__(P, goals=[SetProperty.STRICTLY_LOCATING] * P.n_g)
        self.preconditions = {"G_false_twin_free": True, "H_odd_cycle": True}
        self.guard_table = variant != "literal"
        self.ell = (m - 1) // 2

    def table_reply(self, g, r, s, last, state):
        m = self.P.h.n
        ell = self.ell
        opener = self.openers(state)[g]
        if opener < 0 or not state.spoiler_set >> opener & 1:
            return None
        shift = self.P.h_of(opener) - (m - 1)

        def to_local(q):  # rotated 1-based position -> local vertex
            return (q - 1 + shift) % m

        def pos(v):  # local vertex -> rotated 1-based position
            return (v - shift) % m + 1

        has = lambda msk, q: bool(msk >> to_local(q) & 1)  # noqa: E731
        x = pos(last)
        if x == m:
            return to_local(2 * ell) if r == 0 else None
        if x <= 2 * (ell - 2):
            partner = x + 1 if x % 2 else x - 1
            return None if has(r | s, partner) else to_local(partner)
        triple = (2 * ell - 3, 2 * ell - 2, 2 * ell - 1)
        if x in triple:
            if any(has(r, q) for q in triple):
                return None
            if sum(has(s, q) for q in triple) > 1:
                return None
            return to_local(2 * ell - 2) if x != 2 * ell - 2 else to_local(2 * ell - 1)
        return None


# -- spoiler strategies ------------------------------------------------------------

class CloneLayerSpoiler(Strategy):
    """Open a layer Resolver has not touched and win the factor game there."""

    name = "clone_layer_spoiler"
    role = Player.SPOILER

    def __init__(self, context):
        P = _require_product(context, self.name)
        super().__init__(P)
        self.P = P
        self.game = local_game(P.h, SetProperty.RESOLVING)
        factor = self.game.solver
        self.preconditions = {
            "H_spoiler_wins_moving_first":
                factor.winner(Player.SPOILER) is Player.SPOILER,
        }
        if not self.preconditions["H_spoiler_wins_moving_first"]:
            raise InapplicableContext("Spoiler does not win on H as first player")

    def memo_key(self, state):
        return (state.resolver_set, state.spoiler_set, state.to_move)

    def move(self, state):
        P = self.P
        R, S = state.resolver_set, state.spoiler_set
        target = None
        for g in range(P.n_g):
            if P.local(S, g) and self.game.spoiler_wins(P.local(R, g), P.local(S, g), True):
                target = g
                break
        if target is None:
            for g in range(P.n_g):
                if not P.local(R | S, g):
                    target = g
                    break
        if target is None:
            return self._fallback(state)
        r, s = P.local(R, target), P.local(S, target)
        if not P.h.full & ~(r | s):
            return self._fallback(state)
        return P.vertex(target, self.game.best(r, s, Player.SPOILER))


class PairedSpoiler(Strategy):
    """Answer Resolver inside fixed pairs of each layer."""

    role = Player.SPOILER
    PAIRS: tuple[tuple[int, int], ...] = ()

    def __init__(self, context):
        P = _require_product(context, self.name)
        super().__init__(P)
        self.P = P

    def memo_key(self, state):
        return (state.resolver_set, state.spoiler_set, state.to_move)

    def layer_pairs(self, g):
        return [(self.P.vertex(g, _pos(a)), self.P.vertex(g, _pos(b))) for a, b in self.PAIRS]

    def pair_reply(self, state, layers) -> int | None:
        R, S = state.resolver_set, state.spoiler_set
        free = self.P.base.full & ~state.claimed
        for g in layers:
            for a, b in self.layer_pairs(g):
                if R >> a & 1 and not S >> b & 1 and free >> b & 1:
                    return b
                if R >> b & 1 and not S >> a & 1 and free >> a & 1:
                    return a
        return None

    def fresh_pair_move(self, state, layers) -> int:
        free = self.P.base.full & ~state.claimed
        for g in layers:
            for a, b in self.layer_pairs(g):
                if free >> a & 1 and free >> b & 1:
                    return a
        return self._fallback(state)


class P5LayerSpoiler(PairedSpoiler):
    """Take the centre of an untouched P_5 layer, then pair {1,5} and {2,4} there.

    Free moves open a fresh pair in that layer. Resolver never holds more than
    one vertex of a pair there, so his layer set stays inside {1,2}, {1,4},
    {2,5} or {4,5}, none of which is locating.
    """

    name = "p5_layer_spoiler"
    PAIRS = ((1, 5), (2, 4))

    def __init__(self, context):
        P = _require_product(context, self.name)
        _require_h(P, "path", [5], self.name)
        super().__init__(P)
        self.preconditions = {"H_is_P5": True, "G_nontrivial": P.n_g >= 2}

    def target_layer(self, state) -> int | None:
        for v, who in zip(state.history, movers(state)):
            if who is Player.SPOILER and v is not None:
                return self.P.g_of(v)
        return None

    def memo_key(self, state):
        return (state.resolver_set, state.spoiler_set, state.to_move, self.target_layer(state))

    def move(self, state):
        g = self.target_layer(state)
        if g is None:
            for cand in range(self.P.n_g):
                if not self.P.local(state.claimed, cand):
                    return self.P.vertex(cand, _pos(3))
            return self._fallback(state)
        reply = self.pair_reply(state, [g])
        if reply is not None:
            return reply
        return self.fresh_pair_move(state, [g])


class P6LayerSpoiler(PairedSpoiler):
    """Pair {2,4} and {3,5} in every P_6 layer so no layer is located by two moves."""

    name = "p6_layer_spoiler"
    PAIRS = ((2, 4), (3, 5))

    def __init__(self, context):
        P = _require_product(context, self.name)
        _require_h(P, "path", [6], self.name)
        super().__init__(P)
        self.preconditions = {"H_is_P6": True}

    def move(self, state):
        layers = range(self.P.n_g)
        reply = self.pair_reply(state, layers)
        if reply is not None:
            return reply
        return self.fresh_pair_move(state, layers)


class Status(enum.IntEnum):
    LOST = 0
    HOT = 1
    SAFE = 2
    WON = 3


class StarP7Spoiler(Strategy):
    """Break locating-domination in two P_7 layers over a class of false twins.

    Each such layer is a first-player-wins game. A layer is SAFE when Spoiler
    wins it even if Resolver moves there next, HOT when she wins it only by
    moving there now. Spoiler keeps two layers SAFE or WON: she answers an
    attack on one of them, otherwise makes a HOT layer SAFE, otherwise
    pushes a SAFE layer towards WON. Local moves prefer the order
    2, 6, 4, 3, 5 (1-based positions) when that order keeps the layer SAFE.
    """

    name = "star_p7_spoiler"
    role = Player.SPOILER
    SCRIPT = (2, 6, 4, 3, 5)

    def __init__(self, context):
        P = _require_product(context, self.name)
        _require_h(P, "path", [7], self.name)
        super().__init__(P)
        self.P = P
        tw = twin_structure(P.g)
        classes = [c for c in tw.classes
                   if len(c) >= 3 and tw.kind_of(c[0]) is TwinKind.FALSE_TWIN]
        self.preconditions = {"H_is_P7": True, "G_false_twin_class_ge_3": bool(classes)}
        if not classes:
            raise InapplicableContext("G needs a class of at least three false twins")
        self.layers = classes[0]
        self.game = local_game(P.h, SetProperty.LOCATING_DOMINATING)

    def status(self, r, s) -> Status:
        if self.game.broken(s):
            return Status.WON
        if self.game.spoiler_wins(r, s, False):
            return Status.SAFE
        if self.game.spoiler_wins(r, s, True):
            return Status.HOT
        return Status.LOST

    def local_move(self, r, s) -> int:
        free = self.P.h.full & ~(r | s)
        for e in self.game.edges:
            rest = e & ~s
            if not e & r and rest.bit_count() == 1:
                return members(rest)[0]
        for p in self.SCRIPT:
            v = _pos(p)
            if free >> v & 1 and self.game.spoiler_wins(r, s | 1 << v, False):
                return v
        return self.game.best(r, s, Player.SPOILER)

    def move(self, state):
        P = self.P
        R, S = state.resolver_set, state.spoiler_set
        last = state.history[-1] if state.history else None
        st = {g: self.status(P.local(R, g), P.local(S, g)) for g in self.layers}
        good = [g for g in self.layers if st[g] >= Status.SAFE]
        hot = [g for g in self.layers if st[g] is Status.HOT]
        if last is not None and P.g_of(last) in hot:
            hot.remove(P.g_of(last))
            hot.insert(0, P.g_of(last))
        if len(good) < 2 and hot:
            g = hot[0]
        else:
            pending = [g for g in good if st[g] is Status.SAFE]
            if not pending:
                return self._fallback(state)
            g = pending[0]
        return P.vertex(g, self.local_move(P.local(R, g), P.local(S, g)))


# -- registry -------------------------------------------------------------------------

STRATEGIES: dict[str, Callable[..., Strategy]] = {
    "pairing_resolver": PairingResolver,
    "even_matching_resolver": EvenMatchingResolver,
    "p4_layer_resolver": P4LayerResolver,
    "c4_c5_resolver": C4C5Resolver,
    "odd_path_resolver": OddPathResolver,
    "odd_cycle_resolver": OddCycleResolver,
    "clone_layer_spoiler": CloneLayerSpoiler,
    "p5_layer_spoiler": P5LayerSpoiler,
    "p6_layer_spoiler": P6LayerSpoiler,
    "star_p7_spoiler": StarP7Spoiler,
}


def make_strategy(name: str, context, **kwargs) -> Strategy:
    try:
        cls = STRATEGIES[name]
    except KeyError:
        raise UnknownStrategy(f"unknown strategy {name!r}") from None
    return cls(context, **kwargs)


# -- verification ---------------------------------------------------------------------

@dataclass
class VerifyResult:
    wins_always: bool
    counterexample: list[tuple[str, int | None]] | None
    nodes: int
    reason: str = ""

    def __bool__(self):
        return self.wins_always


class _Verifier:
    """Exhaustive adversary search with failure-distance memoisation.

    ``fail(state)`` is the fewest plies after which the scripted side can be
    made to lose (infinity when it always wins). ``PASS`` (``None``) is an
    adversary pass, available ``passes`` times per line.
    """

    def __init__(self, spec: TargetSpec, strat: Strategy, node_cap: int, passes: int,
                 to_end: bool, invariant: Callable[[GameState], bool] | None,
                 shortest: bool = True):
        self.spec = spec
        self.strat = strat
        self.full = spec.graph.full
        self.edges = spec.hyperedges
        self.by_vertex = [tuple(e for e in self.edges if e >> v & 1)
                          for v in range(spec.graph.n)]
        self.node_cap = node_cap
        self.nodes = 0
        self.memo: dict = {}
        self.to_end = to_end
        self.invariant = invariant
        self.reason = ""
        self.passes = passes
        self.shortest = shortest

    def decided(self, state: GameState, live: tuple[int, ...]) -> Player | None:
        if self.to_end:
            if state.claimed == self.full:
                return Player.RESOLVER if not live else Player.SPOILER
            return None
        if not live:
            return Player.RESOLVER
        if state.history:
            v = state.history[-1]
            if v is not None and state.spoiler_set >> v & 1:
                S = state.spoiler_set
                for e in self.by_vertex[v]:
                    if not e & state.resolver_set and e & ~S == 0:
                        return Player.SPOILER
        if state.claimed == self.full:
            return Player.SPOILER
        return None

    def fail(self, state: GameState, live: tuple[int, ...], passes: int) -> float:
        if self.invariant is not None and not self.invariant(state):
            self.reason = self.reason or "invariant violated"
            return 0
        winner = self.decided(state, live)
        if winner is not None:
            if self.invariant is not None:
                return INF
            return INF if winner is self.strat.role else 0
        key = (self.strat.memo_key(state), passes)
        if key in self.memo:
            return self.memo[key]
        self.nodes += 1
        if self.nodes > self.node_cap:
            raise ResourceLimit(f"verification exceeded {self.node_cap} nodes")
        if state.to_move is self.strat.role:
            v = self.strat.move(state)
            if v is None or not 0 <= v < self.spec.graph.n or state.claimed >> v & 1:
                self.reason = self.reason or f"illegal scripted move {v!r}"
                result = 0
            else:
                result = 1 + self.fail(*self.child(state, live, v), passes)
        else:
            result = INF
            for v in self.options(state, passes):
                child, child_live = self.child(state, live, v)
                d = 1 + self.fail(child, child_live, passes - (v is None))
                if d < result:
                    result = d
                    if not self.shortest:
                        break
        self.memo[key] = result
        return result

    def options(self, state, passes):
        opts = members(self.full & ~state.claimed)
        if passes > 0:
            opts.append(None)
        return opts

    def child(self, state: GameState, live, v):
        if v is None:
            nxt = GameState(state.resolver_set, state.spoiler_set,
                            state.to_move.other, state.history + (None,))
            return nxt, live
        nxt = state.play(v)
        if state.to_move is Player.RESOLVER:
            live = tuple(e for e in live if not e >> v & 1)
        return nxt, live

    def line(self, state, live, passes) -> list[tuple[str, int | None]]:
        out = []
        while self.decided(state, live) is None and (
                self.invariant is None or self.invariant(state)):
            if state.to_move is self.strat.role:
                v = self.strat.move(state)
                out.append((state.to_move.value, v))
                if v is None or state.claimed >> v & 1:
                    break
            else:
                target = self.fail(state, live, passes) - 1
                for v in self.options(state, passes):
                    child, child_live = self.child(state, live, v)
                    d = self.fail(child, child_live, passes - (v is None))
                    if d == target or (not self.shortest and d < INF):
                        break
                out.append((state.to_move.value, v))
                passes -= v is None
            state, live = self.child(state, live, v)
        return out


def verify_strategy(spec: TargetSpec, strat: Strategy, opponent_first: bool, *,
                    adversary_passes: int = 0, shortest: bool = True,
                    node_cap: int = DEFAULT_VERIFY_NODE_CAP) -> VerifyResult:
    """Does ``strat`` win against every line of the opponent?

    On failure the counterexample is the shortest losing line, choosing the
    lowest vertex at each opponent turn among equally short lines (``None``
    marks an adversary pass). With ``shortest=False`` the search stops at the
    first refutation and returns that line instead, which is much cheaper
    when the strategy fails.
    """
    first = strat.role.other if opponent_first else strat.role
    ver = _Verifier(spec, strat, node_cap, adversary_passes, False, None, shortest)
    start = GameState.initial(first)
    d = ver.fail(start, spec.hyperedges, adversary_passes)
    if d == INF:
        return VerifyResult(True, None, ver.nodes)
    line = ver.line(start, spec.hyperedges, adversary_passes)
    return VerifyResult(False, line, ver.nodes, ver.reason or "scripted side loses")


def verify_invariant(spec: TargetSpec, strat: Strategy, opponent_first: bool,
                     invariant: Callable[[GameState], bool], *, to_end: bool = False,
                     node_cap: int = DEFAULT_VERIFY_NODE_CAP) -> VerifyResult:
    """Does ``invariant`` hold at every position reachable against ``strat``?

    With ``to_end`` the game runs until every vertex is claimed, so the
    invariant also sees complete final sets.
    """
    first = strat.role.other if opponent_first else strat.role
    ver = _Verifier(spec, strat, node_cap, 0, to_end, invariant)
    start = GameState.initial(first)
    d = ver.fail(start, spec.hyperedges, 0)
    if d == INF:
        return VerifyResult(True, None, ver.nodes)
    return VerifyResult(False, ver.line(start, spec.hyperedges, 0), ver.nodes,
                        "invariant violated")


# -- matches --------------------------------------------------------------------------

OPTIMAL = "OPTIMAL"


class Transcript(NamedTuple):
    moves: list[tuple[str, int]]
    winner: Player
    resolver_moves: int
    spoiler_moves: int
    layer_sets: dict[int, dict[str, bool]] | None


def play_match(spec: TargetSpec, resolver_strat, spoiler_strat, first: Player | str,
               context: ProductGraph | None = None) -> Transcript:
    """Play one game; ``OPTIMAL`` sides consult the exact solver."""
    first = Player(first)
    solver = None
    if OPTIMAL in (resolver_strat, spoiler_strat):
        solver = Solver(spec)
    state = GameState.initial(first)
    moves = []
    while True:
        done = _winner(spec, state)
        if done is not None:
            break
        side = resolver_strat if state.to_move is Player.RESOLVER else spoiler_strat
        v = solver.best_move(state)[0] if side == OPTIMAL else side.move(state)
        moves.append((state.to_move.value, v))
        state = state.play(v)
    layer_sets = None
    if context is not None:
        layer_sets = {}
        for g in range(context.n_g):
            t = context.local(state.resolver_set, g)
            layer_sets[g] = {p.value: check_set_property(context.h, t, p) for p in SetProperty
                             if p is not SetProperty.RESOLVING}
    return Transcript(moves, done, state.resolver_set.bit_count(),
                      state.spoiler_set.bit_count(), layer_sets)


def _winner(spec: TargetSpec, state: GameState) -> Player | None:
    edges = spec.hyperedges
    if all(e & state.resolver_set for e in edges):
        return Player.RESOLVER
    if any(e & ~state.spoiler_set == 0 for e in edges):
        return Player.SPOILER
    return None
