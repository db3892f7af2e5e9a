"""Exact solver for Maker-Breaker games over a monotone vertex-set family.

The winning family is handled in transversal form (see
:func:`mbrg.metric.hyperedges`): Resolver wins once his set meets every
hyperedge, Spoiler wins once she owns a whole hyperedge. Positions are pairs
of bitmasks.

Move counts follow the delay convention: the winner minimises the number of
moves they make, the loser maximises it. Under that convention the value of a
position is the least ``k`` for which the winner can force a win within ``k``
own moves, so counts are found with bounded boolean searches
(:meth:`Solver.resolver_within`, :meth:`Solver.spoiler_within`) whose results
are kept as intervals in a transposition table.
"""

from __future__ import annotations

import enum
import random
import time
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import BadParams, Inconsistent, ResourceLimit, TerminalState, VertexOutOfRange
from .graph import Graph, mask, members
from .metric import SetProperty, check_set_property, hyperedges

DEFAULT_NODE_CAP = 50_000_000
DEFAULT_MEMO_CAP = 1 << 26
DEFAULT_VERTEX_CAP = 16
HARD_VERTEX_CAP = 20
CONVENTION = "winner minimises own moves, loser maximises them"


class Player(str, enum.Enum):
    RESOLVER = "resolver"
    SPOILER = "spoiler"

    @property
    def other(self) -> "Player":
        return Player.SPOILER if self is Player.RESOLVER else Player.RESOLVER


class Outcome(str, enum.Enum):
    R = "R"
    S = "S"
    N = "N"


@dataclass(frozen=True)
class TargetSpec:
    graph: Graph
    family: SetProperty = SetProperty.RESOLVING

    def __post_init__(self):
        object.__setattr__(self, "family", SetProperty(self.family))
        self.graph.require_nontrivial_connected()

    @property
    def hyperedges(self) -> tuple[int, ...]:
        return hyperedges(self.graph, self.family)

    def is_winning(self, m: int) -> bool:
        return all(e & m for e in self.hyperedges)

    def assert_monotone(self, samples: int = 64, seed: int = 0) -> None:
        """Spot-check ``S <= T and S winning => T winning`` on random pairs."""
        rng = random.Random(seed)
        n = self.graph.n
        for _ in range(samples):
            t = rng.getrandbits(n)
            s = t & rng.getrandbits(n)
            if check_set_property(self.graph, s, self.family) \
                    and not check_set_property(self.graph, t, self.family):
                raise BadParams(f"family {self.family.value} is not monotone here")


@dataclass(frozen=True)
class GameState:
    resolver_set: int = 0
    spoiler_set: int = 0
    to_move: Player = Player.RESOLVER
    history: tuple[int, ...] = ()

    def __post_init__(self):
        if self.resolver_set & self.spoiler_set:
            raise BadParams("resolver and spoiler sets overlap")

    @classmethod
    def initial(cls, first: Player | str) -> "GameState":
        return cls(0, 0, Player(first))

    @property
    def claimed(self) -> int:
        return self.resolver_set | self.spoiler_set

    def play(self, v: int) -> "GameState":
        bit = 1 << v
        if self.claimed & bit:
            raise BadParams(f"vertex {v} is already claimed")
        if self.to_move is Player.RESOLVER:
            return GameState(self.resolver_set | bit, self.spoiler_set,
                             Player.SPOILER, self.history + (v,))
        return GameState(self.resolver_set, self.spoiler_set | bit,
                         Player.RESOLVER, self.history + (v,))


class MoveValue(NamedTuple):
    """Winner under perfect play and the winner's remaining move count."""

    winner: Player
    moves: int


@dataclass
class GameReport:
    outcome: Outcome
    r_mb: int | None = None
    r_mb_prime: int | None = None
    s_mb: int | None = None
    s_mb_prime: int | None = None
    witness_lines: dict[str, list[tuple[str, int]]] = field(default_factory=dict)
    stats: dict[str, int] = field(default_factory=dict)
    convention: str = CONVENTION

    def to_dict(self, with_time: bool = True) -> dict:
        stats = dict(self.stats)
        if not with_time:
            stats.pop("wall_ms", None)
        return {
            "outcome": self.outcome.value,
            "r_mb": self.r_mb,
            "r_mb_prime": self.r_mb_prime,
            "s_mb": self.s_mb,
            "s_mb_prime": self.s_mb_prime,
            "witness_lines": {k: [[p, v] for p, v in line]
                              for k, line in self.witness_lines.items()},
            "stats": stats,
            "convention": self.convention,
        }

    def invariant_violations(self) -> list[str]:
        """Inequalities every report must satisfy; empty when all hold."""
        bad = []
        if self.outcome is Outcome.R:
            if self.r_mb is None or self.r_mb_prime is None:
                bad.append("outcome R without both Resolver counts")
            elif self.r_mb > self.r_mb_prime:
                bad.append(f"r_mb {self.r_mb} > r_mb_prime {self.r_mb_prime}")
        if self.outcome is Outcome.S:
            if self.s_mb is None or self.s_mb_prime is None:
                bad.append("outcome S without both Spoiler counts")
            elif self.s_mb_prime > self.s_mb:
                bad.append(f"s_mb_prime {self.s_mb_prime} > s_mb {self.s_mb}")
        if self.outcome is Outcome.N and (self.r_mb is None or self.s_mb_prime is None):
            bad.append("outcome N without r_mb and s_mb_prime")
        return bad


def _popcount_single(f: int) -> bool:
    return f & (f - 1) == 0


class Solver:
    """Perfect-play solver bound to one :class:`TargetSpec`.

    The transposition table persists across queries, so computing both games
    and the witness lines on one instance shares work.
    """

    def __init__(self, spec: TargetSpec, *, node_cap: int = DEFAULT_NODE_CAP,
                 memo_cap: int = DEFAULT_MEMO_CAP, vertex_cap: int = DEFAULT_VERTEX_CAP):
        if vertex_cap > HARD_VERTEX_CAP:
            raise BadParams(f"vertex cap cannot exceed {HARD_VERTEX_CAP}")
        if vertex_cap > DEFAULT_VERTEX_CAP:
            warnings.warn(f"vertex cap raised to {vertex_cap}; solving may be very slow",
                          stacklevel=2)
        n = spec.graph.n
        if n > vertex_cap:
            raise ResourceLimit(f"{n} vertices exceed the solver cap of {vertex_cap}")
        self.spec = spec
        self.n = n
        self.full = (1 << n) - 1
        self.edges = spec.hyperedges
        self.node_cap = node_cap
        self.memo_cap = memo_cap
        self.nodes = 0
        self.hits = 0
        self._rmemo: dict[tuple[int, int, bool], list[int]] = {}
        self._smemo: dict[tuple[int, int, bool], list[int]] = {}

    # -- bookkeeping ---------------------------------------------------------

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.node_cap:
            raise ResourceLimit(f"node cap {self.node_cap} exceeded")

    def _store(self, memo, key, k, result):
        ent = memo.get(key)
        if ent is None:
            if len(self._rmemo) + len(self._smemo) >= self.memo_cap:
                raise ResourceLimit(f"memo cap {self.memo_cap} exceeded")
            ent = memo[key] = [0, 1 << 30]
        if result:
            ent[1] = min(ent[1], k)
        else:
            ent[0] = max(ent[0], k)

    @property
    def stats(self) -> dict[str, int]:
        return {"nodes": self.nodes, "table_hits": self.hits,
                "table_entries": len(self._rmemo) + len(self._smemo)}

    # -- move ordering -------------------------------------------------------

    def _ordered(self, free: int, live: tuple[int, ...]) -> list[int]:
        """Free vertices as bit masks, most threatened first, then by id."""
        weight = [0] * self.n
        for e in live:
            f = e & free
            w = 1 << (self.n - f.bit_count())
            while f:
                low = f & -f
                weight[low.bit_length() - 1] += w
                f ^= low
        verts = members(free)
        verts.sort(key=lambda v: -weight[v])
        return [1 << v for v in verts]

    @staticmethod
    def _packing(live: tuple[int, ...], free: int) -> int:
        """Greedy count of pairwise disjoint live hyperedges (a hitting-set bound)."""
        used = 0
        count = 0
        for f in sorted((e & free for e in live), key=int.bit_count):
            if not f & used:
                used |= f
                count += 1
        return count

    # -- bounded searches ----------------------------------------------------

    def resolver_within(self, R: int, S: int, live: tuple[int, ...], rmove: bool, k: int) -> bool:
        """Can Resolver force a win using at most ``k`` more of his moves?

        ``live`` lists the hyperedges Resolver has not met yet; none of them
        may lie inside ``S``.
        """
        free = self.full & ~(R | S)
        avail = free.bit_count()
        cap = (avail + 1) // 2 if rmove else avail // 2
        if k > cap:
            k = cap
        if k <= 0:
            return False
        key = (R, S, rmove)
        ent = self._rmemo.get(key)
        if ent is not None:
            if k <= ent[0]:
                self.hits += 1
                return False
            if k >= ent[1]:
                self.hits += 1
                return True
        self._tick()

        threat = 0
        for e in live:
            f = e & free
            if _popcount_single(f):
                threat |= f
        result = False
        if rmove:
            if threat:
                moves = [] if not _popcount_single(threat) else [threat]
            elif k < cap and self._packing(live, free) > k:
                moves = []
            else:
                moves = self._ordered(free, live)
            for vb in moves:
                nl = tuple(e for e in live if not e & vb)
                if not nl or self.resolver_within(R | vb, S, nl, False, k - 1):
                    result = True
                    break
        elif not threat and not (k < cap and self._packing(live, free) > k):
            result = True
            for vb in self._ordered(free, live):
                if not self.resolver_within(R, S | vb, live, True, k):
                    result = False
                    break
        self._store(self._rmemo, key, k, result)
        return result

    def spoiler_within(self, R: int, S: int, live: tuple[int, ...], smove: bool, k: int) -> bool:
        """Can Spoiler force a win using at most ``k`` more of her moves?"""
        free = self.full & ~(R | S)
        avail = free.bit_count()
        cap = (avail + 1) // 2 if smove else avail // 2
        if k > cap:
            k = cap
        if k <= 0:
            return False
        key = (R, S, smove)
        ent = self._smemo.get(key)
        if ent is not None:
            if k <= ent[0]:
                self.hits += 1
                return False
            if k >= ent[1]:
                self.hits += 1
                return True
        self._tick()

        threat = 0
        need = self.n + 1
        for e in live:
            f = e & free
            c = f.bit_count()
            if c < need:
                need = c
            if c == 1:
                threat |= f
        if need > k:
            result = False
        elif smove:
            if threat:
                result = True
            else:
                result = False
                for vb in self._ordered(free, live):
                    if self.spoiler_within(R, S | vb, live, False, k - 1):
                        result = True
                        break
        elif threat and not _popcount_single(threat):
            result = True
        else:
            moves = [threat] if threat else self._ordered(free, live)
            result = True
            for vb in moves:
                nl = tuple(e for e in live if not e & vb)
                if not nl or not self.spoiler_within(R | vb, S, nl, True, k):
                    result = False
                    break
        self._store(self._smemo, key, k, result)
        return result

    # -- exact values --------------------------------------------------------

    def _live(self, R: int, S: int) -> tuple[int, ...] | None:
        """Hyperedges still open for Resolver, or None if Spoiler already won."""
        live = tuple(e for e in self.edges if not e & R)
        for e in live:
            if e & ~S == 0:
                return None
        return live

    def _min_hitting(self, live: tuple[int, ...], free: int, cap: int) -> int:
        """Exact minimum number of free vertices meeting every live hyperedge.

        Returns ``cap + 1`` when more than ``cap`` vertices would be needed.
        """
        best = cap + 1
        budget = [200_000]

        def go(edges, size):
            nonlocal best
            budget[0] -= 1
            if budget[0] < 0:
                raise _HittingBudget
            if not edges:
                best = min(best, size)
                return
            if size + self._packing(edges, free) >= best:
                return
            target = min(edges, key=lambda e: ((e & free).bit_count(), e))
            for v in members(target & free):
                vb = 1 << v
                go(tuple(e for e in edges if not e & vb), size + 1)

        try:
            go(live, 0)
        except _HittingBudget:
            return self._packing(live, free)
        return best

    def check_state(self, state: GameState) -> None:
        if (state.resolver_set | state.spoiler_set) >> self.n:
            raise VertexOutOfRange("state references vertices outside the graph")

    def terminal_winner(self, R: int, S: int) -> Player | None:
        live = self._live(R, S)
        if live is None:
            return Player.SPOILER
        if not live:
            return Player.RESOLVER
        return None

    def value(self, R: int, S: int, to_move: Player) -> MoveValue:
        """Winner and winner's remaining move count from a non-terminal position."""
        live = self._live(R, S)
        if live is None or not live:
            raise TerminalState("position is already decided")
        rmove = to_move is Player.RESOLVER
        free = self.full & ~(R | S)
        avail = free.bit_count()
        rcap = (avail + 1) // 2 if rmove else avail // 2
        if self.resolver_within(R, S, live, rmove, rcap):
            k = max(1, self._min_hitting(live, free, rcap))
            while not self.resolver_within(R, S, live, rmove, k):
                k += 1
            return MoveValue(Player.RESOLVER, k)
        k = max(1, min((e & free).bit_count() for e in live))
        while not self.spoiler_within(R, S, live, not rmove, k):
            k += 1
        return MoveValue(Player.SPOILER, k)

    def _child_value_at_most(self, R, S, to_move: Player, winner: Player, k: int) -> bool:
        """Does the winner finish within ``k`` more moves from this child?"""
        live = self._live(R, S)
        if live is None:
            return winner is Player.SPOILER
        if not live:
            return winner is Player.RESOLVER
        if winner is Player.RESOLVER:
            return self.resolver_within(R, S, live, to_move is Player.RESOLVER, k)
        return self.spoiler_within(R, S, live, to_move is Player.SPOILER, k)

    def best_move(self, state: GameState) -> tuple[int, MoveValue]:
        """Lowest-id optimal move for the side to move, with the position value."""
        self.check_state(state)
        R, S = state.resolver_set, state.spoiler_set
        val = self.value(R, S, state.to_move)
        mover = state.to_move
        free = self.full & ~(R | S)
        for v in members(free):
            if mover is Player.RESOLVER:
                cR, cS = R | 1 << v, S
            else:
                cR, cS = R, S | 1 << v
            if mover is val.winner:
                if self._child_value_at_most(cR, cS, mover.other, val.winner, val.moves - 1):
                    return v, val
            elif not self._child_value_at_most(cR, cS, mover.other, val.winner, val.moves - 1):
                return v, val
        raise AssertionError("no move attains the position value")

    def principal_line(self, first: Player) -> list[tuple[str, int]]:
        state = GameState.initial(first)
        line = []
        while self.terminal_winner(state.resolver_set, state.spoiler_set) is None:
            v, _ = self.best_move(state)
            line.append((state.to_move.value, v))
            state = state.play(v)
        return line

    def winner(self, first: Player) -> Player:
        first = Player(first)
        live = self._live(0, 0)
        if live is None:
            return Player.SPOILER
        if not live:
            return Player.RESOLVER
        rmove = first is Player.RESOLVER
        cap = (self.n + 1) // 2 if rmove else self.n // 2
        return Player.RESOLVER if self.resolver_within(0, 0, live, rmove, cap) else Player.SPOILER

    def winner_move_count(self, first: Player) -> MoveValue:
        return self.value(0, 0, Player(first))

    def outcome(self) -> Outcome:
        return _combine(self.winner(Player.RESOLVER), self.winner(Player.SPOILER))

    def game_values(self, lines: bool = True) -> GameReport:
        t0 = time.perf_counter_ns()
        r_game = self.winner_move_count(Player.RESOLVER)
        s_game = self.winner_move_count(Player.SPOILER)
        report = GameReport(_combine(r_game.winner, s_game.winner))
        if r_game.winner is Player.RESOLVER:
            report.r_mb = r_game.moves
        else:
            report.s_mb = r_game.moves
        if s_game.winner is Player.RESOLVER:
            report.r_mb_prime = s_game.moves
        else:
            report.s_mb_prime = s_game.moves
        if lines:
            report.witness_lines = {
                "R-game": self.principal_line(Player.RESOLVER),
                "S-game": self.principal_line(Player.SPOILER),
            }
        report.stats = dict(self.stats, wall_ms=(time.perf_counter_ns() - t0) // 1_000_000)
        return report


class _HittingBudget(Exception):
    pass


def _combine(r_game: Player, s_game: Player) -> Outcome:
    if r_game is Player.RESOLVER and s_game is Player.RESOLVER:
        return Outcome.R
    if r_game is Player.SPOILER and s_game is Player.SPOILER:
        return Outcome.S
    if r_game is Player.RESOLVER and s_game is Player.SPOILER:
        return Outcome.N
    raise Inconsistent("the second player wins both games")


# -- functional front end --------------------------------------------------------

def solve_winner(spec: TargetSpec, first: Player | str, **caps) -> Player:
    return Solver(spec, **caps).winner(Player(first))


def winner_move_count(spec: TargetSpec, first: Player | str, **caps) -> MoveValue:
    return Solver(spec, **caps).winner_move_count(Player(first))


def outcome(spec: TargetSpec, **caps) -> Outcome:
    return Solver(spec, **caps).outcome()


def game_values(spec: TargetSpec, lines: bool = True, **caps) -> GameReport:
    return Solver(spec, **caps).game_values(lines=lines)


def best_move(spec: TargetSpec, state: GameState, **caps) -> tuple[int, MoveValue]:
    return Solver(spec, **caps).best_move(state)


# -- reference variants --------------------------------------------------------

def solve_winner_full_board(spec: TargetSpec, first: Player | str) -> Player:
    """Winner when the game always runs until every vertex is claimed.

    No early termination: the final Resolver set decides. Memoised but
    otherwise unpruned; meant for cross-checking on small graphs.
    """
    n = spec.graph.n
    full = (1 << n) - 1
    memo: dict[tuple[int, int], bool] = {}

    def resolver_wins(R, S):
        if R | S == full:
            return spec.is_winning(R)
        key = (R, S)
        if key in memo:
            return memo[key]
        rmove = (R.bit_count() - S.bit_count()) == (0 if first is Player.RESOLVER else -1)
        free = members(full & ~(R | S))
        if rmove:
            res = any(resolver_wins(R | 1 << v, S) for v in free)
        else:
            res = all(resolver_wins(R, S | 1 << v) for v in free)
        memo[key] = res
        return res

    first = Player(first)
    return Player.RESOLVER if resolver_wins(0, 0) else Player.SPOILER


def solve_winner_extra_move(spec: TargetSpec, first: Player | str,
                            beneficiary: Player | str) -> Player:
    """Winner when ``beneficiary`` may, once, claim two vertices in one turn."""
    first, beneficiary = Player(first), Player(beneficiary)
    edges = spec.hyperedges
    full = spec.graph.full
    memo: dict[tuple[int, int, bool, bool], bool] = {}

    def resolver_wins(R, S, rmove, bonus):
        if all(e & R for e in edges):
            return True
        if any(e & ~S == 0 for e in edges):
            return False
        key = (R, S, rmove, bonus)
        if key in memo:
            return memo[key]
        free = members(full & ~(R | S))
        mover = Player.RESOLVER if rmove else Player.SPOILER
        options = []
        for v in free:
            if rmove:
                options.append((R | 1 << v, S, False, bonus))
            else:
                options.append((R, S | 1 << v, True, bonus))
            if bonus and mover is beneficiary:
                for w in free:
                    if w > v:
                        b = 1 << v | 1 << w
                        options.append((R | b, S, False, False) if rmove
                                       else (R, S | b, True, False))
        if rmove:
            res = any(resolver_wins(*o) for o in options)
        else:
            res = all(resolver_wins(*o) for o in options)
        memo[key] = res
        return res

    won = resolver_wins(0, 0, first is Player.RESOLVER, True)
    return Player.RESOLVER if won else Player.SPOILER


def state_from_sets(resolver, spoiler, to_move: Player | str) -> GameState:
    return GameState(mask(resolver), mask(spoiler), Player(to_move))
