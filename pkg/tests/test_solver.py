import random

import pytest

from mbrg.errors import BadParams, ResourceLimit, TerminalState
from mbrg.graph import generate_family
from mbrg.metric import SetProperty, check_set_property
from mbrg.solver import (
    GameState,
    Outcome,
    Player,
    Solver,
    TargetSpec,
    best_move,
    game_values,
    outcome,
    solve_winner,
    solve_winner_extra_move,
    solve_winner_full_board,
    state_from_sets,
    winner_move_count,
)
from mbrg.specs import build
from oracles import connected_atlas, game_oracle

R, S = Player.RESOLVER, Player.SPOILER


def spec(desc, family="resolving"):
    return TargetSpec(build(desc).base if desc.startswith("product:") else build(desc), family)


# -- examples --------------------------------------------------------------------

def test_complete_graph_outcomes():
    assert outcome(spec("complete:3")) is Outcome.N
    assert outcome(spec("complete:4")) is Outcome.S
    assert outcome(spec("complete:5")) is Outcome.S


def test_k2():
    rep = game_values(spec("complete:2"))
    assert rep.outcome is Outcome.R and rep.r_mb == rep.r_mb_prime == 1


def test_p4_p2():
    rep = game_values(spec("product:path:4∘path:2"))
    assert (rep.outcome, rep.r_mb, rep.r_mb_prime) == (Outcome.R, 4, 4)


def test_k4_spoiler_first():
    assert winner_move_count(spec("complete:4"), "spoiler") == (S, 2)


def test_c4():
    assert outcome(spec("cycle:4")) is Outcome.R


def test_p2_p5():
    rep = game_values(spec("product:path:2∘path:5"))
    assert (rep.outcome, rep.s_mb, rep.s_mb_prime) == (Outcome.S, 3, 3)


def test_p5_locating_layer_game():
    # locating on P_5 is a first-player win; Spoiler opening a layer wins it
    sp = spec("path:5", "locating")
    assert solve_winner(sp, "spoiler") is S
    assert solve_winner(sp, "resolver") is R
    assert outcome(sp) is Outcome.N


def test_best_move_examples():
    v, val = best_move(spec("complete:4"), GameState.initial("spoiler"))
    assert val == (S, 2) and v == 0
    v, val = best_move(spec("path:4"), GameState.initial("resolver"))
    assert val.winner is R and val.moves == 1 and v == 0


def test_best_move_is_optimal():
    sp = spec("cycle:5")
    solver = Solver(sp)
    state = GameState.initial("spoiler")
    v, val = solver.best_move(state)
    child = state.play(v)
    assert solver.value(child.resolver_set, child.spoiler_set, child.to_move).winner is val.winner


def test_terminal_state():
    sp = spec("path:4")
    with pytest.raises(TerminalState):
        best_move(sp, state_from_sets([0], [], "spoiler"))


def test_overlapping_state():
    with pytest.raises(BadParams):
        state_from_sets([0], [0], "resolver")


def test_caps():
    with pytest.raises(ResourceLimit):
        game_values(spec("product:path:3∘path:4"), node_cap=10)
    with pytest.raises(ResourceLimit):
        Solver(spec("product:path:3∘path:6"))
    with pytest.raises(BadParams):
        Solver(spec("path:3"), vertex_cap=40)


def test_report_invariants_and_lines():
    rep = game_values(spec("product:path:2∘path:4"))
    assert rep.invariant_violations() == []
    line = rep.witness_lines["R-game"]
    assert line[0][0] == "resolver"
    resolver = [v for p, v in line if p == "resolver"]
    assert len(resolver) == rep.r_mb
    assert check_set_property(build("product:path:2∘path:4").base, resolver, "resolving")


def test_determinism():
    a = game_values(spec("product:path:2∘cycle:4")).to_dict(with_time=False)
    b = game_values(spec("product:path:2∘cycle:4")).to_dict(with_time=False)
    assert a == b


# -- oracle agreement --------------------------------------------------------

def test_matches_oracle_all_connected_up_to_six():
    count = 0
    for G in connected_atlas(6):
        sp = TargetSpec(G)
        want_r, want_s = game_oracle(G)
        solver = Solver(sp)
        assert tuple(solver.winner_move_count(R)) == want_r, G.edges
        assert tuple(solver.winner_move_count(S)) == want_s, G.edges
        count += 1
    assert count == 142


@pytest.mark.parametrize("desc", ["path:7", "cycle:7", "star:6", "cbip:3,4", "complete:7"])
def test_matches_oracle_seven_vertices(desc):
    G = build(desc)
    sol = Solver(TargetSpec(G))
    assert (tuple(sol.winner_move_count(R)), tuple(sol.winner_move_count(S))) == game_oracle(G)


@pytest.mark.parametrize("family", [f for f in SetProperty if f is not SetProperty.RESOLVING])
def test_other_families_full_board(family):
    for G in connected_atlas(5):
        sp = TargetSpec(G, family)
        for first in (R, S):
            assert solve_winner(sp, first) is solve_winner_full_board(sp, first)


ROSTER = ["path:2", "path:5", "cycle:6", "star:4", "paw", "diamond", "complete:5",
          "cbip:3,3", "product:path:2∘path:4", "product:path:2∘cycle:5",
          "product:path:3∘path:3", "product:complete:2∘complete:3"]


@pytest.mark.parametrize("desc", ROSTER)
def test_early_termination_never_changes_winner(desc):
    sp = spec(desc)
    for first in (R, S):
        assert solve_winner(sp, first) is solve_winner_full_board(sp, first)


SMALL = ["path:5", "cycle:6", "star:4", "paw", "diamond", "complete:5", "cbip:3,3",
         "product:path:2∘path:4"]


@pytest.mark.parametrize("desc", SMALL)
def test_extra_move_never_hurts(desc):
    sp = spec(desc)
    for first in (R, S):
        w = solve_winner(sp, first)
        assert solve_winner_extra_move(sp, first, w) is w


def test_monotone_spot_check():
    TargetSpec(generate_family("cycle", 6)).assert_monotone(samples=200)


def test_random_products_report_order():
    rng = random.Random(8)
    for _ in range(6):
        g = rng.choice(["path:2", "path:3", "complete:2"])
        h = rng.choice(["path:3", "path:4", "cycle:4", "complete:3"])
        rep = game_values(spec(f"product:{g}∘{h}"), lines=False)
        assert rep.invariant_violations() == []
