import pytest

from mbrg.errors import InapplicableContext, UnknownStrategy
from mbrg.metric import check_set_property
from mbrg.solver import GameState, Player, TargetSpec, solve_winner
from mbrg.specs import build
from mbrg.strategies import (
    OPTIMAL,
    STRATEGIES,
    PairingResolver,
    make_strategy,
    play_match,
    verify_invariant,
    verify_strategy,
)

R, S = Player.RESOLVER, Player.SPOILER


def product(g, h):
    return build(f"product:{g}∘{h}")


def verify(name, g, h, opponent_first, **kw):
    P = product(g, h)
    return verify_strategy(TargetSpec(P.base), make_strategy(name, P), opponent_first, **kw)


def test_unknown_strategy():
    with pytest.raises(UnknownStrategy):
        make_strategy("no_such_strategy", product("path:2", "path:4"))


def test_odd_path_needs_false_twin_free_g():
    with pytest.raises(InapplicableContext):
        make_strategy("odd_path_resolver", product("star:3", "path:7"))
    with pytest.raises(InapplicableContext):
        make_strategy("odd_cycle_resolver", product("star:3", "cycle:7"))


def test_wrong_factor_is_inapplicable():
    with pytest.raises(InapplicableContext):
        make_strategy("p5_layer_spoiler", product("path:2", "path:4"))
    with pytest.raises(InapplicableContext):
        make_strategy("even_matching_resolver", product("path:2", "path:5"))


def test_pairing_resolver_k2():
    G = build("complete:2")
    res = verify_strategy(TargetSpec(G), PairingResolver(G, [(0, 1)]), True)
    assert res.wins_always and res.counterexample is None


def test_pairing_resolver_finds_pairing():
    P = product("path:4", "complete:2")
    assert verify_strategy(TargetSpec(P.base), make_strategy("pairing_resolver", P),
                           True).wins_always


def test_c4_resolver_second():
    assert verify("c4_c5_resolver", "path:2", "cycle:4", True).wins_always


def test_even_matching_goal_on_every_line():
    P = product("path:2", "path:6")
    strat = make_strategy("even_matching_resolver", P)

    def goal(state):
        return all(check_set_property(P.h, P.local(state.resolver_set, g), p)
                   for g in range(P.n_g) for p in ("strictly_locating", "dominating"))

    for first in (True, False):
        assert verify_strategy(TargetSpec(P.base), strat, first).wins_always
        res = verify_invariant(TargetSpec(P.base), strat, first,
                               lambda st: st.resolver_set.bit_count() < 6 or goal(st),
                               to_end=True)
        assert res.wins_always


def test_p5_spoiler_second():
    assert verify("p5_layer_spoiler", "path:2", "path:5", True).wins_always


def test_p5_spoiler_against_optimal_resolver():
    P = product("path:2", "path:5")
    t = play_match(TargetSpec(P.base), OPTIMAL, make_strategy("p5_layer_spoiler", P), R,
                   context=P)
    assert t.winner is S and t.spoiler_moves == 3


def test_k2_product_spoiler_wins_in_two():
    P = product("path:2", "complete:2")
    t = play_match(TargetSpec(P.base), OPTIMAL, OPTIMAL, R)
    assert t.winner is S and t.spoiler_moves == 2


def test_k2_optimal_match():
    t = play_match(TargetSpec(build("complete:2")), OPTIMAL, OPTIMAL, R)
    assert t.winner is R and t.resolver_moves == 1 and t.moves == [("resolver", 0)]


def test_clone_layer_spoiler():
    for h in ("complete:3", "complete:4"):
        assert verify("clone_layer_spoiler", "path:2", h, True).wins_always


def test_p4_resolver_both_orders():
    for g in ("path:2", "star:2"):
        for first in (True, False):
            assert verify("p4_layer_resolver", g, "path:4", first).wins_always


def test_counterexample_is_a_legal_line():
    # p6_layer_spoiler only bounds Resolver's move count, so it loses the game
    res = verify("p6_layer_spoiler", "path:2", "path:6", True)
    assert not res.wins_always
    line = res.counterexample
    state = GameState.initial(R)
    for who, v in line:
        assert who == state.to_move.value
        state = state.play(v)


def test_literal_odd_path_table_loses():
    P = product("path:2", "path:7")
    strat = make_strategy("odd_path_resolver", P, variant="literal")
    res = verify_strategy(TargetSpec(P.base), strat, True)
    assert not res.wins_always and res.counterexample


def test_moves_are_deterministic_and_legal():
    P = product("path:2", "path:5")
    strat = make_strategy("p5_layer_spoiler", P)
    state = GameState.initial(R).play(0)
    v = strat.move(state)
    assert v == strat.move(state)
    assert not state.claimed >> v & 1


@pytest.mark.parametrize("name,g,h", [
    ("p4_layer_resolver", "path:2", "path:4"),
    ("c4_c5_resolver", "path:2", "cycle:5"),
    ("clone_layer_spoiler", "path:2", "complete:3"),
    ("p5_layer_spoiler", "path:2", "path:5"),
    ("even_matching_resolver", "path:2", "path:6"),
])
def test_strategy_solver_agreement(name, g, h):
    P = product(g, h)
    strat = make_strategy(name, P)
    sp = TargetSpec(P.base)
    for opp_first in (True, False):
        if verify_strategy(sp, strat, opp_first).wins_always:
            first = strat.role.other if opp_first else strat.role
            assert solve_winner(sp, first) is strat.role


def test_registry_names():
    assert set(STRATEGIES) == {
        "pairing_resolver", "even_matching_resolver", "p4_layer_resolver", "c4_c5_resolver",
        "odd_path_resolver", "odd_cycle_resolver", "clone_layer_spoiler", "p5_layer_spoiler",
        "p6_layer_spoiler", "star_p7_spoiler"}


def test_spoiler_strategies_survive_a_pass():
    assert verify("p5_layer_spoiler", "path:2", "path:5", True, adversary_passes=1).wins_always
    assert verify("clone_layer_spoiler", "path:2", "complete:3", True,
                  adversary_passes=1).wins_always
