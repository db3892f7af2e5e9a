"""
Checking scripted strategies against every opponent line
========================================================

"""

from mbrg.solver import TargetSpec
from mbrg.specs import build
from mbrg.strategies import OPTIMAL, make_strategy, play_match, verify_strategy

# Spoiler's pairing strategy on G o P_5 wins even as the second player
P = build("product:path:3∘path:5")
strat = make_strategy("p5_layer_spoiler", P)
print(verify_strategy(TargetSpec(P.base), strat, opponent_first=True))

# a single game against the exact solver, with per-layer summaries
P = build("product:path:2∘path:5")
t = play_match(TargetSpec(P.base), OPTIMAL, make_strategy("p5_layer_spoiler", P), "resolver",
               context=P)
print(t.winner.value, t.moves)
print(t.layer_sets)

# the odd-path reply table as first written loses; the verifier finds the line
P = build("product:path:2∘path:7")
literal = make_strategy("odd_path_resolver", P, variant="literal")
res = verify_strategy(TargetSpec(P.base), literal, opponent_first=True)
print("literal table:", res.wins_always, res.counterexample)

# the guarded table checks each reply against the exact layer game first
guarded = make_strategy("odd_path_resolver", P)
print("guarded table:", verify_strategy(TargetSpec(P.base), guarded, True).wins_always)

# 28 vertices: Spoiler keeps Resolver from winning on K_1,3 o P_7 when moving first
P = build("product:star:3∘path:7")
res = verify_strategy(TargetSpec(P.base), make_strategy("star_p7_spoiler", P), False)
print("star_p7_spoiler:", res.wins_always, res.nodes, "nodes")
