"""
Exact values of the resolving game on small graphs
==================================================

"""

from mbrg.solver import Solver, TargetSpec
from mbrg.specs import build

# complete graphs: K_3 is a first-player win, larger ones belong to Spoiler
for n in (3, 4, 5):
    rep = Solver(TargetSpec(build(f"complete:{n}"))).game_values(lines=False)
    print(f"K_{n}: outcome {rep.outcome.value}, s_mb {rep.s_mb}, s_mb' {rep.s_mb_prime}")

# products are built from two specifiers; vertex (g, h) has id g * n(H) + h
P = build("product:path:4∘path:2")
rep = Solver(TargetSpec(P.base)).game_values()
print("P_4 o P_2:", rep.outcome.value, rep.r_mb, rep.r_mb_prime)

# a principal line of the R-game, with vertices shown as (g,h) labels
for who, v in rep.witness_lines["R-game"]:
    print(f"  {who:8s} {P.base.label(v)}")

# the 16-vertex stress instance still solves in about a second
rep = Solver(TargetSpec(build("product:path:4∘path:4").base)).game_values(lines=False)
print("P_4 o P_4:", rep.outcome.value, rep.r_mb, rep.r_mb_prime, rep.stats)
