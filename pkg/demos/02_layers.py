"""
Resolving sets of G o H read off the H-layers
=============================================

"""

from mbrg.metric import all_minimum_sets, check_set_property
from mbrg.product import layered_resolving_check
from mbrg.specs import build

# the layer test needs H without a dominating vertex, e.g. P_4
P = build("product:path:2∘path:4")

# ids {0,2} locate P_4 but vertex 1 sees both of them, so the set is not
# strictly locating; using it in both layers of the true-twin pair fails
W = [0, 2, 4, 6]
print(layered_resolving_check(P, W))
print("direct check:", check_set_property(P.base, W, "resolving"))

# replace one layer's pair with an adjacent pair and both tests agree again
W = [0, 1, 4, 6]
print(layered_resolving_check(P, W), check_set_property(P.base, W, "resolving"))

# minimum locating sets of P_6: exactly two of them
print(all_minimum_sets(build("path:6"), "locating"))
