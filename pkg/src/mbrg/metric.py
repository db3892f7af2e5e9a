"""Set-family predicates on graphs: resolving, locating and friends.

Two independent routes are provided for every family:

* :func:`check_set_property` evaluates the textbook definition directly
  (distance vectors, neighbourhood traces);
* :func:`hyperedges` lists the family as a *transversal* family: a set has the
  property iff it meets every returned mask. The game solver works on this
  form, and the test suite checks the two routes agree.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import BadParams, ResourceLimit, VertexOutOfRange
from .graph import Graph, distance_matrix, generate_family, mask, members

DEFAULT_SUBSET_CAP = 10_000_000
DEFAULT_TRANSVERSAL_CAP = 24


class SetProperty(str, enum.Enum):
    RESOLVING = "resolving"
    LOCATING = "locating"
    STRICTLY_LOCATING = "strictly_locating"
    DOMINATING = "dominating"
    LOCATING_DOMINATING = "locating_dominating"


def _as_mask(G: Graph, S) -> int:
    m = mask(S)
    if m < 0 or m >> G.n:
        raise VertexOutOfRange(f"set {S!r} is not contained in 0..{G.n - 1}")
    return m


def _traces_outside(G: Graph, m: int) -> list[int]:
    return [G.rows[u] & m for u in range(G.n) if not m >> u & 1]


def is_resolving(G: Graph, m: int) -> bool:
    d = distance_matrix(G).d
    cols = members(m)
    vectors = {tuple(d[v, cols]) for v in range(G.n)}
    return len(vectors) == G.n


def is_locating(G: Graph, m: int) -> bool:
    traces = _traces_outside(G, m)
    return len(set(traces)) == len(traces)


def is_strictly_locating(G: Graph, m: int) -> bool:
    traces = _traces_outside(G, m)
    return len(set(traces)) == len(traces) and m not in traces


def is_dominating(G: Graph, m: int) -> bool:
    return all(_traces_outside(G, m))


def check_set_property(G: Graph, S: Iterable[int] | int, prop: SetProperty | str) -> bool:
    """Whether ``S`` has ``prop`` in ``G``.

    ``S`` may be an iterable of vertex ids or a bitmask. Locating-type
    families only compare vertices outside ``S``.
    """
    G.require_nontrivial_connected()
    m = _as_mask(G, S)
    prop = SetProperty(prop)
    if prop is SetProperty.RESOLVING:
        return is_resolving(G, m)
    if prop is SetProperty.LOCATING:
        return is_locating(G, m)
    if prop is SetProperty.STRICTLY_LOCATING:
        return is_strictly_locating(G, m)
    if prop is SetProperty.DOMINATING:
        return is_dominating(G, m)
    return is_locating(G, m) and is_dominating(G, m)


# -- transversal form ----------------------------------------------------------

def _minimal(masks: Iterable[int]) -> tuple[int, ...]:
    ordered = sorted(set(masks), key=lambda e: (e.bit_count(), e))
    kept: list[int] = []
    for e in ordered:
        if not any(k & e == k for k in kept):
            kept.append(e)
    return tuple(sorted(kept))


@lru_cache(maxsize=256)
def hyperedges(G: Graph, prop: SetProperty | str) -> tuple[int, ...]:
    """Inclusion-minimal masks that a set must meet to have ``prop``.

    resolving: for each pair ``x, y`` the vertices at different distances
    from them; locating: for each pair ``u, v`` the set
    ``{u, v} | (N(u) ^ N(v))``; strictly locating adds ``V - N(u)`` for each
    ``u``; dominating: the closed neighbourhoods.
    """
    G.require_nontrivial_connected()
    prop = SetProperty(prop)
    n = G.n
    out: list[int] = []
    if prop is SetProperty.RESOLVING:
        d = distance_matrix(G).d
        for x in range(n):
            for y in range(x + 1, n):
                out.append(mask(z for z in range(n) if d[x, z] != d[y, z]))
        return _minimal(out)
    if prop in (SetProperty.LOCATING, SetProperty.STRICTLY_LOCATING,
                SetProperty.LOCATING_DOMINATING):
        for u in range(n):
            for v in range(u + 1, n):
                out.append(1 << u | 1 << v | (G.rows[u] ^ G.rows[v]))
    if prop is SetProperty.STRICTLY_LOCATING:
        out.extend(G.full & ~G.rows[u] for u in range(n))
    if prop in (SetProperty.DOMINATING, SetProperty.LOCATING_DOMINATING):
        out.extend(G.closed_neighbors(u) for u in range(n))
    return _minimal(out)


def hits_all(edges: Sequence[int], m: int) -> bool:
    return all(e & m for e in edges)


# -- extremal numbers -------------------------------------------------------

def _min_sets(G: Graph, prop: SetProperty, want_all: bool, cap: int) -> tuple[int, list[int]]:
    G.require_nontrivial_connected()
    budget = cap
    for k in range(G.n + 1):
        found = []
        for combo in itertools.combinations(range(G.n), k):
            budget -= 1
            if budget < 0:
                raise ResourceLimit(f"subset enumeration exceeded {cap} candidates")
            m = mask(combo)
            if check_set_property(G, m, prop):
                found.append(m)
                if not want_all:
                    return k, found
        if found:
            return k, found
    raise AssertionError("V(G) always has every supported property")


def minimum_property_number(G: Graph, prop: SetProperty | str,
                            cap: int = DEFAULT_SUBSET_CAP) -> tuple[int, tuple[int, ...]]:
    """Smallest size of a set with ``prop`` and the first witness.

    Candidates are enumerated by size and then lexicographically, so the
    witness is reproducible.
    """
    size, found = _min_sets(G, SetProperty(prop), False, cap)
    return size, tuple(members(found[0]))


def all_minimum_sets(G: Graph, prop: SetProperty | str,
                     cap: int = DEFAULT_SUBSET_CAP) -> list[tuple[int, ...]]:
    _, found = _min_sets(G, SetProperty(prop), True, cap)
    return [tuple(members(m)) for m in found]


def metric_dimension(G: Graph) -> int:
    return minimum_property_number(G, SetProperty.RESOLVING)[0]


def location_number(G: Graph) -> int:
    return minimum_property_number(G, SetProperty.LOCATING)[0]


# -- pairings ----------------------------------------------------------------

@dataclass(frozen=True)
class Pairing:
    pairs: tuple[tuple[int, int], ...]
    dim_pairing: bool | None = None

    def __post_init__(self):
        flat = [v for p in self.pairs for v in p]
        if any(len(p) != 2 for p in self.pairs) or len(set(flat)) != len(flat):
            raise BadParams("pairs must be 2-subsets with all vertices distinct")

    def __len__(self):
        return len(self.pairs)

    def partner(self, v: int) -> int | None:
        for a, b in self.pairs:
            if v == a:
                return b
            if v == b:
                return a
        return None


def _as_pairing(A) -> Pairing:
    if isinstance(A, Pairing):
        return A
    return Pairing(tuple(tuple(sorted(p)) for p in A))


def is_pairing_resolving(G: Graph, A, cap: int = DEFAULT_TRANSVERSAL_CAP) -> bool:
    """Whether every transversal of the pairing ``A`` resolves ``G``."""
    G.require_nontrivial_connected()
    A = _as_pairing(A)
    for p in A.pairs:
        _as_mask(G, p)
    if len(A) > cap:
        raise ResourceLimit(f"{len(A)} pairs exceed the transversal cap of {cap}")
    for choice in itertools.product(*A.pairs):
        if not is_resolving(G, mask(choice)):
            return False
    return True


def find_pairing_resolving(G: Graph, k_max: int | None = None,
                           node_cap: int = 5_000_000) -> Pairing | None:
    """A pairing resolving set with the fewest pairs, or None.

    Search uses the fact that every transversal meets a mask ``e`` exactly
    when some pair lies inside ``e``; each resolving hyperedge must therefore
    swallow a whole pair. The result is re-checked by enumerating its
    transversals.
    """
    G.require_nontrivial_connected()
    edges = hyperedges(G, SetProperty.RESOLVING)
    k_max = G.n // 2 if k_max is None else min(k_max, G.n // 2)
    nodes = 0

    def search(uncovered: tuple[int, ...], used: int, chosen: list, k: int):
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise ResourceLimit(f"pairing search exceeded {node_cap} nodes")
        if not uncovered:
            return list(chosen)
        if k == 0:
            return None
        # branch on the hyperedge with the fewest usable vertices
        target = min(uncovered, key=lambda e: ((e & ~used).bit_count(), e))
        free = members(target & ~used)
        for a, b in itertools.combinations(free, 2):
            pm = 1 << a | 1 << b
            rest = tuple(e for e in uncovered if e & pm != pm)
            chosen.append((a, b))
            res = search(rest, used | pm, chosen, k - 1)
            chosen.pop()
            if res is not None:
                return res
        return None

    for k in range(1, k_max + 1):
        found = search(edges, 0, [], k)
        if found is not None:
            pairs = tuple(sorted(found))
            if not is_pairing_resolving(G, pairs, cap=max(DEFAULT_TRANSVERSAL_CAP, len(pairs))):
                raise AssertionError("pairing search and transversal check disagree")
            return Pairing(pairs, dim_pairing=(len(pairs) == metric_dimension(G)))
    return None


# -- even path / cycle transversals -----------------------------------------

@dataclass(frozen=True)
class TransversalCheck:
    strictly_locating: bool
    dominating: bool
    transversals: int

    def __bool__(self):
        return self.strictly_locating


def even_transversal_check(kind: str, ell: int) -> TransversalCheck:
    """Check every choice of one vertex from each block ``{2i-1, 2i}``.

    Blocks use 1-based positions along ``P_{2ell}`` or ``C_{2ell}``.
    """
    if kind not in ("path", "cycle"):
        raise BadParams(f"kind must be path or cycle, got {kind!r}")
    if ell < 3:
        raise BadParams("ell must be at least 3")
    if ell > 20:
        raise ResourceLimit("ell > 20 would need more than 2^20 transversals")
    H = generate_family(kind, 2 * ell)
    strictly = dominating = True
    count = 0
    for choice in itertools.product(*[(2 * i, 2 * i + 1) for i in range(ell)]):
        m = mask(choice)
        count += 1
        strictly = strictly and is_strictly_locating(H, m)
        dominating = dominating and is_dominating(H, m)
    return TransversalCheck(strictly, dominating, count)
