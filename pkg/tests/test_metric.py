import itertools
import random

import pytest

from mbrg.errors import BadParams, ResourceLimit, VertexOutOfRange
from mbrg.graph import Graph, generate_family, mask
from mbrg.metric import (
    SetProperty,
    all_minimum_sets,
    check_set_property,
    even_transversal_check,
    find_pairing_resolving,
    hits_all,
    hyperedges,
    is_pairing_resolving,
    location_number,
    metric_dimension,
    minimum_property_number,
)
from mbrg.specs import build
from oracles import has_property

FAMILIES = list(SetProperty)


def P(n):
    return generate_family("path", n)


def C(n):
    return generate_family("cycle", n)


def K(n):
    return generate_family("complete", n)


def random_connected(rng, n, p=0.4):
    while True:
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
        if edges:
            G = Graph.from_edges(n, edges)
            if G.is_connected():
                return G


# -- examples --------------------------------------------------------------------

def test_p5_first_two_not_locating():
    assert not check_set_property(P(5), [0, 1], "locating")


def test_c4_adjacent_pair():
    assert check_set_property(C(4), [0, 1], "locating_dominating")
    assert check_set_property(C(4), [0, 1], "strictly_locating")


def test_p6_positions_2_4_locating():
    assert check_set_property(P(6), [1, 3], "locating")


def test_p4_pairs():
    # every 2-subset of P_4 locates it; only {1,3} and {2,4} are not strict
    for S in itertools.combinations(range(4), 2):
        assert check_set_property(P(4), S, "locating")
    strict = [S for S in itertools.combinations(range(4), 2)
              if check_set_property(P(4), S, "strictly_locating")]
    assert (0, 2) not in strict and (1, 3) not in strict
    assert len(strict) == 4


def test_small_numbers():
    assert metric_dimension(C(4)) == 2
    assert location_number(P(4)) == 2
    assert metric_dimension(C(5)) == 2
    assert metric_dimension(P(7)) == 1
    assert metric_dimension(K(5)) == 4


def test_all_minimum_sets_examples():
    assert all_minimum_sets(P(6), "locating") == [(1, 3), (2, 4)]
    assert all_minimum_sets(P(2), "locating") == [(0,), (1,)]
    assert all_minimum_sets(P(3), "locating") == [(0,), (2,)]


def test_minimum_witness_is_first():
    assert minimum_property_number(P(4), "resolving") == (1, (0,))


def test_pairings():
    p4 = find_pairing_resolving(P(4))
    assert p4 is not None and p4.dim_pairing
    assert find_pairing_resolving(K(2)).dim_pairing
    assert find_pairing_resolving(K(3)) is None
    assert find_pairing_resolving(K(4)) is None
    assert not is_pairing_resolving(K(3), [(0, 1)])


def test_p4_k2_layer_pairs_resolve():
    prod = build("product:path:4∘complete:2")
    pairs = [(2 * g, 2 * g + 1) for g in range(4)]
    assert is_pairing_resolving(prod.base, pairs)


def test_pairing_rejects_overlap():
    with pytest.raises(BadParams):
        is_pairing_resolving(P(4), [(0, 1), (1, 2)])


def test_transversal_cap():
    with pytest.raises(ResourceLimit):
        is_pairing_resolving(P(6), [(0, 1), (2, 3), (4, 5)], cap=2)


@pytest.mark.parametrize("kind", ["path", "cycle"])
@pytest.mark.parametrize("ell", [3, 4])
def test_even_transversals(kind, ell):
    res = even_transversal_check(kind, ell)
    assert res.strictly_locating and res.dominating
    assert res.transversals == 2 ** ell


def test_even_transversal_bad_ell():
    with pytest.raises(BadParams):
        even_transversal_check("path", 2)


def test_out_of_range_set():
    with pytest.raises(VertexOutOfRange):
        check_set_property(P(3), [5], "resolving")


# -- properties ----------------------------------------------------------------

def test_monotone_random_triples():
    rng = random.Random(2024)
    for _ in range(500):
        G = random_connected(rng, rng.randint(2, 9))
        T = [v for v in range(G.n) if rng.random() < 0.6]
        S = [v for v in T if rng.random() < 0.6]
        for prop in (SetProperty.RESOLVING, SetProperty.LOCATING, SetProperty.DOMINATING):
            if check_set_property(G, S, prop):
                assert check_set_property(G, T, prop), (G.edges, S, T, prop)


def test_full_set_has_every_property():
    rng = random.Random(5)
    for _ in range(50):
        G = random_connected(rng, rng.randint(2, 8))
        for prop in FAMILIES:
            assert check_set_property(G, G.full, prop)


@pytest.mark.parametrize("prop", FAMILIES)
def test_predicates_match_oracle(prop):
    rng = random.Random(FAMILIES.index(prop))
    for _ in range(150):
        G = random_connected(rng, rng.randint(2, 8))
        S = [v for v in range(G.n) if rng.random() < 0.5]
        assert check_set_property(G, S, prop) == has_property(G, S, prop)


@pytest.mark.parametrize("prop", FAMILIES)
def test_hyperedges_match_literal(prop):
    rng = random.Random(99)
    for _ in range(40):
        G = random_connected(rng, rng.randint(2, 7))
        edges = hyperedges(G, prop)
        for m in range(1 << G.n):
            assert hits_all(edges, m) == check_set_property(G, m, prop)


def test_hyperedges_are_minimal():
    G = C(6)
    for prop in FAMILIES:
        edges = hyperedges(G, prop)
        for a, b in itertools.permutations(edges, 2):
            assert a & b != a


def test_metric_dimension_oracle():
    rng = random.Random(17)
    for _ in range(60):
        G = random_connected(rng, rng.randint(2, 7))
        best = min(k for k in range(G.n + 1)
                   for S in itertools.combinations(range(G.n), k)
                   if has_property(G, S, SetProperty.RESOLVING))
        assert metric_dimension(G) == best


def test_all_minimum_sets_are_minimum():
    G = C(6)
    sets = all_minimum_sets(G, "resolving")
    k = metric_dimension(G)
    assert all(len(S) == k for S in sets)
    assert set(sets) == {S for S in itertools.combinations(range(6), k)
                         if has_property(G, S, SetProperty.RESOLVING)}
    assert mask(sets[0]) == mask(minimum_property_number(G, "resolving")[1])
