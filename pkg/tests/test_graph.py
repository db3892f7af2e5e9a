import itertools
import json
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from mbrg.errors import (
    BadParams,
    Disconnected,
    EmptyGraph,
    LoopOrMultiEdge,
    MalformedInput,
    TooLarge,
    VertexOutOfRange,
)
from mbrg.graph import (
    Format,
    Graph,
    TwinKind,
    distance_matrix,
    generate_family,
    mask,
    members,
    parse_graph,
    twin_structure,
)


def test_parse_edgelist_path():
    G = parse_graph("4\n0 1\n1 2\n2 3\n", "edgelist")
    assert G.n == 4
    assert G.edges == ((0, 1), (1, 2), (2, 3))
    assert G.degree(0) == 1 and G.degree(1) == 2


def test_edgelist_comments_and_blank_lines():
    G = parse_graph("# a triangle\n3\n\n0 1 # first\n1 2\n0 2\n", Format.EDGELIST)
    assert G.num_edges == 3


def test_graph6_k4():
    G = parse_graph("C~", "graph6")
    assert G.n == 4 and G.num_edges == 6


def test_graph6_header_prefix():
    assert parse_graph(">>graph6<<C~", "graph6") == parse_graph("C~", "graph6")


def test_json_with_labels():
    G = parse_graph('{"n": 3, "edges": [[0, 1], [1, 2]], "labels": ["a", "b", "c"]}', "json")
    assert G.label(2) == "c"
    assert G.has_edge(1, 2) and not G.has_edge(0, 2)


@pytest.mark.parametrize("text,fmt,err", [
    ("3\n0 0\n", "edgelist", LoopOrMultiEdge),
    ("3\n0 1\n1 0\n", "edgelist", LoopOrMultiEdge),
    ("3\n0 5\n", "edgelist", VertexOutOfRange),
    ("0\n", "edgelist", EmptyGraph),
    ("", "edgelist", MalformedInput),
    ("3\n0 1 2\n", "edgelist", MalformedInput),
    ("x\n", "edgelist", MalformedInput),
    ("C", "graph6", MalformedInput),
    ("C~~", "graph6", MalformedInput),
    ("C\x01", "graph6", MalformedInput),
    ("{not json", "json", MalformedInput),
    ('{"n": 2, "edges": [[0]]}', "json", MalformedInput),
    ('{"n": 0, "edges": []}', "json", EmptyGraph),
])
def test_parse_errors(text, fmt, err):
    with pytest.raises(err):
        parse_graph(text, fmt)


def test_bad_utf8():
    with pytest.raises(MalformedInput):
        parse_graph(b"\xff\xfe", "edgelist")


def test_too_large():
    with pytest.raises(TooLarge):
        Graph.from_edges(64, [])


def test_families():
    assert generate_family("path", 5).num_edges == 4
    assert generate_family("cycle", 6).num_edges == 6
    assert generate_family("complete", 5).num_edges == 10
    star = generate_family("star", 3)
    assert star.n == 4 and star.degree(0) == 3
    kab = generate_family("complete_bipartite", 2, 3)
    assert kab.n == 5 and kab.num_edges == 6


def test_path_labels_are_one_based():
    assert [generate_family("path", 3).label(v) for v in range(3)] == ["1", "2", "3"]


@pytest.mark.parametrize("family,params", [
    ("cycle", (2,)), ("path", (1,)), ("complete", (1,)), ("star", (0,)),
    ("complete_bipartite", (0, 2)), ("path", ()), ("wheel", (5,)),
])
def test_family_bad_params(family, params):
    with pytest.raises(BadParams):
        generate_family(family, *params)


def test_distances():
    assert distance_matrix(generate_family("path", 4))[0, 3] == 3
    assert distance_matrix(generate_family("cycle", 5))[0, 3] == 2


def test_distance_spheres_partition():
    D = distance_matrix(generate_family("cycle", 6))
    for w, spheres in enumerate(D.spheres):
        assert sum(spheres) == (1 << 6) - 1
        assert spheres[0] == 1 << w


def test_disconnected():
    G = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert not G.is_connected()
    with pytest.raises(Disconnected):
        distance_matrix(G)


def test_twins_complete():
    ts = twin_structure(generate_family("complete", 4))
    assert ts.classes == ((0, 1, 2, 3),)
    assert set(ts.pair_kind.values()) == {TwinKind.TRUE_TWIN}


def test_twins_star():
    ts = twin_structure(generate_family("star", 3))
    assert ts.classes == ((0,), (1, 2, 3))
    assert ts.kind_of(1) is TwinKind.FALSE_TWIN
    assert ts.kind_of(0) is None
    assert ts.has_false_twins and not ts.has_true_twins


def test_path4_twin_free():
    assert twin_structure(generate_family("path", 4)).is_twin_free


def test_k2_vertices_are_true_twins():
    ts = twin_structure(generate_family("path", 2))
    assert ts.pair_kind == {(0, 1): TwinKind.TRUE_TWIN}


def random_graph(rng, n, p=0.4):
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


def test_handshake_and_symmetry():
    rng = random.Random(1)
    for _ in range(200):
        G = random_graph(rng, rng.randint(1, 12))
        assert sum(G.degree(v) for v in range(G.n)) == 2 * G.num_edges
        assert (G.adj == G.adj.T).all()
        assert not G.adj.diagonal().any()


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 20), st.randoms(use_true_random=False))
def test_round_trips(n, rng):
    G = random_graph(rng, n)
    assert parse_graph(G.to_edgelist(), "edgelist") == G
    assert parse_graph(G.to_json(), "json") == G
    assert parse_graph(G.to_graph6(), "graph6") == G


def test_graph6_matches_networkx():
    rng = random.Random(7)
    for _ in range(50):
        G = random_graph(rng, rng.randint(2, 15))
        ref = nx.Graph()
        ref.add_nodes_from(range(G.n))
        ref.add_edges_from(G.edges)
        assert G.to_graph6() == nx.to_graph6_bytes(ref, header=False).decode().strip()


def test_distances_match_networkx():
    rng = random.Random(3)
    checked = 0
    while checked < 40:
        G = random_graph(rng, rng.randint(2, 12), 0.35)
        if not G.is_connected():
            continue
        ref = nx.Graph(list(G.edges))
        lengths = dict(nx.all_pairs_shortest_path_length(ref))
        D = distance_matrix(G)
        assert all(D[u, v] == lengths[u][v] for u in range(G.n) for v in range(G.n))
        checked += 1


def brute_twins(G):
    """Twin pairs straight from neighbourhood sets."""
    nb = [set(members(G.rows[v])) for v in range(G.n)]
    out = {}
    for u, v in itertools.combinations(range(G.n), 2):
        if nb[u] - {v} == nb[v] - {u}:
            out[u, v] = TwinKind.TRUE_TWIN if v in nb[u] else TwinKind.FALSE_TWIN
    return out


def test_twins_against_oracle():
    rng = random.Random(11)
    for _ in range(300):
        G = random_graph(rng, rng.randint(2, 9), rng.choice([0.2, 0.5, 0.8]))
        ts = twin_structure(G)
        assert ts.pair_kind == brute_twins(G)
        # twin relation is an equivalence; classes partition V
        assert sorted(v for c in ts.classes for v in c) == list(range(G.n))
        for c in ts.classes:
            assert all(p in ts.pair_kind for p in itertools.combinations(c, 2))


def test_mask_members():
    assert mask([0, 3]) == 9
    assert members(9) == [0, 3]
    assert mask(5) == 5


def test_json_output_is_stable():
    G = generate_family("path", 3)
    assert json.loads(G.to_json())["edges"] == [[0, 1], [1, 2]]
