"""Signed graphs: re-signing algebra, balance, equivalence, signed minors."""

import itertools

import pytest
from hypothesis import given, strategies as st

from oddminorkit import (
    Graph,
    Path,
    SignedGraph,
    cut_edges,
    find_odd_clique_minor,
    find_signed_minor,
    is_balanced,
    resign,
    signatures_equivalent,
    verify_signed_minor_model,
)

K3 = Graph(3, [(0, 1), (0, 2), (1, 2)])


@st.composite
def signed_graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    edges = [e for e in pairs if draw(st.booleans())]
    sigma = [e for e in edges if draw(st.booleans())]
    return SignedGraph(Graph(n, edges), frozenset(sigma))


def fundamental_cycles(G):
    """One cycle per non-tree edge of a DFS forest, as vertex tuples."""
    parent = {}
    depth = {}
    for root in G.vertices():
        if root in parent:
            continue
        parent[root] = root
        depth[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for w in G.neighbors(v):
                if w not in parent:
                    parent[w] = v
                    depth[w] = depth[v] + 1
                    stack.append(w)
    for u, v in G.edges():
        if parent[u] == v or parent[v] == u:
            continue
        # walk both ends up to the meeting point
        pu, pv = [u], [v]
        a, b = u, v
        while a != b:
            if depth[a] >= depth[b]:
                a = parent[a]
                pu.append(a)
            else:
                b = parent[b]
                pv.append(b)
        if pu[-1] == pv[-1]:
            pv.pop()
        yield tuple(pu + list(reversed(pv)))


@given(signed_graphs(), st.data())
def test_resign_preserves_balance_on_fundamental_cycles(SG, data):
    X = data.draw(st.sets(st.sampled_from(range(SG.graph.n))))
    SG2 = resign(SG, X)
    for cyc in fundamental_cycles(SG.graph):
        if len(cyc) < 3:
            continue
        p = Path(cyc)
        assert is_balanced(SG, p) == is_balanced(SG2, p)


@given(signed_graphs(), st.data())
def test_resign_is_a_group_action(SG, data):
    X = data.draw(st.sets(st.sampled_from(range(SG.graph.n))))
    Y = data.draw(st.sets(st.sampled_from(range(SG.graph.n))))
    assert resign(resign(SG, X), X) == SG
    assert resign(resign(SG, X), Y) == resign(SG, set(X) ^ set(Y))


@given(signed_graphs(), st.data())
def test_signatures_equivalent_round_trips_resign(SG, data):
    X = data.draw(st.sets(st.sampled_from(range(SG.graph.n))))
    target = resign(SG, X).signature
    W = signatures_equivalent(SG, target)
    assert W is not None
    assert SG.signature ^ cut_edges(SG.graph, W) == target


def test_signatures_inequivalent_on_odd_cycle():
    C3 = SignedGraph(K3, frozenset())
    # flipping one edge flips the triangle's balance: no re-signing does that
    assert signatures_equivalent(C3, [(0, 1)]) is None


def test_cut_edges_basic():
    G = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert cut_edges(G, {0}) == {(0, 1), (0, 3)}
    assert cut_edges(G, {0, 1}) == {(1, 2), (0, 3)}
    assert cut_edges(G, set(G.vertices())) == frozenset()


def test_is_balanced_validates_input():
    C3 = SignedGraph(K3, frozenset({(0, 1)}))
    assert not is_balanced(C3, Path((0, 1, 2)))
    assert is_balanced(SignedGraph(K3, frozenset({(0, 1), (1, 2)})), Path((0, 1, 2)))
    with pytest.raises(ValueError):
        is_balanced(C3, Path((0, 1)))
    with pytest.raises(ValueError):
        is_balanced(C3, Path((0, 2)))  # needs length >= 3


def test_k6_contains_all_positive_triangle():
    K6 = Graph(6, [(i, j) for i in range(6) for j in range(i + 1, 6)])
    model = find_signed_minor(K6, K3, [])
    assert model is not None
    ok, reason = verify_signed_minor_model(K6, K3, [], model)
    assert ok, reason


def test_single_edge_hosts_bichromatic_edge_pattern():
    # regression: the two singleton trees need opposite colors, so the
    # search must not pin every singleton to one color
    K2 = Graph(2, [(0, 1)])
    model = find_signed_minor(K2, K2, [])
    assert model is not None
    ok, reason = verify_signed_minor_model(K2, K2, [], model)
    assert ok, reason


def test_triangle_lacks_all_positive_triangle():
    # K_3 itself hosts only the unbalanced triangle: every one-vertex-per-tree
    # model forces three witness edges whose colorings cannot all agree
    assert find_signed_minor(K3, K3, []) is None


@given(st.integers(0, 400))
def test_all_negative_triangle_agrees_with_odd_minor_detector(seed):
    import random

    rng = random.Random(seed)
    n = rng.randint(3, 7)
    edges = [
        (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5
    ]
    G = Graph(n, edges)
    sigma = [(0, 1), (0, 2), (1, 2)]
    signed = find_signed_minor(G, K3, sigma)
    odd = find_odd_clique_minor(G, 3)
    assert (signed is None) == (odd is None)
    if signed is not None:
        ok, reason = verify_signed_minor_model(G, K3, sigma, signed)
        assert ok, reason


def test_verifier_rejects_tampering():
    K6 = Graph(6, [(i, j) for i in range(6) for j in range(i + 1, 6)])
    model = find_signed_minor(K6, K3, [])
    bad = type(model)(
        trees=model.trees,
        tree_edges=model.tree_edges,
        tree_colorings={
            u: {v: 3 - c for v, c in col.items()} if u == 0 else col
            for u, col in model.tree_colorings.items()
        },
        edge_witness=model.edge_witness,
    )
    ok, reason = verify_signed_minor_model(K6, K3, [], bad)
    # flipping one tree's coloring breaks witness parity (or, for a larger
    # tree, propriety stays intact, so the reason must be witness-parity)
    assert not ok and reason == "witness-parity"

    overlapping = type(model)(
        trees={**model.trees, 1: model.trees[0]},
        tree_edges={**model.tree_edges, 1: model.tree_edges[0]},
        tree_colorings={**model.tree_colorings, 1: model.tree_colorings[0]},
        edge_witness=model.edge_witness,
    )
    ok, reason = verify_signed_minor_model(K6, K3, [], overlapping)
    assert not ok and reason == "overlapping-trees"
