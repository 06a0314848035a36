"""Signed graphs: re-signing, balance, signature equivalence, signed minors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .graph import Graph, Path, SizeLimitError, _norm_edge

Edge = tuple[int, int]

DEFAULT_SIGNED_MINOR_LIMIT = 14


def _edge_set(edges: Iterable[Edge]) -> frozenset[Edge]:
    return frozenset(_norm_edge(u, v) for u, v in edges)


@dataclass(frozen=True)
class SignedGraph:
    """A graph with a signature: the set of negative edges."""

    graph: Graph
    signature: frozenset[Edge]

    def __post_init__(self):
        sig = _edge_set(self.signature)
        object.__setattr__(self, "signature", sig)
        for e in sig:
            if not self.graph.has_edge(*e):
                raise ValueError(f"signature edge {e} not in graph")

    def is_negative(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.signature


def cut_edges(G: Graph, X: Iterable[int]) -> frozenset[Edge]:
    """The edge cut delta(X): edges with exactly one end in X."""
    Xs = set(X)
    return frozenset(e for e in G.edges() if (e[0] in Xs) != (e[1] in Xs))


def resign(SG: SignedGraph, X: Iterable[int]) -> SignedGraph:
    """Replace the signature by its symmetric difference with the cut of X."""
    Xs = set(X)
    for v in Xs:
        if not 0 <= v < SG.graph.n:
            raise ValueError(f"unknown vertex id {v}")
    return SignedGraph(SG.graph, SG.signature ^ cut_edges(SG.graph, Xs))


def is_balanced(SG: SignedGraph, cycle: Path) -> bool:
    """True iff the cycle carries an even number of negative edges.

    The cycle is given by its vertex sequence; the closing edge back to the
    first vertex is implied and must exist.
    """
    vs = cycle.vertices
    if len(vs) < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    if not cycle.is_path_of(SG.graph) or not SG.graph.has_edge(vs[-1], vs[0]):
        raise ValueError("input is not a cycle of the graph")
    edges = list(zip(vs, vs[1:])) + [(vs[-1], vs[0])]
    neg = sum(1 for u, v in edges if SG.is_negative(u, v))
    return neg % 2 == 0


def signatures_equivalent(
    SG: SignedGraph, sigma2: Iterable[Edge]
) -> Optional[frozenset[int]]:
    """A re-signing set X with sigma2 = signature ^ delta(X), or None.

    Works componentwise by spanning-tree propagation: a vertex joins X when
    the parity of differing edges along the tree path from the component
    root is odd.
    """
    G = SG.graph
    target = _edge_set(sigma2)
    for e in target:
        if not G.has_edge(*e):
            raise ValueError(f"signature edge {e} not in graph")
    diff = SG.signature ^ target
    side: dict[int, int] = {}
    for comp in G.components():
        root = comp[0]
        side[root] = 0
        stack = [root]
        seen = {root}
        while stack:
            v = stack.pop()
            for w in G.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    side[w] = side[v] ^ (1 if _norm_edge(v, w) in diff else 0)
                    stack.append(w)
    X = frozenset(v for v, s in side.items() if s == 1)
    if cut_edges(G, X) == diff:
        return X
    return None


# ---------------------------------------------------------------------------
# Signed minor models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignedMinorModel:
    """Witness that (G, E(G)) contains (H, Sigma_H) as a minor.

    trees: pattern vertex -> ordered vertex list of a subtree of G
    tree_edges: pattern vertex -> edges of that subtree
    tree_colorings: pattern vertex -> {G-vertex: 1|2}, proper on the subtree
    edge_witness: pattern edge -> G edge joining the two subtrees
    """

    trees: dict[int, tuple[int, ...]]
    tree_edges: dict[int, tuple[Edge, ...]]
    tree_colorings: dict[int, dict[int, int]]
    edge_witness: dict[Edge, Edge]


def verify_signed_minor_model(
    G: Graph, H: Graph, sigma_h: Iterable[Edge], model: SignedMinorModel
) -> tuple[bool, str]:
    """Check all conditions; returns (ok, reason)."""
    sigma = _edge_set(sigma_h)
    for e in sigma:
        if not H.has_edge(*e):
            return False, "signature-not-in-H"
    if set(model.trees) != set(H.vertices()):
        return False, "tree-map-domain"
    seen: set[int] = set()
    for u in H.vertices():
        vs = model.trees[u]
        if not vs:
            return False, "empty-tree"
        vset = set(vs)
        if len(vset) != len(vs):
            return False, "repeated-tree-vertex"
        if vset & seen:
            return False, "overlapping-trees"
        seen |= vset
        if any(not 0 <= v < G.n for v in vs):
            return False, "tree-vertex-out-of-range"
        te = model.tree_edges[u]
        if len(te) != len(vs) - 1:
            return False, "tree-not-acyclic"
        for a, b in te:
            if a not in vset or b not in vset or not G.has_edge(a, b):
                return False, "tree-edge-invalid"
        if len(vs) > 1:
            tg = Graph(G.n, te)
            comp = {v for v in vs}
            if not tg.subgraph_on(comp).is_connected_subset(vs):
                return False, "tree-not-connected"
        c = model.tree_colorings[u]
        if set(c) != vset or any(c[v] not in (1, 2) for v in vs):
            return False, "coloring-domain"
        if any(c[a] == c[b] for a, b in te):
            return False, "coloring-not-proper"
    if set(model.edge_witness) != set(_edge_set(H.edges())):
        return False, "witness-map-domain"
    for he, ge in model.edge_witness.items():
        u, v = he
        a, b = ge
        if not G.has_edge(a, b):
            return False, "witness-not-an-edge"
        if a in set(model.trees[v]) and b in set(model.trees[u]):
            a, b = b, a
        if a not in set(model.trees[u]) or b not in set(model.trees[v]):
            return False, "witness-endpoints"
        mono = model.tree_colorings[u][a] == model.tree_colorings[v][b]
        if mono != (he in sigma):
            return False, "witness-parity"
    return True, "ok"


def _connected_subsets(G: Graph) -> list[int]:
    """All connected vertex subsets as bitmasks, ordered by size then value."""
    n = G.n
    conn: set[int] = set(1 << v for v in range(n))
    frontier = list(conn)
    while frontier:
        new = []
        for m in frontier:
            reach = 0
            mm = m
            while mm:
                b = mm & -mm
                reach |= G.adj_mask(b.bit_length() - 1)
                mm ^= b
            reach &= ~m
            while reach:
                b = reach & -reach
                cand = m | b
                if cand not in conn:
                    conn.add(cand)
                    new.append(cand)
                reach ^= b
        frontier = new
    return sorted(conn, key=lambda m: (bin(m).count("1"), m))


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


def _valid_colorings(G: Graph, mask: int) -> list[int]:
    """Color masks c (bit set = color 2) such that the disagreement graph on
    the subset spans it; exactly the colorings proper on some spanning tree.

    The lowest vertex is pinned to color 1; flipping colors is symmetric for
    odd-minor use but NOT for general signed patterns, so callers must try
    both c and its complement.
    """
    vs = _bits(mask)
    if len(vs) == 1:
        return [0]
    low = mask & -mask
    out = []
    free = [v for v in vs if (1 << v) != low]
    for combo in range(1 << len(free)):
        c = 0
        for i, v in enumerate(free):
            if (combo >> i) & 1:
                c |= 1 << v
        # disagreement graph: edges uv in G[mask] with different colors
        start = low.bit_length() - 1
        seen = low
        stack = [start]
        while stack:
            v = stack.pop()
            cv = (c >> v) & 1
            for w in _bits(G.adj_mask(v) & mask & ~seen):
                if ((c >> w) & 1) != cv:
                    seen |= 1 << w
                    stack.append(w)
        if seen == mask:
            out.append(c)
    return out


def _mono_edge(G: Graph, m1: int, c1: int, m2: int, c2: int) -> Optional[Edge]:
    """A G-edge between the two colored subsets whose ends get equal colors."""
    ones1, zeros1 = m1 & c1, m1 & ~c1
    ones2, zeros2 = m2 & c2, m2 & ~c2
    for (a_side, b_side) in ((ones1, ones2), (zeros1, zeros2)):
        for v in _bits(a_side):
            hit = G.adj_mask(v) & b_side
            if hit:
                return _norm_edge(v, (hit & -hit).bit_length() - 1)
    return None


def _bichromatic_edge(G: Graph, m1: int, c1: int, m2: int, c2: int) -> Optional[Edge]:
    ones1, zeros1 = m1 & c1, m1 & ~c1
    ones2, zeros2 = m2 & c2, m2 & ~c2
    for (a_side, b_side) in ((ones1, zeros2), (zeros1, ones2)):
        for v in _bits(a_side):
            hit = G.adj_mask(v) & b_side
            if hit:
                return _norm_edge(v, (hit & -hit).bit_length() - 1)
    return None


def _spanning_tree_of_disagreement(G: Graph, mask: int, c: int) -> list[Edge]:
    vs = _bits(mask)
    if len(vs) == 1:
        return []
    start = vs[0]
    seen = {start}
    edges = []
    stack = [start]
    while stack:
        v = stack.pop()
        cv = (c >> v) & 1
        for w in _bits(G.adj_mask(v) & mask):
            if w not in seen and ((c >> w) & 1) != cv:
                seen.add(w)
                edges.append(_norm_edge(v, w))
                stack.append(w)
    assert len(seen) == len(vs)
    return edges


def find_signed_minor(
    G: Graph,
    H: Graph,
    sigma_h: Iterable[Edge],
    limit: int = DEFAULT_SIGNED_MINOR_LIMIT,
) -> Optional[SignedMinorModel]:
    """Exhaustive search for a model of (H, sigma_h) inside (G, E(G))."""
    if G.n > limit:
        raise SizeLimitError(f"graph has {G.n} > {limit} vertices")
    sigma = _edge_set(sigma_h)
    for e in sigma:
        if not H.has_edge(*e):
            raise ValueError(f"signature edge {e} not in H")
    h = H.n
    if h == 0:
        return SignedMinorModel({}, {}, {}, {})
    if G.n < h:
        return None
    conn = _connected_subsets(G)
    hedges = [tuple(e) for e in H.edges()]

    # choice[i] = (mask, colormask); assign H vertices 0..h-1 in order
    choice: list[tuple[int, int]] = []

    def compatible(i: int, mask: int, c: int) -> bool:
        for j in range(i):
            mj, cj = choice[j]
            e = _norm_edge(j, i)
            if e in set(hedges):
                if e in sigma:
                    if _mono_edge(G, mj, cj, mask, c) is None:
                        return False
                else:
                    if _bichromatic_edge(G, mj, cj, mask, c) is None:
                        return False
        return True

    def rec(i: int, used: int) -> bool:
        if i == h:
            return True
        for mask in conn:
            if mask & used:
                continue
            for c0 in _valid_colorings(G, mask):
                # flipping every tree at once is a symmetry, so the first
                # tree's coloring can be pinned; all others need both forms
                forms = (c0,) if i == 0 else (c0, mask & ~c0)
                for c in forms:
                    if compatible(i, mask, c):
                        choice.append((mask, c))
                        if rec(i + 1, used | mask):
                            return True
                        choice.pop()
        return False

    if not rec(0, 0):
        return None

    trees = {}
    tree_edges = {}
    tree_colorings = {}
    for u in range(h):
        mask, c = choice[u]
        vs = _bits(mask)
        trees[u] = tuple(vs)
        tree_edges[u] = tuple(_spanning_tree_of_disagreement(G, mask, c))
        tree_colorings[u] = {v: 2 if (c >> v) & 1 else 1 for v in vs}
    witness = {}
    for (u, v) in _edge_set(hedges):
        mu, cu = choice[u]
        mv, cv = choice[v]
        if (u, v) in sigma:
            e = _mono_edge(G, mu, cu, mv, cv)
        else:
            e = _bichromatic_edge(G, mu, cu, mv, cv)
        assert e is not None
        witness[(u, v)] = e
    model = SignedMinorModel(trees, tree_edges, tree_colorings, witness)
    ok, reason = verify_signed_minor_model(G, H, sigma, model)
    assert ok, reason
    return model
