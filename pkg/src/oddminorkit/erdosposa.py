"""Packing/covering dichotomies for odd S-paths and parity-breaking C-paths.

An S-path joins two distinct vertices of S; its internal vertices are
unrestricted. Either `l` pairwise vertex-disjoint qualifying paths exist, or
a set of at most 2l-2 vertices meets them all.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .graph import Graph, Path, SizeLimitError
from .oddminor import ParityQuery, default_limit, is_parity_breaking
from .subdivision import SubdivisionEmbedding, verify_subdivision

DEFAULT_EP_LIMIT = 20


@dataclass(frozen=True)
class PackingCoverResult:
    """Exactly one of packing / cover is set."""

    packing: Optional[tuple[Path, ...]] = None
    cover: Optional[frozenset[int]] = None

    def __post_init__(self):
        if (self.packing is None) == (self.cover is None):
            raise ValueError("exactly one of packing/cover must be given")

    @property
    def is_packing(self) -> bool:
        return self.packing is not None


def _restricted(G: Graph, removed: Iterable[int]) -> Graph:
    keep = set(G.vertices()) - set(removed)
    return G.subgraph_on(keep)


def _parity_reachable(G: Graph, start: int, avoid: frozenset[int]) -> dict:
    """Walk parities realizable from start in G minus avoid: {(v, p), ...}."""
    seen = {(start, 0)}
    queue = [(start, 0)]
    while queue:
        v, p = queue.pop()
        for w in G.neighbors(v):
            if w in avoid:
                continue
            st = (w, p ^ 1)
            if st not in seen:
                seen.add(st)
                queue.append(st)
    return seen


def find_odd_s_path(G: Graph, S: Iterable[int]) -> Optional[Path]:
    """Some odd-length S-path, or None after exhaustive search.

    Depth-first over simple paths, pruned by walk-parity reachability (a walk
    of the right parity to an eligible endpoint is necessary for a path).
    """
    Sset = frozenset(v for v in S if 0 <= v < G.n)
    for s in sorted(Sset):
        targets = Sset - {s}
        if not targets:
            continue
        # quick necessary condition on walks
        reach = _parity_reachable(G, s, frozenset())
        if not any((t, 1) in reach for t in targets):
            continue

        found: Optional[Path] = None

        def dfs(v: int, walk: tuple[int, ...], used: frozenset[int]) -> Optional[Path]:
            for w in G.neighbors(v):
                if w in used:
                    continue
                plen = len(walk) % 2  # parity of edge count after adding w
                if w in targets and plen == 1:
                    return Path(walk + (w,))
                used2 = used | {w}
                reach2 = _parity_reachable(G, w, used2 - {w})
                need = plen ^ 1
                if any((t, need) in reach2 for t in targets - used2):
                    got = dfs(w, walk + (w,), used2)
                    if got is not None:
                        return got
            return None

        found = dfs(s, (s,), frozenset({s}))
        if found is not None:
            return found
    return None


def _odd_s_paths(G: Graph, S: frozenset[int]) -> Iterator[Path]:
    """All odd S-paths, shortest first (iterative deepening on exact length)."""
    verts = sorted(S)
    for length in range(1, G.n, 2):
        for s in verts:
            stack: list[tuple[int, tuple[int, ...]]] = [(s, (s,))]
            while stack:
                v, walk = stack.pop()
                d = len(walk) - 1
                if d == length:
                    if v in S and v > s:
                        yield Path(walk)
                    continue
                for w in G.neighbors(v):
                    if w not in walk:
                        stack.append((w, walk + (w,)))


def _pack_odd_paths(G: Graph, S: frozenset[int], k: int) -> Optional[list[Path]]:
    if k == 0:
        return []
    if find_odd_s_path(G, S) is None:
        return None
    for p in _odd_s_paths(G, S):
        G2 = _restricted(G, p.vertices)
        rest = _pack_odd_paths(G2, S - set(p.vertices), k - 1)
        if rest is not None:
            return [p] + rest
    return None


def odd_s_paths_dichotomy(
    G: Graph,
    S: Iterable[int],
    l: int,
    limit: Optional[int] = None,
    cover_candidates: Optional[Iterable[int]] = None,
) -> PackingCoverResult:
    """Either l vertex-disjoint odd S-paths or a cover of size <= 2l-2.

    Packing is attempted first; covers are searched by increasing size in
    lexicographic order, so the result is deterministic. cover_candidates
    optionally restricts which vertices a cover may use (the caller must know
    this preserves completeness).
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    lim = default_limit(DEFAULT_EP_LIMIT) if limit is None else limit
    if G.n > lim:
        raise SizeLimitError(f"graph has {G.n} > {lim} vertices")
    Sset = frozenset(S)
    packed = _pack_odd_paths(G, Sset, l)
    if packed is not None:
        return PackingCoverResult(packing=tuple(packed))
    cands = sorted(set(G.vertices()) if cover_candidates is None else set(cover_candidates))
    for size in range(0, 2 * l - 1):
        for X in itertools.combinations(cands, size):
            G2 = _restricted(G, X)
            if find_odd_s_path(G2, Sset - set(X)) is None:
                return PackingCoverResult(cover=frozenset(X))
    raise AssertionError(
        "dichotomy failed: no packing and no small cover (implementation bug)"
    )


# ---------------------------------------------------------------------------
# Parity-breaking C-paths via virtual subdivision
# ---------------------------------------------------------------------------


def _virtual_subdivide(
    G: Graph, anchors: frozenset[int]
) -> tuple[Graph, dict[int, int]]:
    """Subdivide, once per incidence, every edge incident with an anchor.

    Returns the new graph (original ids preserved, virtual ids >= G.n) and a
    map from each virtual vertex to the anchor that created it.
    """
    edges: list[tuple[int, int]] = []
    anchor_of: dict[int, int] = {}
    nxt = G.n
    for u, v in G.edges():
        chain = [u]
        if u in anchors:
            anchor_of[nxt] = u
            chain.append(nxt)
            nxt += 1
        if v in anchors:
            anchor_of[nxt] = v
            chain.append(nxt)
            nxt += 1
        chain.append(v)
        edges.extend(zip(chain, chain[1:]))
    return Graph(nxt, edges), anchor_of


def parity_breaking_dichotomy(
    G: Graph, emb: SubdivisionEmbedding, l: int, limit: Optional[int] = None
) -> PackingCoverResult:
    """Either l disjoint parity-breaking C-paths (with respect to the union
    of emb) or a cover of size <= 2l-2 killing all of them.

    Reduction: every G-edge incident with a branch vertex on the L side of
    the union's bipartition is subdivided once per such incidence; odd
    C-paths of the subdivided graph are exactly the parity-breaking C-paths
    of G. Covers are searched over real vertices only, which is complete
    because any path through a virtual vertex also passes its anchor.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    ok, reason = verify_subdivision(G, emb, require_bipartite=True)
    if not ok:
        raise ValueError(f"invalid embedding: {reason}")
    lim = default_limit(DEFAULT_EP_LIMIT) if limit is None else limit
    if G.n > lim:
        raise SizeLimitError(f"graph has {G.n} > {lim} vertices")
    beta = emb.host_coloring(G.n)
    assert beta is not None
    C = emb.C
    anchors = frozenset(v for v in C if beta(v) == 1)
    G2, _anchor_of = _virtual_subdivide(G, anchors)
    res = odd_s_paths_dichotomy(
        G2, C, l, limit=G2.n, cover_candidates=G.vertices()
    )
    if res.is_packing:
        mapped = []
        for p in res.packing:
            real = tuple(v for v in p.vertices if v < G.n)
            q = Path(real)
            assert q.is_path_of(G)
            assert is_parity_breaking(ParityQuery(q, beta))
            mapped.append(q)
        return PackingCoverResult(packing=tuple(mapped))
    assert all(v < G.n for v in res.cover)
    return res
