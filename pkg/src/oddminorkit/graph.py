"""Simple undirected graphs and the classical subroutines everything else consumes.

Vertices are dense 0-based integers.  Graphs are immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence


class GraphError(ValueError):
    """Malformed graph input (bad header, loop, parallel edge, bad index)."""


class SizeLimitError(RuntimeError):
    """A desk-scale exhaustive search was asked to run on too large a graph."""


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """A finite simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "_adj", "_adj_mask", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        adj: list[set[int]] = [set() for _ in range(n)]
        es: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"vertex index out of range in edge ({u},{v})")
            if u == v:
                raise GraphError(f"loop at vertex {u} rejected")
            e = _norm_edge(u, v)
            if e in es:
                raise GraphError(f"parallel edge ({u},{v}) rejected")
            es.add(e)
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self._adj = tuple(frozenset(s) for s in adj)
        self._adj_mask = tuple(sum(1 << w for w in s) for s in adj)
        self._edges = tuple(sorted(es))

    # -- basic queries -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._edges)

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def adj_mask(self, v: int) -> int:
        return self._adj_mask[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._edges == other._edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- derived graphs ------------------------------------------------

    def without_vertices(self, X: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on V minus X.

        Returns (graph, old_ids) where old_ids[new] = old vertex id.
        """
        Xs = set(X)
        keep = [v for v in range(self.n) if v not in Xs]
        return self.induced(keep)

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on the given vertices (relabelled densely).

        Returns (graph, old_ids) with old_ids[new] = old.
        """
        old_ids = sorted(set(vertices))
        new_of = {v: i for i, v in enumerate(old_ids)}
        edges = [
            (new_of[u], new_of[v])
            for u, v in self._edges
            if u in new_of and v in new_of
        ]
        return Graph(len(old_ids), edges), old_ids

    def without_edges(self, drop: Iterable[tuple[int, int]]) -> "Graph":
        dropset = {_norm_edge(u, v) for u, v in drop}
        return Graph(self.n, [e for e in self._edges if e not in dropset])

    def subgraph_on(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph keeping original vertex ids (non-members isolated)."""
        vs = set(vertices)
        return Graph(self.n, [e for e in self._edges if e[0] in vs and e[1] in vs])

    # -- connectivity --------------------------------------------------

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            stack = [s]
            seen[s] = True
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self._adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected_subset(self, vs: Sequence[int]) -> bool:
        if not vs:
            return False
        vset = set(vs)
        stack = [next(iter(vset))]
        seen = {stack[0]}
        while stack:
            v = stack.pop()
            for w in self._adj[v]:
                if w in vset and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen == vset


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwoColoring:
    """A coloring of a vertex subset with colors 1 and 2."""

    color: dict[int, int]

    def __post_init__(self):
        for v, c in self.color.items():
            if c not in (1, 2):
                raise ValueError(f"color of {v} must be 1 or 2, got {c}")

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(self.color)

    def __call__(self, v: int) -> int:
        return self.color[v]


@dataclass(frozen=True)
class Separation:
    """A separation (A, B): A union B = V, no edge between A-B and B-A."""

    A: frozenset[int]
    B: frozenset[int]

    @property
    def order(self) -> int:
        return len(self.A & self.B)

    def is_valid(self, G: Graph) -> bool:
        if self.A | self.B != frozenset(G.vertices()):
            return False
        only_a = self.A - self.B
        only_b = self.B - self.A
        return not any(
            (u in only_a and v in only_b) or (u in only_b and v in only_a)
            for u, v in G.edges()
        )


@dataclass(frozen=True)
class Path:
    """A path given by its ordered vertex sequence."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("path vertices must be distinct")

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def parity(self) -> int:
        return self.length % 2

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            _norm_edge(a, b) for a, b in zip(self.vertices, self.vertices[1:])
        )

    def is_path_of(self, G: Graph) -> bool:
        return all(G.has_edge(a, b) for a, b in zip(self.vertices, self.vertices[1:]))


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_GRAPH6_HEADER = b">>graph6<<"


def _parse_graph6(data: bytes) -> Graph:
    s = data.strip()
    if s.startswith(_GRAPH6_HEADER):
        s = s[len(_GRAPH6_HEADER):].strip()
    if not s:
        raise GraphError("empty graph6 input")
    first = s[0] - 63
    if s[0] == 126:  # '~' marks the long forms
        raise GraphError("graph6 long form (n > 62) not supported")
    if not (0 <= first <= 62):
        raise GraphError("malformed graph6 header byte")
    n = first
    body = s[1:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise GraphError(f"graph6 body length {len(body)}, expected {need}")
    bits = []
    for ch in body:
        x = ch - 63
        if not (0 <= x <= 63):
            raise GraphError("invalid graph6 character")
        bits.extend((x >> k) & 1 for k in range(5, -1, -1))
    edges = []
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if bits[idx]:
                edges.append((u, v))
            idx += 1
    return Graph(n, edges)


def _parse_dimacs(data: bytes) -> Graph:
    n = None
    edges = []
    for raw in data.decode("ascii", "replace").splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) < 4 or parts[1] not in ("edge", "col"):
                raise GraphError(f"malformed DIMACS header: {line!r}")
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise GraphError("DIMACS edge before header")
            if len(parts) != 3:
                raise GraphError(f"malformed DIMACS edge line: {line!r}")
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            edges.append((u, v))
        else:
            raise GraphError(f"unrecognized DIMACS line: {line!r}")
    if n is None:
        raise GraphError("missing DIMACS header")
    return Graph(n, edges)


def _parse_edgelist(data: bytes) -> Graph:
    lines = [
        ln.strip()
        for ln in data.decode("ascii", "replace").splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines:
        raise GraphError("edgelist input must start with 'n <count>'")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "n":
        raise GraphError("edgelist input must start with 'n <count>'")
    n = int(head[1])
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"malformed edgelist line: {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return Graph(n, edges)


def parse_graph(text: bytes, format: str) -> Graph:
    """Parse a graph from graph6 (short form), DIMACS, or edgelist bytes."""
    if isinstance(text, str):
        text = text.encode("ascii")
    if format == "graph6":
        return _parse_graph6(text)
    if format == "dimacs":
        return _parse_dimacs(text)
    if format == "edgelist":
        return _parse_edgelist(text)
    raise GraphError(f"unknown format {format!r}")


def to_graph6(G: Graph) -> str:
    """Encode in graph6 short form (n <= 62)."""
    if G.n > 62:
        raise GraphError("graph6 short form supports n <= 62 only")
    bits = []
    for v in range(1, G.n):
        for u in range(v):
            bits.append(1 if G.has_edge(u, v) else 0)
    while len(bits) % 6:
        bits.append(0)
    out = [chr(G.n + 63)]
    for i in range(0, len(bits), 6):
        x = 0
        for b in bits[i : i + 6]:
            x = (x << 1) | b
        out.append(chr(x + 63))
    return "".join(out)


def to_edgelist(G: Graph) -> str:
    lines = [f"n {G.n}"]
    lines.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def to_dimacs(G: Graph) -> str:
    lines = [f"p edge {G.n} {G.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Bipartition
# ---------------------------------------------------------------------------


def bipartition(G: Graph) -> Optional[TwoColoring]:
    """Proper 2-coloring of all vertices, or None if G has an odd cycle.

    Per component the coloring is canonical: the smallest vertex gets color 1.
    """
    color: dict[int, int] = {}
    for s in range(G.n):
        if s in color:
            continue
        color[s] = 1
        queue = [s]
        while queue:
            v = queue.pop()
            for w in G.neighbors(v):
                if w not in color:
                    color[w] = 3 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    return TwoColoring(color)


def find_odd_cycle(G: Graph) -> Optional[Path]:
    """An odd cycle witness (closed walk as v0..vk with v0 adjacent to vk), or None."""
    color: dict[int, int] = {}
    parent: dict[int, Optional[int]] = {}
    for s in range(G.n):
        if s in color:
            continue
        color[s] = 1
        parent[s] = None
        queue = [s]
        while queue:
            v = queue.pop()
            for w in G.neighbors(v):
                if w not in color:
                    color[w] = 3 - color[v]
                    parent[w] = v
                    queue.append(w)
                elif color[w] == color[v]:
                    # walk both parent chains to the common ancestor
                    pv = []
                    x: Optional[int] = v
                    while x is not None:
                        pv.append(x)
                        x = parent[x]
                    pw = []
                    x = w
                    while x is not None:
                        pw.append(x)
                        x = parent[x]
                    sv, sw = set(pv), set(pw)
                    anc = next(x for x in pv if x in sw)
                    cyc = pv[: pv.index(anc) + 1] + list(reversed(pw[: pw.index(anc)]))
                    assert len(cyc) % 2 == 1
                    return Path(tuple(cyc))
    return None


# ---------------------------------------------------------------------------
# Blocks
# ---------------------------------------------------------------------------


def blocks(G: Graph) -> list[frozenset[int]]:
    """Block decomposition: maximal 2-connected blocks, bridges, and
    singleton blocks for isolated vertices.  Sorted for determinism."""
    result: list[frozenset[int]] = []
    visited = [False] * G.n
    disc = [0] * G.n
    low = [0] * G.n
    timer = itertools.count(1)
    for root in range(G.n):
        if visited[root]:
            continue
        if G.degree(root) == 0:
            visited[root] = True
            result.append(frozenset([root]))
            continue
        # iterative DFS with an edge stack
        estack: list[tuple[int, int]] = []
        stack: list[tuple[int, Optional[int], Iterator[int]]] = [
            (root, None, iter(sorted(G.neighbors(root))))
        ]
        visited[root] = True
        disc[root] = low[root] = next(timer)
        while stack:
            v, par, it = stack[-1]
            advanced = False
            for w in it:
                if not visited[w]:
                    estack.append((v, w))
                    visited[w] = True
                    disc[w] = low[w] = next(timer)
                    stack.append((w, v, iter(sorted(G.neighbors(w)))))
                    advanced = True
                    break
                elif w != par and disc[w] < disc[v]:
                    estack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                pv = stack[-1][0]
                low[pv] = min(low[pv], low[v])
                if low[v] >= disc[pv]:
                    comp = set()
                    while estack and estack[-1] != (pv, v):
                        a, b = estack.pop()
                        comp.update((a, b))
                    if estack:
                        a, b = estack.pop()
                        comp.update((a, b))
                    if comp:
                        result.append(frozenset(comp))
    return sorted(result, key=lambda b: (min(b), len(b), sorted(b)))


def block_cut_tree_is_tree(G: Graph) -> bool:
    """Sanity check: the block-cutpoint incidence structure is a forest."""
    bls = blocks(G)
    cut_vertices = set()
    count: dict[int, int] = {}
    for b in bls:
        for v in b:
            count[v] = count.get(v, 0) + 1
    cut_vertices = {v for v, c in count.items() if c > 1}
    # nodes: blocks + cut vertices; edges: incidences; a forest satisfies
    # V - E = number of trees = number of components of G
    nodes = len(bls) + len(cut_vertices)
    edges = sum(1 for b in bls for v in b if v in cut_vertices)
    return nodes - edges == len(G.components())


# ---------------------------------------------------------------------------
# Small separations
# ---------------------------------------------------------------------------


def find_small_separation(
    G: Graph, Z: Iterable[int], max_order: int
) -> Optional[Separation]:
    """A separation (A, B) of order <= max_order leaving a vertex outside Z
    strictly on each side, minimizing order (tie-break: lexicographically
    least A cap B).  None if no such separation exists."""
    Zs = set(Z)
    verts = list(range(G.n))
    for k in range(0, max_order + 1):
        for cut in itertools.combinations(verts, k):
            cutset = set(cut)
            rest, old_ids = G.without_vertices(cutset)
            comps = [[old_ids[v] for v in comp] for comp in rest.components()]
            good = [c for c in comps if any(v not in Zs for v in c)]
            if len(good) >= 2:
                side_a = set(good[0]) | cutset
                side_b = set(cutset)
                for c in comps:
                    if c is not good[0]:
                        side_b.update(c)
                return Separation(frozenset(side_a), frozenset(side_b))
    return None


# ---------------------------------------------------------------------------
# Vertex-disjoint paths (Menger)
# ---------------------------------------------------------------------------


def disjoint_paths(
    G: Graph, A: Iterable[int], B: Iterable[int], k: int
) -> Optional[list[Path]]:
    """k A-B paths, pairwise disjoint outside A and B, or None.

    Vertices of A and B may be shared as path endpoints (the two arcs of a
    cycle between opposite vertices count as two paths); every other vertex
    appears in at most one path.  None iff some set of < k vertices outside
    A and B meets every A-B path, per Menger.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    shared = sorted(set(A) & set(B))
    trivial = [Path((v,)) for v in shared[:k]]
    if len(trivial) >= k:
        return trivial
    k = k - len(trivial)
    if shared:
        Gk, old_ids = G.without_vertices(shared)
        rename = {old: new for new, old in enumerate(old_ids)}
        inner = disjoint_paths(
            Gk,
            [rename[v] for v in set(A) - set(shared)],
            [rename[v] for v in set(B) - set(shared)],
            k,
        )
        if inner is None:
            return None
        return trivial + [
            Path(tuple(old_ids[v] for v in p.vertices)) for p in inner
        ]
    As, Bs = sorted(set(A)), sorted(set(B))
    if not As or not Bs:
        return None
    n = G.n
    SRC, SNK = 2 * n, 2 * n + 1
    terminal = set(As) | set(Bs)
    cap: dict[tuple[int, int], int] = {}
    adj: dict[int, list[int]] = {i: [] for i in range(2 * n + 2)}

    def arc(u: int, v: int, c: int) -> None:
        if (u, v) not in cap:
            cap[(u, v)] = 0
            adj[u].append(v)
        if (v, u) not in cap:
            cap[(v, u)] = 0
            adj[v].append(u)
        cap[(u, v)] += c

    for v in range(n):
        arc(2 * v, 2 * v + 1, k if v in terminal else 1)
    for u, v in G.edges():
        arc(2 * u + 1, 2 * v, 1)
        arc(2 * v + 1, 2 * u, 1)
    for a in As:
        arc(SRC, 2 * a, k)
    for b in Bs:
        arc(2 * b + 1, SNK, k)

    orig = dict(cap)
    flow = 0
    while flow < k:
        prev = {SRC: SRC}
        queue = [SRC]
        while queue and SNK not in prev:
            u = queue.pop(0)
            for v in adj[u]:
                if v not in prev and cap[(u, v)] > 0:
                    prev[v] = u
                    queue.append(v)
        if SNK not in prev:
            return None
        v = SNK
        while v != SRC:
            u = prev[v]
            cap[(u, v)] -= 1
            cap[(v, u)] += 1
            v = u
        flow += 1

    # net flow per arc; opposite flows on an edge cancel
    f: dict[tuple[int, int], int] = {}
    for e, c0 in orig.items():
        used = c0 - cap[e]
        if used > 0:
            f[e] = used
    for u, v in G.edges():
        a, b = (2 * u + 1, 2 * v), (2 * v + 1, 2 * u)
        x = min(f.get(a, 0), f.get(b, 0))
        if x:
            f[a] -= x
            f[b] -= x

    paths: list[Path] = []
    for _ in range(k):
        # walk one unit of flow from SRC to SNK
        a = next(x for x in As if f.get((SRC, 2 * x), 0) > 0)
        f[(SRC, 2 * a)] -= 1
        seq = [a]
        v = a
        while True:
            f[(2 * v, 2 * v + 1)] -= 1
            if f.get((2 * v + 1, SNK), 0) > 0:
                f[(2 * v + 1, SNK)] -= 1
                break
            w = next(x for x in G.neighbors(v) if f.get((2 * v + 1, 2 * x), 0) > 0)
            f[(2 * v + 1, 2 * w)] -= 1
            seq.append(w)
            v = w
        if seq[-1] not in Bs:
            raise AssertionError("flow decomposition ended outside B")
        paths.append(Path(tuple(seq)))
    return paths
