"""Improper coloring pipeline: family classes, heuristic base colorers, the
precoloring-extension recursion, defective/clustered entry points, and the
average-degree bound calculators."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

from .graph import Graph
from .oddminor import OddMinorModel, relabel_model
from .structure import Decomposition, structure_theorem
from .subdivision import find_bipartite_join_subdivision, relabel_embedding


class OddMinorFoundError(Exception):
    """The input turned out to contain an odd clique minor; carries proof."""

    def __init__(self, t: int, model: OddMinorModel):
        super().__init__(f"odd K_{t} minor found")
        self.t = t
        self.model = model


@dataclass(frozen=True)
class ColoringAssignment:
    colors: dict[int, int]
    palette_size: int

    def __call__(self, v: int) -> int:
        return self.colors[v]

    def classes(self, G: Graph) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v in G.vertices():
            out.setdefault(self.colors[v], []).append(v)
        return out


# ---------------------------------------------------------------------------
# Family classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundedDegree:
    d: int

    def accepts(self, G: Graph) -> bool:
        return all(G.degree(v) <= self.d for v in G.vertices())

    def contains_all_small(self, k: int) -> bool:
        return self.d >= k - 1


@dataclass(frozen=True)
class BoundedComponent:
    M: int

    def accepts(self, G: Graph) -> bool:
        return all(len(c) <= self.M for c in G.components())

    def contains_all_small(self, k: int) -> bool:
        return self.M >= k


@dataclass(frozen=True)
class MaxOf:
    """Accepts a graph when each component is accepted by some member;
    componentwise acceptance keeps the class closed under disjoint union."""

    members: tuple

    def accepts(self, G: Graph) -> bool:
        for comp in G.components():
            sub, _ = G.induced(comp)
            if not any(m.accepts(sub) for m in self.members):
                return False
        return True

    def contains_all_small(self, k: int) -> bool:
        return any(m.contains_all_small(k) for m in self.members)


FamilyClass = Union[BoundedDegree, BoundedComponent, MaxOf]


def verify_coloring(G: Graph, c: ColoringAssignment, family) -> bool:
    if set(c.colors) != set(G.vertices()):
        raise ValueError("coloring must be total on the vertex set")
    if any(not 1 <= col <= c.palette_size for col in c.colors.values()):
        return False
    for _, members in c.classes(G).items():
        sub, _ = G.induced(members)
        if not family.accepts(sub):
            return False
    return True


# ---------------------------------------------------------------------------
# Base colorers
# ---------------------------------------------------------------------------


def _degeneracy_order(G: Graph) -> list[int]:
    deg = {v: G.degree(v) for v in G.vertices()}
    alive = set(G.vertices())
    order = []
    while alive:
        v = min(alive, key=lambda u: (deg[u], u))
        order.append(v)
        alive.remove(v)
        for w in G.neighbors(v):
            if w in alive:
                deg[w] -= 1
    return order


def _achieved_defect(G: Graph, colors: dict[int, int]) -> int:
    worst = 0
    for v in G.vertices():
        same = sum(1 for w in G.neighbors(v) if colors[w] == colors[v])
        worst = max(worst, same)
    return worst


def _achieved_cluster(G: Graph, colors: dict[int, int]) -> int:
    worst = 0
    by_color: dict[int, list[int]] = {}
    for v, c in colors.items():
        by_color.setdefault(c, []).append(v)
    for members in by_color.values():
        sub, _ = G.induced(members)
        worst = max(worst, max(len(c) for c in sub.components()))
    return worst


def base_defective_coloring(
    G: Graph, s: int, t: int
) -> tuple[ColoringAssignment, int]:
    """Greedy low-defect coloring with s colors (1 color if edgeless).

    Vertices are colored in reverse degeneracy order, each taking the color
    least used among already-colored neighbors; the achieved defect is
    measured, not assumed.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    if G.m == 0:
        return ColoringAssignment({v: 1 for v in G.vertices()}, 1), 0
    colors: dict[int, int] = {}
    for v in reversed(_degeneracy_order(G)):
        counts = [0] * (s + 1)
        for w in G.neighbors(v):
            if w in colors:
                counts[colors[w]] += 1
        colors[v] = min(range(1, s + 1), key=lambda c: (counts[c], c))
    c = ColoringAssignment(colors, s)
    return c, _achieved_defect(G, colors)


def base_clustered_coloring(
    G: Graph, delta: int, budget: int = 3
) -> tuple[ColoringAssignment, int]:
    """Greedy small-cluster coloring with at most `budget` colors.

    Requires max degree <= delta. Each vertex takes the color minimizing the
    size of the monochromatic component it would join; the achieved cluster
    size is measured afterwards.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if any(G.degree(v) > delta for v in G.vertices()):
        raise ValueError(f"graph has a vertex of degree > {delta}")
    if G.m == 0:
        return ColoringAssignment({v: 1 for v in G.vertices()}, 1), (
            1 if G.n else 0
        )
    colors: dict[int, int] = {}

    def joined_size(v: int, c: int) -> int:
        # size of the same-colored component v would join, via flood fill
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for w in G.neighbors(x):
                if w not in seen and colors.get(w) == c:
                    seen.add(w)
                    stack.append(w)
        return len(seen)

    for v in reversed(_degeneracy_order(G)):
        colors[v] = min(range(1, budget + 1), key=lambda c: (joined_size(v, c), c))
    c = ColoringAssignment(colors, budget)
    return c, _achieved_cluster(G, colors)


# ---------------------------------------------------------------------------
# Precoloring extension
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrecoloringInstance:
    G: Graph
    Z: frozenset[int]
    f: dict[int, int]
    t: int
    family: FamilyClass


BaseColorer = Callable[[Graph], ColoringAssignment]


def _check_contract(
    G: Graph, Z: frozenset[int], f: dict[int, int], g: dict[int, int], family
) -> None:
    for z in Z:
        assert g[z] == f[z], "precolored vertex changed color"
    for v in Z:
        for w in G.neighbors(v):
            if w not in Z:
                assert g[v] != g[w], "precolored vertex matches an outside neighbor"


def precolor_extend(
    inst: PrecoloringInstance,
    d: int,
    base: BaseColorer,
    trace: Optional[list] = None,
    limit: Optional[int] = None,
) -> ColoringAssignment:
    """Extend the precoloring f on Z to all of G with palette d + 4t - 7.

    The recursion follows four reductions: drop edges inside Z; split along
    a small separation; fall back to the base colorer when no bipartite
    K_{2t-2} + I_t subdivision survives outside Z; otherwise color directly
    through the apex + bipartite-block decomposition. Discovery of an odd
    K_t minor aborts with OddMinorFoundError carrying the certificate.
    """
    t = inst.t
    if t < 2:
        raise ValueError("t must be >= 2")
    k = d + 4 * t - 7
    if len(inst.Z) > 4 * t - 7:
        raise ValueError("|Z| exceeds 4t-7")
    if set(inst.f) != set(inst.Z):
        raise ValueError("f must be defined exactly on Z")
    if any(not 1 <= c <= k for c in inst.f.values()):
        raise ValueError("precolor outside the palette")
    if not inst.family.contains_all_small(4 * t - 7):
        raise ValueError("family must contain every graph on <= 4t-7 vertices")
    colors = _extend(inst.G, inst.Z, dict(inst.f), t, d, inst.family, base,
                     trace if trace is not None else [], limit)
    g = ColoringAssignment(colors, k)
    assert verify_coloring(inst.G, g, inst.family), "class outside family"
    _check_contract(inst.G, inst.Z, inst.f, colors, inst.family)
    return g


def _extend(
    G: Graph, Z: frozenset[int], f: dict[int, int], t: int, d: int,
    family, base: BaseColorer, trace: list, limit: Optional[int],
) -> dict[int, int]:
    from .graph import find_small_separation

    k = d + 4 * t - 7

    if G.n <= 4 * t - 7:
        trace.append(f"base:|V|={G.n}")
        g = dict(f)
        free = iter(c for c in range(1, k + 1) if c not in set(f.values()))
        for v in G.vertices():
            if v not in Z:
                g[v] = next(free)
        return g

    zz = [(u, v) for (u, v) in G.edges() if u in Z and v in Z]
    if zz:
        trace.append(f"stabilize:{len(zz)}")
        return _extend(G.without_edges(zz), Z, f, t, d, family, base, trace, limit)

    sep = find_small_separation(G, Z, 2 * t - 3)
    if sep is not None:
        A, B = set(sep.A), set(sep.B)
        if len((B - A) & Z) > len(Z) // 2:
            A, B = B, A
        trace.append(f"split:order={len(A & B)}")
        GA, ids_a = G.induced(sorted(A | Z))
        back_a = {old: new for new, old in enumerate(ids_a)}
        fa = {back_a[z]: f[z] for z in Z}
        try:
            ca = _extend(GA, frozenset(back_a[z] for z in Z), fa, t, d,
                         family, base, trace, limit)
        except OddMinorFoundError as e:
            raise OddMinorFoundError(t, relabel_model(e.model, ids_a)) from None
        g1 = {ids_a[v]: c for v, c in ca.items()}
        Zp = (A & B) | (B & Z)
        assert len(Zp) <= 4 * t - 7
        GB, ids_b = G.induced(sorted(B))
        back_b = {old: new for new, old in enumerate(ids_b)}
        fb = {back_b[z]: g1[z] for z in Zp}
        try:
            cb = _extend(GB, frozenset(back_b[z] for z in Zp), fb, t, d,
                         family, base, trace, limit)
        except OddMinorFoundError as e:
            raise OddMinorFoundError(t, relabel_model(e.model, ids_b)) from None
        g2 = {ids_b[v]: c for v, c in cb.items()}
        for z in Zp:
            assert g1[z] == g2[z], "split colorings disagree on the interface"
        g = dict(g2)
        g.update(g1)
        return g

    rest = sorted(set(G.vertices()) - Z)
    Gz, ids_z = G.induced(rest)
    emb = find_bipartite_join_subdivision(
        Gz, 2 * t - 2, t, limit=max(Gz.n, 30) if limit is None else limit
    )

    if emb is None:
        trace.append("base-colorer")
        c0 = base(Gz)
        assert c0.palette_size <= d, "base colorer exceeded its palette"
        banned = set(f.values())
        fresh = [c for c in range(1, k + 1) if c not in banned]
        remap = {old: fresh[old - 1] for old in range(1, c0.palette_size + 1)}
        g = dict(f)
        for v, c in c0.colors.items():
            g[ids_z[v]] = remap[c]
        return g

    trace.append("decompose")
    out = structure_theorem(
        G, t, emb=relabel_embedding(emb, ids_z),
        limit=max(G.n * 4, 30) if limit is None else limit,
    )
    if isinstance(out, OddMinorModel):
        raise OddMinorFoundError(t, out)
    dec: Decomposition = out
    X, U = set(dec.X), set(dec.U)
    outside = set(G.vertices()) - X - U
    for comp in G.subgraph_on(outside).components():
        real = [v for v in comp if v in outside]
        assert set(real) <= Z, "stray component outside apex set and block"
    avail = [c for c in range(1, 4 * t - 4 + 1) if c not in set(f.values())]
    assert len(avail) >= 3, "not enough fresh colors"
    c1, c2, c3 = avail[:3]
    from .graph import bipartition

    UZ = U - Z
    side = bipartition(G.subgraph_on(UZ))
    assert side is not None
    g = dict(f)
    for v in X - Z:
        g[v] = c1
    for v in UZ:
        g[v] = c2 if side(v) == 1 else c3
    return g


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------


def _maybe_precheck(G: Graph, t: int, precheck: Optional[bool]) -> None:
    from .oddminor import find_odd_clique_minor

    if precheck is None:
        precheck = G.n <= 10
    if precheck:
        model = find_odd_clique_minor(G, t, limit=G.n)
        if model is not None:
            raise OddMinorFoundError(t, model)


def color_defective(
    G: Graph, t: int, precheck: Optional[bool] = None,
    trace: Optional[list] = None,
) -> tuple[ColoringAssignment, int]:
    """Color with at most 6t-9 colors; returns the coloring and the achieved
    defect. Raises OddMinorFoundError with a certificate when an odd K_t
    minor surfaces (always when the upfront check runs; the check defaults
    to on for graphs with at most 10 vertices)."""
    if t < 2:
        raise ValueError("t must be >= 2")
    _maybe_precheck(G, t, precheck)
    s = 2 * t - 2

    def base(H: Graph) -> ColoringAssignment:
        return base_defective_coloring(H, s, t)[0]

    inst = PrecoloringInstance(
        G, frozenset(), {}, t, BoundedDegree(max(G.n, 4 * t - 8))
    )
    g = precolor_extend(inst, s, base, trace=trace)
    assert g.palette_size == 6 * t - 9
    defect = _achieved_defect(G, g.colors)
    assert verify_coloring(G, g, BoundedDegree(max(defect, 4 * t - 8)))
    return g, defect


def color_clustered(
    G: Graph, t: int, precheck: Optional[bool] = None,
    trace: Optional[list] = None,
) -> tuple[ColoringAssignment, int]:
    """Color with at most 10t-13 colors; returns the coloring and the
    achieved cluster size (largest monochromatic component)."""
    if t < 2:
        raise ValueError("t must be >= 2")
    _maybe_precheck(G, t, precheck)
    s = 2 * t - 2

    def base(H: Graph) -> ColoringAssignment:
        c1, _ = base_defective_coloring(H, s, t)
        combined: dict[int, int] = {}
        for col, members in c1.classes(H).items():
            sub, ids = H.induced(members)
            delta = max((sub.degree(v) for v in sub.vertices()), default=0)
            c2, _ = base_clustered_coloring(sub, delta, 3)
            for v in sub.vertices():
                combined[ids[v]] = (col - 1) * 3 + c2(v)
        return ColoringAssignment(combined, 3 * c1.palette_size)

    inst = PrecoloringInstance(
        G, frozenset(), {}, t, BoundedComponent(max(G.n, 4 * t - 7))
    )
    g = precolor_extend(inst, 3 * s, base, trace=trace)
    assert g.palette_size == 10 * t - 13
    cluster = _achieved_cluster(G, g.colors)
    assert verify_coloring(G, g, BoundedComponent(max(cluster, 4 * t - 7)))
    return g, cluster


# ---------------------------------------------------------------------------
# Bound calculators
# ---------------------------------------------------------------------------


def bound_M(s: int, t: int, d1: float, d2: float) -> float:
    """Piecewise defect bound for graphs with no bipartite K_s + I_t
    subdivision, driven by the two average-degree thresholds d1, d2."""
    if s < 1 or t < 1:
        raise ValueError("s and t must be >= 1")
    if d1 < 0 or d2 < 0:
        raise ValueError("thresholds must be nonnegative")
    if s == 1:
        return float(t - 1)
    if s == 2:
        return d2 * t * (d1 - 2) / 2 + d1
    return (d1 - s) * (math.comb(int(d2), s - 1) * (t - 1) + d2 / 2) + d1


def bound_N(s: int, t: int, c0: float = 10.0) -> float:
    """bound_M specialized at the classical average-degree thresholds
    2*c0*(s+t)^2 and c0*(s+t)^2."""
    if c0 <= 0:
        raise ValueError("c0 must be positive")
    p2 = (s + t) ** 2
    return bound_M(s, t, 2 * c0 * p2, c0 * p2)
