"""Versioned JSON certificates: construction, strict parsing, verification.

Every certificate carries a content hash of the graph it talks about, so a
certificate can never silently verify against the wrong graph. Serialization
is canonical (sorted keys, compact separators), which makes re-serialization
byte-identical.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Iterable

from .coloring import BoundedComponent, BoundedDegree, ColoringAssignment, verify_coloring
from .erdosposa import find_odd_s_path
from .graph import Graph, Path, TwoColoring, bipartition, blocks, _norm_edge
from .oddminor import OddMinorModel, verify_odd_minor_model
from .signed import SignedMinorModel, verify_signed_minor_model
from .structure import Decomposition
from .subdivision import SubdivisionEmbedding, verify_subdivision

SCHEMA = "odd-minor-kit/1"

KINDS = (
    "odd-minor-model",
    "signed-minor-model",
    "subdivision",
    "packing",
    "cover",
    "decomposition",
    "coloring",
)

_PAYLOAD_KEYS = {
    "odd-minor-model": {"pattern_n", "pattern_edges", "trees", "tree_edges", "alpha", "connectors"},
    "signed-minor-model": {
        "pattern_n", "pattern_edges", "pattern_signature",
        "trees", "tree_edges", "tree_colorings", "edge_witness",
    },
    "subdivision": {"s", "t", "branch", "linking", "bipartite"},
    "packing": {"S", "l", "paths"},
    "cover": {"S", "l", "cover"},
    "decomposition": {"t", "X", "U", "retained_branch", "reduced"},
    "coloring": {"mode", "t", "bound", "palette", "value", "colors"},
}


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class Certificate:
    kind: str
    payload: dict
    graph_hash: str


def graph_hash(G: Graph) -> str:
    body = f"{G.n}|" + ",".join(f"{u}-{v}" for u, v in sorted(G.edges()))
    return hashlib.sha256(body.encode()).hexdigest()


def serialize_certificate(cert: Certificate) -> str:
    doc = {
        "schema": SCHEMA,
        "kind": cert.kind,
        "graph_hash": cert.graph_hash,
        "payload": cert.payload,
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def parse_certificate(text: str) -> Certificate:
    """Strict parse: schema version pinned, unknown fields rejected."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise CertificateError(f"not valid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise CertificateError("top level must be an object")
    expected = {"schema", "kind", "graph_hash", "payload"}
    if set(doc) != expected:
        raise CertificateError(
            f"unexpected top-level fields: {sorted(set(doc) ^ expected)}"
        )
    if doc["schema"] != SCHEMA:
        raise CertificateError(f"unsupported schema {doc['schema']!r}")
    kind = doc["kind"]
    if kind not in KINDS:
        raise CertificateError(f"unknown certificate kind {kind!r}")
    payload = doc["payload"]
    if not isinstance(payload, dict) or set(payload) != _PAYLOAD_KEYS[kind]:
        raise CertificateError(f"malformed payload for kind {kind!r}")
    if not isinstance(doc["graph_hash"], str):
        raise CertificateError("graph_hash must be a string")
    return Certificate(kind, payload, doc["graph_hash"])


# ---------------------------------------------------------------------------
# Constructors (object -> payload)
# ---------------------------------------------------------------------------


def _edges_out(edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    return [list(_norm_edge(u, v)) for u, v in sorted(_norm_edge(u, v) for u, v in edges)]


def certify_odd_minor_model(G: Graph, H: Graph, model: OddMinorModel) -> Certificate:
    connectors = []
    for (u, v), c in sorted(model.connectors.items()):
        if isinstance(c, Path):
            connectors.append({"edge": [u, v], "form": "path", "vertices": list(c.vertices)})
        else:
            connectors.append({"edge": [u, v], "form": "edge", "vertices": list(c)})
    payload = {
        "pattern_n": H.n,
        "pattern_edges": _edges_out(H.edges()),
        "trees": {str(u): list(vs) for u, vs in model.trees.items()},
        "tree_edges": {str(u): _edges_out(es) for u, es in model.tree_edges.items()},
        "alpha": {str(v): c for v, c in model.alpha.color.items()},
        "connectors": connectors,
    }
    return Certificate("odd-minor-model", payload, graph_hash(G))


def certify_signed_minor_model(
    G: Graph, H: Graph, sigma_h: Iterable[tuple[int, int]], model: SignedMinorModel
) -> Certificate:
    payload = {
        "pattern_n": H.n,
        "pattern_edges": _edges_out(H.edges()),
        "pattern_signature": _edges_out(sigma_h),
        "trees": {str(u): list(vs) for u, vs in model.trees.items()},
        "tree_edges": {str(u): _edges_out(es) for u, es in model.tree_edges.items()},
        "tree_colorings": {
            str(u): {str(v): c for v, c in col.items()}
            for u, col in model.tree_colorings.items()
        },
        "edge_witness": [
            {"edge": [u, v], "witness": list(model.edge_witness[(u, v)])}
            for u, v in sorted(model.edge_witness)
        ],
    }
    return Certificate("signed-minor-model", payload, graph_hash(G))


def certify_subdivision(
    G: Graph, emb: SubdivisionEmbedding, bipartite: bool = True
) -> Certificate:
    payload = {
        "s": emb.s,
        "t": emb.t,
        "branch": {str(p): g for p, g in emb.branch.items()},
        "linking": [
            {"edge": [u, v], "path": list(emb.linking[(u, v)].vertices)}
            for u, v in sorted(emb.linking)
        ],
        "bipartite": bipartite,
    }
    return Certificate("subdivision", payload, graph_hash(G))


def certify_packing(
    G: Graph, S: Iterable[int], l: int, paths: Iterable[Path]
) -> Certificate:
    payload = {
        "S": sorted(set(S)),
        "l": l,
        "paths": [list(p.vertices) for p in paths],
    }
    return Certificate("packing", payload, graph_hash(G))


def certify_cover(G: Graph, S: Iterable[int], l: int, cover: Iterable[int]) -> Certificate:
    payload = {"S": sorted(set(S)), "l": l, "cover": sorted(set(cover))}
    return Certificate("cover", payload, graph_hash(G))


def certify_decomposition(G: Graph, t: int, dec: Decomposition) -> Certificate:
    reduced = None
    if dec.reduced is not None:
        reduced = certify_subdivision(G, dec.reduced).payload
    payload = {
        "t": t,
        "X": sorted(dec.X),
        "U": sorted(dec.U),
        "retained_branch": sorted(dec.retained_branch),
        "reduced": reduced,
    }
    return Certificate("decomposition", payload, graph_hash(G))


def certify_coloring(
    G: Graph, c: ColoringAssignment, mode: str, t: int, bound: int, value: int
) -> Certificate:
    """value is the achieved defect (mode defective) or cluster size."""
    if mode not in ("defective", "clustered"):
        raise ValueError("mode must be 'defective' or 'clustered'")
    payload = {
        "mode": mode,
        "t": t,
        "bound": bound,
        "palette": c.palette_size,
        "value": value,
        "colors": {str(v): c.colors[v] for v in sorted(c.colors)},
    }
    return Certificate("coloring", payload, graph_hash(G))


# ---------------------------------------------------------------------------
# Payload -> object converters
# ---------------------------------------------------------------------------


def _pattern_of(payload: dict) -> Graph:
    return Graph(payload["pattern_n"], [tuple(e) for e in payload["pattern_edges"]])


def odd_minor_model_of(payload: dict) -> tuple[Graph, OddMinorModel]:
    H = _pattern_of(payload)
    connectors = {}
    for c in payload["connectors"]:
        e = _norm_edge(*c["edge"])
        vs = c["vertices"]
        connectors[e] = Path(tuple(vs)) if c["form"] == "path" else (vs[0], vs[1])
    model = OddMinorModel(
        trees={int(u): tuple(vs) for u, vs in payload["trees"].items()},
        tree_edges={
            int(u): tuple(tuple(e) for e in es)
            for u, es in payload["tree_edges"].items()
        },
        alpha=TwoColoring({int(v): c for v, c in payload["alpha"].items()}),
        connectors=connectors,
    )
    return H, model


def signed_minor_model_of(payload: dict) -> tuple[Graph, list, SignedMinorModel]:
    H = _pattern_of(payload)
    sigma = [tuple(e) for e in payload["pattern_signature"]]
    model = SignedMinorModel(
        trees={int(u): tuple(vs) for u, vs in payload["trees"].items()},
        tree_edges={
            int(u): tuple(tuple(e) for e in es)
            for u, es in payload["tree_edges"].items()
        },
        tree_colorings={
            int(u): {int(v): c for v, c in col.items()}
            for u, col in payload["tree_colorings"].items()
        },
        edge_witness={
            _norm_edge(*w["edge"]): tuple(w["witness"])
            for w in payload["edge_witness"]
        },
    )
    return H, sigma, model


def subdivision_of(payload: dict) -> SubdivisionEmbedding:
    return SubdivisionEmbedding(
        payload["s"],
        payload["t"],
        {int(p): g for p, g in payload["branch"].items()},
        {
            _norm_edge(*l["edge"]): Path(tuple(l["path"]))
            for l in payload["linking"]
        },
    )


def coloring_of(payload: dict) -> ColoringAssignment:
    return ColoringAssignment(
        {int(v): c for v, c in payload["colors"].items()}, payload["palette"]
    )


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


def _verify_packing(G: Graph, payload: dict) -> tuple[bool, str]:
    S = frozenset(payload["S"])
    if len(payload["paths"]) < payload["l"]:
        return False, "packing-too-small"
    used: set[int] = set()
    for vs in payload["paths"]:
        p = Path(tuple(vs))
        if not p.is_path_of(G):
            return False, "not-a-path"
        a, b = p.ends
        if a not in S or b not in S or p.length % 2 == 0:
            return False, "not-an-odd-s-path"
        if used & set(vs):
            return False, "paths-not-disjoint"
        used |= set(vs)
    return True, "ok"


def _verify_cover(G: Graph, payload: dict) -> tuple[bool, str]:
    S = frozenset(payload["S"])
    X = set(payload["cover"])
    if len(X) > 2 * payload["l"] - 2:
        return False, "cover-too-large"
    if any(not 0 <= v < G.n for v in X):
        return False, "cover-out-of-range"
    G2 = G.subgraph_on(set(G.vertices()) - X)
    if find_odd_s_path(G2, S - X) is not None:
        return False, "odd-path-survives"
    return True, "ok"


def _verify_decomposition(G: Graph, payload: dict) -> tuple[bool, str]:
    t = payload["t"]
    X = frozenset(payload["X"])
    U = frozenset(payload["U"])
    if X & U:
        return False, "apex-meets-block"
    if len(X) > 2 * t - 4:
        return False, "apex-too-large"
    if len(U) < t + 3:
        return False, "block-too-small"
    if any(not 0 <= v < G.n for v in X | U):
        return False, "vertex-out-of-range"
    Gx = G.subgraph_on(set(G.vertices()) - X)
    if U not in set(blocks(Gx)):
        return False, "not-a-block"
    if bipartition(G.subgraph_on(U)) is None:
        return False, "block-not-bipartite"
    retained = frozenset(payload["retained_branch"])
    if payload["reduced"] is not None:
        red = subdivision_of(payload["reduced"])
        ok, reason = verify_subdivision(G, red, require_bipartite=True)
        if not ok:
            return False, reason
        if red.C != retained or not red.union_vertices() <= U:
            return False, "reduced-outside-block"
    elif not retained <= U:
        return False, "reduced-outside-block"
    return True, "ok"


def _verify_coloring_payload(G: Graph, payload: dict) -> tuple[bool, str]:
    c = coloring_of(payload)
    if set(c.colors) != set(G.vertices()):
        return False, "coloring-not-total"
    if any(not 1 <= col <= c.palette_size for col in c.colors.values()):
        return False, "color-out-of-palette"
    if payload["palette"] > payload["bound"]:
        return False, "palette-exceeds-bound"
    if payload["mode"] == "defective":
        fam = BoundedDegree(payload["value"])
    else:
        fam = BoundedComponent(max(payload["value"], 1))
    if not verify_coloring(G, c, fam):
        return False, "reported-quality-not-met"
    return True, "ok"


def verify_certificate(G: Graph, cert: Certificate) -> tuple[bool, str]:
    """Dispatch to the matching verifier; hash mismatch is an error, not a
    soft failure, because it means the certificate talks about another graph."""
    if cert.graph_hash != graph_hash(G):
        raise CertificateError("graph-hash-mismatch")
    p = cert.payload
    try:
        if cert.kind == "odd-minor-model":
            H, model = odd_minor_model_of(p)
            return verify_odd_minor_model(G, H, model)
        if cert.kind == "signed-minor-model":
            H, sigma, model = signed_minor_model_of(p)
            return verify_signed_minor_model(G, H, sigma, model)
        if cert.kind == "subdivision":
            return verify_subdivision(G, subdivision_of(p), p["bipartite"])
        if cert.kind == "packing":
            return _verify_packing(G, p)
        if cert.kind == "cover":
            return _verify_cover(G, p)
        if cert.kind == "decomposition":
            return _verify_decomposition(G, p)
        if cert.kind == "coloring":
            return _verify_coloring_payload(G, p)
    except (KeyError, TypeError, ValueError, IndexError) as e:
        return False, f"malformed-payload: {e}"
    raise CertificateError(f"unknown certificate kind {cert.kind!r}")
