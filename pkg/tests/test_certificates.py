"""JSON certificates: canonical serialization, strict parsing, verification."""

import json

import pytest

from oddminorkit import (
    CertificateError,
    Graph,
    certify_coloring,
    certify_cover,
    certify_decomposition,
    certify_odd_minor_model,
    certify_packing,
    certify_signed_minor_model,
    certify_subdivision,
    chorded_subdivision,
    color_defective,
    complete,
    complete_bipartite,
    cycle,
    find_odd_clique_minor,
    find_signed_minor,
    graph_hash,
    join_subdivision,
    odd_s_paths_dichotomy,
    parse_certificate,
    serialize_certificate,
    structure_theorem,
    verify_certificate,
)
from oddminorkit.structure import Decomposition


def Kt(t):
    return Graph(t, [(i, j) for i in range(t) for j in range(i + 1, t)])


def roundtrip(G, cert):
    text = serialize_certificate(cert)
    again = parse_certificate(text)
    assert serialize_certificate(again) == text  # byte-identical
    ok, reason = verify_certificate(G, again)
    assert ok, (cert.kind, reason)
    return text


def all_kinds():
    """One certificate of every kind, with its graph."""
    out = []
    C5 = cycle(5)
    out.append((C5, certify_odd_minor_model(
        C5, Kt(3), find_odd_clique_minor(C5, 3))))
    K6 = complete(6)
    out.append((K6, certify_signed_minor_model(
        K6, Kt(3), [], find_signed_minor(K6, Kt(3), []))))
    Gs, emb = join_subdivision(3, 2, 1)
    out.append((Gs, certify_subdivision(Gs, emb)))
    res = odd_s_paths_dichotomy(K6, [0, 1, 2, 3], 2)
    out.append((K6, certify_packing(K6, [0, 1, 2, 3], 2, res.packing)))
    K33 = complete_bipartite(3, 3)
    res = odd_s_paths_dichotomy(K33, [0, 1, 2], 2)
    out.append((K33, certify_cover(K33, [0, 1, 2], 2, res.cover)))
    Gd, embd, _ = chorded_subdivision(4, 3, 1, seed=5)
    dec = structure_theorem(Gd, 3, emb=embd, limit=200)
    assert isinstance(dec, Decomposition)
    out.append((Gd, certify_decomposition(Gd, 3, dec)))
    K44 = complete_bipartite(4, 4)
    col, defect = color_defective(K44, 3)
    out.append((K44, certify_coloring(K44, col, "defective", 3, 9, defect)))
    return out


def test_every_kind_round_trips():
    kinds = set()
    for G, cert in all_kinds():
        roundtrip(G, cert)
        kinds.add(cert.kind)
    assert kinds == {
        "odd-minor-model", "signed-minor-model", "subdivision",
        "packing", "cover", "decomposition", "coloring",
    }


def test_graph_hash_discriminates():
    assert graph_hash(cycle(4)) != graph_hash(cycle(5))
    assert graph_hash(cycle(4)) == graph_hash(Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)]))


def test_hash_mismatch_is_an_error():
    C5 = cycle(5)
    cert = certify_odd_minor_model(C5, Kt(3), find_odd_clique_minor(C5, 3))
    with pytest.raises(CertificateError):
        verify_certificate(cycle(7), cert)


def test_unknown_fields_rejected():
    C5 = cycle(5)
    cert = certify_odd_minor_model(C5, Kt(3), find_odd_clique_minor(C5, 3))
    doc = json.loads(serialize_certificate(cert))
    for bad in (
        {**doc, "extra": 1},
        {k: v for k, v in doc.items() if k != "graph_hash"},
        {**doc, "schema": "odd-minor-kit/2"},
        {**doc, "kind": "mystery"},
        {**doc, "payload": {**doc["payload"], "surprise": True}},
    ):
        with pytest.raises(CertificateError):
            parse_certificate(json.dumps(bad))
    with pytest.raises(CertificateError):
        parse_certificate("not json")
    with pytest.raises(CertificateError):
        parse_certificate("[1,2]")


def test_tampered_alpha_reports_reason():
    C5 = cycle(5)
    cert = certify_odd_minor_model(C5, Kt(3), find_odd_clique_minor(C5, 3))
    doc = json.loads(serialize_certificate(cert))
    tree = next(vs for vs in doc["payload"]["trees"].values() if len(vs) > 1)
    key = str(tree[0])
    doc["payload"]["alpha"][key] = 3 - doc["payload"]["alpha"][key]
    bad = parse_certificate(json.dumps(doc))
    ok, reason = verify_certificate(C5, bad)
    assert not ok and reason == "bichromatic-violation"


def test_malformed_payload_is_soft_failure():
    C5 = cycle(5)
    cert = certify_odd_minor_model(C5, Kt(3), find_odd_clique_minor(C5, 3))
    doc = json.loads(serialize_certificate(cert))
    doc["payload"]["trees"] = {"0": "zap"}
    bad = parse_certificate(json.dumps(doc))
    ok, reason = verify_certificate(C5, bad)
    assert not ok


def test_coloring_value_is_checked():
    K44 = complete_bipartite(4, 4)
    col, defect = color_defective(K44, 3)
    cert = certify_coloring(K44, col, "defective", 3, 9, defect)
    doc = json.loads(serialize_certificate(cert))
    doc["payload"]["colors"] = {v: 1 for v in doc["payload"]["colors"]}
    bad = parse_certificate(json.dumps(doc))
    ok, reason = verify_certificate(K44, bad)
    assert not ok and reason == "reported-quality-not-met"
