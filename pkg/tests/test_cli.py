"""Command-line interface: exit codes, certificates on stdout, corpus CSV."""

import json

import pytest
from click.testing import CliRunner

from oddminorkit import (
    parse_certificate,
    to_graph6,
    verify_certificate,
)
from oddminorkit.cli import main
from oddminorkit.generators import chorded_subdivision, cycle, complete_bipartite
from oddminorkit.graph import parse_graph


@pytest.fixture
def runner():
    return CliRunner()


def write_graph(tmp_path, G, name="g.g6"):
    p = tmp_path / name
    p.write_text(to_graph6(G) + "\n")
    return str(p)


def test_gen_graph6_and_embedding_certificate(runner):
    res = runner.invoke(main, ["gen", "complete_bipartite", "3", "3"])
    assert res.exit_code == 0
    G = parse_graph(res.output.strip().encode(), "graph6")
    assert G == complete_bipartite(3, 3)

    res = runner.invoke(main, ["gen", "join_subdivision", "4", "3"])
    assert res.exit_code == 0
    graph_line, cert_line = res.output.strip().split("\n")
    G = parse_graph(graph_line.encode(), "graph6")
    assert G.n == 25
    cert = parse_certificate(cert_line)
    ok, reason = verify_certificate(G, cert)
    assert ok, reason


def test_gen_rejects_bad_family(runner):
    res = runner.invoke(main, ["gen", "moebius", "7"])
    assert res.exit_code == 4


def test_detect_certificate_and_exit_code(runner, tmp_path):
    c5 = write_graph(tmp_path, cycle(5))
    res = runner.invoke(main, ["detect", c5, "--t", "3"])
    assert res.exit_code == 2
    cert = parse_certificate(res.output.strip())
    assert cert.kind == "odd-minor-model"

    k33 = write_graph(tmp_path, complete_bipartite(3, 3))
    res = runner.invoke(main, ["detect", k33, "--t", "3"])
    assert res.exit_code == 0
    assert res.output.strip() == "absent"


def test_detect_signed_mode(runner, tmp_path):
    from oddminorkit.generators import complete

    k6 = write_graph(tmp_path, complete(6))
    res = runner.invoke(main, ["detect", k6, "--mode", "signed", "--t", "3"])
    assert res.exit_code == 2
    assert parse_certificate(res.output.strip()).kind == "signed-minor-model"


def test_detect_subdivision_mode(runner, tmp_path):
    k33 = write_graph(tmp_path, complete_bipartite(3, 3))
    res = runner.invoke(main, ["detect", k33, "--mode", "subdivision",
                               "--s", "2", "--t", "2"])
    assert res.exit_code == 2
    assert parse_certificate(res.output.strip()).kind == "subdivision"


def test_size_guard_exit_code(runner, tmp_path):
    from oddminorkit.graph import Graph

    big = write_graph(tmp_path, Graph(18, []))
    res = runner.invoke(main, ["detect", big, "--t", "2"])
    assert res.exit_code == 3
    res = runner.invoke(main, ["detect", big, "--t", "2", "--limit", "18"])
    assert res.exit_code == 0


def test_missing_input_is_an_input_error(runner, tmp_path):
    res = runner.invoke(main, ["detect", str(tmp_path / "nope.g6"), "--t", "3"])
    assert res.exit_code == 4


def test_color_success_and_odd_minor(runner, tmp_path):
    k33 = write_graph(tmp_path, complete_bipartite(3, 3))
    res = runner.invoke(main, ["color", k33, "--t", "3", "--trace"])
    assert res.exit_code == 0
    cert_line, report_line = res.output.strip().split("\n")
    cert = parse_certificate(cert_line)
    assert cert.kind == "coloring"
    ok, reason = verify_certificate(complete_bipartite(3, 3), cert)
    assert ok, reason
    report = json.loads(report_line)
    assert report["palette_used"] <= report["bound_palette"] == 9
    assert "recursion_trace" in report

    c5 = write_graph(tmp_path, cycle(5))
    res = runner.invoke(main, ["color", c5, "--t", "3"])
    assert res.exit_code == 2
    assert parse_certificate(res.output.strip()).kind == "odd-minor-model"


def test_color_is_deterministic(runner, tmp_path):
    k33 = write_graph(tmp_path, complete_bipartite(3, 3))
    a = runner.invoke(main, ["color", k33, "--t", "3"])
    b = runner.invoke(main, ["color", k33, "--t", "3"])
    assert a.output == b.output


def test_decompose_both_outcomes(runner, tmp_path):
    G, _, _ = chorded_subdivision(2, 2, 1, seed=3)
    packed = write_graph(tmp_path, G, "packed.g6")
    res = runner.invoke(main, ["decompose", packed, "--t", "2",
                               "--limit", "200"])
    assert res.exit_code == 2
    assert parse_certificate(res.output.strip()).kind == "odd-minor-model"

    G, _, _ = chorded_subdivision(2, 2, 0, seed=3)
    plain = write_graph(tmp_path, G, "plain.g6")
    res = runner.invoke(main, ["decompose", plain, "--t", "2",
                               "--limit", "200"])
    assert res.exit_code == 0
    cert = parse_certificate(res.output.strip())
    assert cert.kind == "decomposition"
    ok, reason = verify_certificate(G, cert)
    assert ok, reason


def test_decompose_without_subdivision_is_input_error(runner, tmp_path):
    c5 = write_graph(tmp_path, cycle(5))
    res = runner.invoke(main, ["decompose", c5, "--t", "2"])
    assert res.exit_code == 4


def test_ep_packing_and_cover(runner, tmp_path):
    from oddminorkit.generators import complete

    k6 = write_graph(tmp_path, complete(6))
    res = runner.invoke(main, ["ep", k6, "--s-set", "0,1,2,3", "--l", "2"])
    assert res.exit_code == 0
    cert = parse_certificate(res.output.strip())
    assert cert.kind == "packing"
    ok, _ = verify_certificate(complete(6), cert)
    assert ok

    k33 = write_graph(tmp_path, complete_bipartite(3, 3))
    res = runner.invoke(main, ["ep", k33, "--s-set", "0,1,2", "--l", "2"])
    assert res.exit_code == 0
    assert parse_certificate(res.output.strip()).kind == "cover"


def test_verify_command(runner, tmp_path):
    c5 = write_graph(tmp_path, cycle(5))
    res = runner.invoke(main, ["detect", c5, "--t", "3",
                               "--out", str(tmp_path / "c.json")])
    assert res.exit_code == 2
    res = runner.invoke(main, ["verify", c5, str(tmp_path / "c.json")])
    assert res.exit_code == 0 and res.output.strip() == "true ok"

    # against the wrong graph: hash mismatch, input error
    c7 = write_graph(tmp_path, cycle(7), "c7.g6")
    res = runner.invoke(main, ["verify", c7, str(tmp_path / "c.json")])
    assert res.exit_code == 4

    # tampered payload: soft false with a reason
    doc = json.loads((tmp_path / "c.json").read_text())
    tree = next(vs for vs in doc["payload"]["trees"].values() if len(vs) > 1)
    key = str(tree[0])
    doc["payload"]["alpha"][key] = 3 - doc["payload"]["alpha"][key]
    (tmp_path / "bad.json").write_text(json.dumps(doc))
    res = runner.invoke(main, ["verify", c5, str(tmp_path / "bad.json")])
    assert res.exit_code == 0
    assert res.output.strip() == "false bichromatic-violation"


def test_corpus_sweep_and_determinism(runner):
    args = ["corpus", "--sweep", "cycle:3-7", "--t", "3"]
    res = runner.invoke(main, args)
    assert res.exit_code == 0
    lines = res.output.strip().split("\n")
    assert lines[0].startswith("instance,n,m,t,mode,outcome")
    rows = [l.split(",") for l in lines[1:]]
    assert [r[0] for r in rows] == [f"cycle({n})" for n in range(3, 8)]
    outcomes = {r[0]: r[5] for r in rows}
    assert outcomes["cycle(4)"] == outcomes["cycle(6)"] == "colored"
    assert outcomes["cycle(3)"] == outcomes["cycle(5)"] == "odd-minor-found"
    # identical runs yield identical CSVs except for the timing column
    res2 = runner.invoke(main, args)
    strip = lambda out: [l.rsplit(",", 1)[0] for l in out.strip().split("\n")]
    assert strip(res.output) == strip(res2.output)


def test_corpus_empty_is_header_only(runner):
    res = runner.invoke(main, ["corpus", "--t", "3"])
    assert res.exit_code == 0
    assert res.output.strip() == (
        "instance,n,m,t,mode,outcome,palette_used,bound_palette,achieved,seconds"
    )
