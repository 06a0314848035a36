"""Command-line front end: generation, detection, coloring, decomposition,
packing/covering, certificate verification, and the corpus harness.

Exit codes: 0 = success, 2 = odd-minor certificate produced, 3 = size guard
tripped, 4 = input error.
"""

from __future__ import annotations

import csv
import io
import json
import sys
import time
from typing import Optional

import click

from . import certificates as certs
from .coloring import OddMinorFoundError, bound_N, color_clustered, color_defective
from .erdosposa import odd_s_paths_dichotomy
from .generators import (
    chorded_subdivision,
    complete,
    complete_bipartite,
    cycle,
    join_subdivision,
    random_graph,
)
from .graph import (
    Graph,
    GraphError,
    SizeLimitError,
    parse_graph,
    to_dimacs,
    to_edgelist,
    to_graph6,
)
from .oddminor import find_odd_clique_minor
from .signed import find_signed_minor
from .structure import Decomposition, HypothesisUnmetError, structure_theorem
from .subdivision import find_bipartite_join_subdivision

EXIT_CERTIFICATE = 2
EXIT_SIZE_GUARD = 3
EXIT_INPUT_ERROR = 4

_FORMATS = click.Choice(["graph6", "dimacs", "edgelist"])


def _emit_graph(G: Graph, format: str) -> str:
    if format == "graph6":
        return to_graph6(G)
    if format == "dimacs":
        return to_dimacs(G)
    return to_edgelist(G)


def _read_graph(source: str, format: str) -> Graph:
    try:
        if source == "-":
            data = sys.stdin.buffer.read()
        else:
            with open(source, "rb") as fh:
                data = fh.read()
        return parse_graph(data, format)
    except (OSError, GraphError, ValueError) as e:
        raise click.exceptions.Exit(_fail(f"cannot read graph: {e}"))


def _fail(msg: str) -> int:
    click.echo(f"error: {msg}", err=True)
    return EXIT_INPUT_ERROR


def _write(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        click.echo(text)


@click.group()
def main() -> None:
    """Odd-minor detection, parity-breaking path dichotomies, structure
    decomposition, and bounded-palette improper coloring."""


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


@main.command()
@click.argument("family")
@click.argument("params", nargs=-1)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--format", "fmt", type=_FORMATS, default="graph6", show_default=True)
@click.option("--out", type=str, default=None,
              help="write the graph here; embedding certificates go to OUT.cert.json")
def gen(family: str, params: tuple[str, ...], seed: int, fmt: str, out: Optional[str]):
    """Generate an instance.

    Families: complete N | complete_bipartite M N | cycle N | random N P |
    join_subdivision S T [COUNT] | chorded_subdivision S T CHORDS
    """
    cert = None
    try:
        if family == "complete":
            G = complete(int(params[0]))
        elif family == "complete_bipartite":
            G = complete_bipartite(int(params[0]), int(params[1]))
        elif family == "cycle":
            G = cycle(int(params[0]))
        elif family == "random":
            G = random_graph(int(params[0]), float(params[1]), seed)
        elif family == "join_subdivision":
            count = int(params[2]) if len(params) > 2 else 1
            G, emb = join_subdivision(int(params[0]), int(params[1]), count)
            cert = certs.certify_subdivision(G, emb, bipartite=count % 2 == 1)
        elif family == "chorded_subdivision":
            G, emb, _ = chorded_subdivision(int(params[0]), int(params[1]),
                                            int(params[2]), seed)
            cert = certs.certify_subdivision(G, emb)
        else:
            raise ValueError(f"unknown family {family!r}")
    except (ValueError, IndexError) as e:
        sys.exit(_fail(str(e)))
    _write(_emit_graph(G, fmt), out)
    if cert is not None:
        text = certs.serialize_certificate(cert)
        if out:
            with open(out + ".cert.json", "w") as fh:
                fh.write(text + "\n")
        else:
            click.echo(text)


# ---------------------------------------------------------------------------
# detect
# ---------------------------------------------------------------------------


@main.command()
@click.argument("graph", type=str)
@click.option("--format", "fmt", type=_FORMATS, default="graph6", show_default=True)
@click.option("--mode", type=click.Choice(["odd-clique", "subdivision", "signed"]),
              default="odd-clique", show_default=True)
@click.option("--t", "t", type=int, required=True,
              help="clique order (odd-clique/signed) or stable-set size (subdivision)")
@click.option("--s", "s", type=int, default=None,
              help="clique side of the join pattern (subdivision mode)")
@click.option("--sigma", type=str, default="[]",
              help="signed mode: JSON list of negative pattern edges")
@click.option("--limit", type=int, default=None, help="size-guard override")
@click.option("--out", type=str, default=None)
def detect(graph: str, fmt: str, mode: str, t: int, s: Optional[int],
           sigma: str, limit: Optional[int], out: Optional[str]):
    """Search exhaustively for the requested substructure.

    Prints a certificate (exit 2) or "absent" (exit 0).
    """
    G = _read_graph(graph, fmt)
    try:
        if mode == "odd-clique":
            model = find_odd_clique_minor(G, t, limit=limit)
            if model is None:
                _write("absent", out)
                return
            Kt = Graph(t, [(i, j) for i in range(t) for j in range(i + 1, t)])
            cert = certs.certify_odd_minor_model(G, Kt, model)
        elif mode == "subdivision":
            if s is None:
                sys.exit(_fail("subdivision mode needs --s"))
            emb = find_bipartite_join_subdivision(
                G, s, t, **({} if limit is None else {"limit": limit})
            )
            if emb is None:
                _write("absent", out)
                return
            cert = certs.certify_subdivision(G, emb)
        else:
            Kt = Graph(t, [(i, j) for i in range(t) for j in range(i + 1, t)])
            sig = [tuple(e) for e in json.loads(sigma)]
            kw = {} if limit is None else {"limit": limit}
            model = find_signed_minor(G, Kt, sig, **kw)
            if model is None:
                _write("absent", out)
                return
            cert = certs.certify_signed_minor_model(G, Kt, sig, model)
    except SizeLimitError as e:
        click.echo(f"size guard: {e}", err=True)
        sys.exit(EXIT_SIZE_GUARD)
    except (ValueError, json.JSONDecodeError) as e:
        sys.exit(_fail(str(e)))
    _write(certs.serialize_certificate(cert), out)
    sys.exit(EXIT_CERTIFICATE)


# ---------------------------------------------------------------------------
# color
# ---------------------------------------------------------------------------


def _color_once(G: Graph, t: int, mode: str, want_trace: bool):
    trace: Optional[list] = [] if want_trace else None
    if mode == "defective":
        assignment, value = color_defective(G, t, trace=trace)
        bound = 6 * t - 9
    else:
        assignment, value = color_clustered(G, t, trace=trace)
        bound = 10 * t - 13
    return assignment, value, bound, trace


@main.command()
@click.argument("graph", type=str)
@click.option("--format", "fmt", type=_FORMATS, default="graph6", show_default=True)
@click.option("--t", "t", type=int, required=True)
@click.option("--mode", type=click.Choice(["defective", "clustered"]),
              default="defective", show_default=True)
@click.option("--trace", is_flag=True, help="include the recursion trace in the report")
@click.option("--c0", type=float, default=10.0, show_default=True,
              help="constant for the reported asymptotic defect bound")
@click.option("--out", type=str, default=None)
def color(graph: str, fmt: str, t: int, mode: str, trace: bool,
          c0: float, out: Optional[str]):
    """Color with at most 6t-9 (defective) or 10t-13 (clustered) colors.

    Emits the coloring certificate plus a JSON report; if an odd K_t minor
    surfaces, emits its certificate instead and exits 2.
    """
    G = _read_graph(graph, fmt)
    try:
        assignment, value, bound, tr = _color_once(G, t, mode, trace)
    except OddMinorFoundError as e:
        Kt = Graph(t, [(i, j) for i in range(t) for j in range(i + 1, t)])
        cert = certs.certify_odd_minor_model(G, Kt, e.model)
        _write(certs.serialize_certificate(cert), out)
        sys.exit(EXIT_CERTIFICATE)
    except SizeLimitError as e:
        click.echo(f"size guard: {e}", err=True)
        sys.exit(EXIT_SIZE_GUARD)
    except ValueError as e:
        sys.exit(_fail(str(e)))
    cert = certs.certify_coloring(G, assignment, mode, t, bound, value)
    report = {
        "palette_used": assignment.palette_size,
        "bound_palette": bound,
        ("defect_achieved" if mode == "defective" else "cluster_achieved"): value,
        "bound_N": bound_N(2 * t - 2, t, c0),
    }
    if tr is not None:
        report["recursion_trace"] = tr
    lines = certs.serialize_certificate(cert) + "\n" + json.dumps(
        report, sort_keys=True, separators=(",", ":")
    )
    _write(lines, out)


# ---------------------------------------------------------------------------
# decompose
# ---------------------------------------------------------------------------


@main.command()
@click.argument("graph", type=str)
@click.option("--format", "fmt", type=_FORMATS, default="graph6", show_default=True)
@click.option("--t", "t", type=int, required=True)
@click.option("--limit", type=int, default=None)
@click.option("--out", type=str, default=None)
def decompose(graph: str, fmt: str, t: int, limit: Optional[int], out: Optional[str]):
    """Apply the structure dichotomy: odd K_t model (exit 2) or apex set +
    bipartite block (exit 0)."""
    G = _read_graph(graph, fmt)
    try:
        result = structure_theorem(G, t, limit=limit)
    except SizeLimitError as e:
        click.echo(f"size guard: {e}", err=True)
        sys.exit(EXIT_SIZE_GUARD)
    except (HypothesisUnmetError, ValueError) as e:
        sys.exit(_fail(str(e)))
    if isinstance(result, Decomposition):
        _write(certs.serialize_certificate(certs.certify_decomposition(G, t, result)), out)
        return
    Kt = Graph(t, [(i, j) for i in range(t) for j in range(i + 1, t)])
    _write(certs.serialize_certificate(certs.certify_odd_minor_model(G, Kt, result)), out)
    sys.exit(EXIT_CERTIFICATE)


# ---------------------------------------------------------------------------
# ep (odd S-path packing/covering)
# ---------------------------------------------------------------------------


@main.command()
@click.argument("graph", type=str)
@click.option("--format", "fmt", type=_FORMATS, default="graph6", show_default=True)
@click.option("--s-set", "s_set", type=str, required=True,
              help="comma-separated vertex ids forming S")
@click.option("--l", "l", type=int, required=True)
@click.option("--limit", type=int, default=None)
@click.option("--out", type=str, default=None)
def ep(graph: str, fmt: str, s_set: str, l: int, limit: Optional[int],
       out: Optional[str]):
    """Odd S-path dichotomy: l disjoint odd S-paths, or a cover of at most
    2l-2 vertices."""
    G = _read_graph(graph, fmt)
    try:
        S = [int(x) for x in s_set.split(",") if x.strip() != ""]
        if any(not 0 <= v < G.n for v in S):
            raise ValueError("S contains out-of-range vertex ids")
        res = odd_s_paths_dichotomy(G, S, l, limit=limit)
    except SizeLimitError as e:
        click.echo(f"size guard: {e}", err=True)
        sys.exit(EXIT_SIZE_GUARD)
    except ValueError as e:
        sys.exit(_fail(str(e)))
    if res.is_packing:
        cert = certs.certify_packing(G, S, l, res.packing)
    else:
        cert = certs.certify_cover(G, S, l, res.cover)
    _write(certs.serialize_certificate(cert), out)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


@main.command()
@click.argument("graph", type=str)
@click.argument("certificate", type=str)
@click.option("--format", "fmt", type=_FORMATS, default="graph6", show_default=True)
def verify(graph: str, certificate: str, fmt: str):
    """Re-verify a certificate against a graph; prints true/false + reason."""
    G = _read_graph(graph, fmt)
    try:
        with open(certificate) as fh:
            cert = certs.parse_certificate(fh.read())
        ok, reason = certs.verify_certificate(G, cert)
    except OSError as e:
        sys.exit(_fail(f"cannot read certificate: {e}"))
    except certs.CertificateError as e:
        sys.exit(_fail(str(e)))
    click.echo(f"{'true' if ok else 'false'} {reason}")


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------

_CSV_COLUMNS = [
    "instance", "n", "m", "t", "mode", "outcome",
    "palette_used", "bound_palette", "achieved", "seconds",
]


def _sig6(x: float) -> str:
    return f"{x:.6g}"


def _sweep_instances(sweep: str, seed: int):
    """Expand a sweep spec into (label, Graph) pairs.

    Specs: complete_bipartite:M,N (all 1<=m<=M, 1<=n<=N) | cycle:A-B |
    random:N,P,COUNT
    """
    kind, _, arg = sweep.partition(":")
    if kind == "complete_bipartite":
        M, N = (int(x) for x in arg.split(","))
        for m in range(1, M + 1):
            for n in range(1, N + 1):
                yield f"complete_bipartite({m},{n})", complete_bipartite(m, n)
    elif kind == "cycle":
        a, b = (int(x) for x in arg.split("-"))
        for n in range(a, b + 1):
            yield f"cycle({n})", cycle(n)
    elif kind == "random":
        n, p, count = arg.split(",")
        for i in range(int(count)):
            yield f"random({n},{p},seed={seed + i})", random_graph(int(n), float(p), seed + i)
    else:
        raise ValueError(f"unknown sweep spec {sweep!r}")


@main.command()
@click.argument("graphs", nargs=-1, type=str)
@click.option("--sweep", type=str, multiple=True,
              help="generator sweep spec; may be repeated")
@click.option("--format", "fmt", type=_FORMATS, default="graph6", show_default=True)
@click.option("--t", "t", type=int, required=True)
@click.option("--mode", type=click.Choice(["defective", "clustered"]),
              default="defective", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=str, default=None)
def corpus(graphs: tuple[str, ...], sweep: tuple[str, ...], fmt: str, t: int,
           mode: str, seed: int, out: Optional[str]):
    """Run the colorer over many instances and summarize as CSV.

    Instances come from graph files and/or --sweep specs; every coloring is
    re-verified before its row is recorded, and per-instance failures are
    recorded without stopping the run.
    """
    instances: list[tuple[str, Graph]] = []
    try:
        for path in graphs:
            instances.append((path, _read_graph(path, fmt)))
        for sw in sweep:
            instances.extend(_sweep_instances(sw, seed))
    except ValueError as e:
        sys.exit(_fail(str(e)))
    bound = 6 * t - 9 if mode == "defective" else 10 * t - 13
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_COLUMNS)
    for label, G in instances:
        t0 = time.perf_counter()
        palette = achieved = ""
        try:
            assignment, value, _, _ = _color_once(G, t, mode, False)
            cert = certs.certify_coloring(G, assignment, mode, t, bound, value)
            ok, reason = certs.verify_certificate(G, cert)
            if not ok:
                outcome = f"verify-failed:{reason}"
            else:
                outcome = "colored"
                palette = assignment.palette_size
                achieved = value
        except OddMinorFoundError:
            outcome = "odd-minor-found"
        except SizeLimitError:
            outcome = "size-guard"
        except Exception as e:  # recorded, run continues
            outcome = f"error:{type(e).__name__}"
        writer.writerow([
            label, G.n, G.m, t, mode, outcome,
            palette, bound, achieved, _sig6(time.perf_counter() - t0),
        ])
    _write(buf.getvalue().rstrip("\n"), out)


if __name__ == "__main__":
    main()
