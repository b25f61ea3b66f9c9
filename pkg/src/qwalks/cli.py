"""Command-line interface.

Every command writes one result table (CSV by default, ``--format json`` for
JSON) to ``--output`` or stdout. Relative ``--output`` paths are resolved
against ``$QWALKS_OUTPUT_DIR`` when that variable is set. A file output gets
a ``<output>.manifest.json`` sidecar; the JSON format embeds the manifest.

Vertex arguments (``--start``, ``--target``, ``--source``) are 0-based; output
columns are labelled ``v1 .. vN``.

Exit codes: 0 success, 2 usage error, 3 invalid input, 4 numerical failure.
"""

import argparse
import hashlib
import json
import math
import os
import sys

import numpy as np

from . import __version__, classical_walk, ctqw, graphs, kernel, search, trotter
from .exceptions import NumericalError, ValidationError
from .series import TimeSeries, complex_series, format_float

EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_NUMERICAL = 4
OUTPUT_DIR_ENV = "QWALKS_OUTPUT_DIR"


def _family_arg(text):
    kind, sep, n = text.partition(":")
    if not sep or kind not in graphs.FAMILIES:
        raise argparse.ArgumentTypeError(
            f"expected KIND:N with KIND in {', '.join(graphs.FAMILIES)}, got {text!r}")
    try:
        return kind, int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"vertex count must be an integer: {n!r}") from None


def _random_arg(text):
    parts = text.split(":")
    try:
        n, p, seed = int(parts[0]), float(parts[1]), int(parts[2])
    except (IndexError, ValueError):
        raise argparse.ArgumentTypeError(f"expected N:P:SEED, got {text!r}") from None
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected N:P:SEED, got {text!r}")
    return n, p, seed


def _times_arg(text):
    """``START:STOP:COUNT`` (inclusive linspace) or a comma-separated list."""
    try:
        if ":" in text:
            start, stop, count = text.split(":")
            count = int(count)
            if count < 1:
                raise ValueError
            return np.linspace(float(start), float(stop), count)
        return np.array([float(t) for t in text.split(",")])
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected START:STOP:COUNT or t1,t2,..., got {text!r}") from None


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonneg_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _add_graph_options(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--graph-file", metavar="PATH", help="adjacency matrix text file")
    g.add_argument("--family", type=_family_arg, metavar="KIND:N",
                   help="cycle, path, complete or star graph, e.g. cycle:8")
    g.add_argument("--random", type=_random_arg, metavar="N:P:SEED",
                   help="Erdos-Renyi graph with edge probability P")


def _add_output_options(p):
    p.add_argument("--output", "-o", default="-", metavar="PATH",
                   help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qwalks", description="Classical and quantum walks on graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cwalk", help="path-counting classical walk")
    _add_graph_options(p)
    p.add_argument("--start", type=int, required=True)
    p.add_argument("--t-max", type=_nonneg_int, default=10, help="number of steps")
    _add_output_options(p)

    p = sub.add_parser("qwalk", help="continuous-time quantum walk")
    _add_graph_options(p)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--t-max", type=float, default=10.0)
    p.add_argument("--steps", type=_positive_int, default=200,
                   help="time samples, both ends included (exact method)")
    p.add_argument("--shots", type=_nonneg_int, default=None,
                   help="measurements per row, 0 for exact probabilities "
                        "(default: 1000 for exact, 0 for trotter)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=("exact", "trotter"), default="exact")
    p.add_argument("--order", type=int, default=3, help="Trotter order (3 runs order 4)")
    p.add_argument("--slices", type=_positive_int, default=10,
                   help="Trotter slices per unit time")
    _add_output_options(p)

    p = sub.add_parser("kernel", help="lattice propagator |K|^2")
    p.add_argument("--kind", choices=kernel.KINDS, required=True)
    p.add_argument("--n", type=int, required=True, help="number of sites")
    p.add_argument("--source", type=int, default=0)
    p.add_argument("--times", type=_times_arg, default=np.linspace(0.0, 25.0, 250),
                   metavar="START:STOP:COUNT", help="default 0:25:250")
    p.add_argument("--operator", choices=kernel.INTERVAL_OPERATORS, default="neumann",
                   help="interval operator for --kind numeric")
    p.add_argument("--complex", action="store_true",
                   help="write Re/Im column pairs instead of |K|^2")
    _add_output_options(p)

    p = sub.add_parser("search", help="continuous-time spatial search")
    _add_graph_options(p)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--gamma", type=float, default=None, help="hopping rate (default 1/n)")
    p.add_argument("--t-max", type=float, default=10.0)
    p.add_argument("--steps", type=_positive_int, default=200)
    _add_output_options(p)

    p = sub.add_parser("transfer", help="state-transfer detection")
    _add_graph_options(p)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--threshold", type=float, default=0.999)
    p.add_argument("--t-max", type=float, default=10.0)
    p.add_argument("--steps", type=_positive_int, default=200,
                   help="coarse scan uses 4 * steps points")
    _add_output_options(p)
    return parser


def load_graph(args):
    """Return ``(graph, sha256 of the input)``."""
    if args.graph_file:
        try:
            with open(args.graph_file, "rb") as fh:
                raw = fh.read()
        except OSError as exc:
            raise ValidationError(f"cannot read {args.graph_file}: {exc.strerror}") from exc
        try:
            g = graphs.parse_adjacency(raw)
        except ValidationError as exc:
            raise ValidationError(f"{args.graph_file}: {exc}") from exc
        return g, hashlib.sha256(raw).hexdigest()
    if args.family:
        g = graphs.family(*args.family)
    else:
        g = graphs.random_graph(*args.random)
    return g, hashlib.sha256(graphs.serialize_adjacency(g).encode()).hexdigest()


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return [float(v) for v in value]
    if isinstance(value, tuple):
        return list(value)
    return value


def make_manifest(args, digest):
    params = {k: _jsonable(v) for k, v in sorted(vars(args).items())
              if k not in ("command", "output", "format")}
    return {
        "command": args.command,
        "parameters": params,
        "seed": getattr(args, "seed", None),
        "version": __version__,
        "input_digest": digest,
    }


def _resolve_output(path):
    if path == "-":
        return None
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        path = os.path.join(base, path)
    return path


def _write(path, text):
    if path is None:
        sys.stdout.write(text)
        return
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(text)


def emit(args, table, manifest, extra_json=None):
    """Write ``table`` (a TimeSeries or a CSV string) plus the manifest."""
    path = _resolve_output(args.output)
    if args.format == "json":
        if isinstance(table, TimeSeries):
            text = table.to_json(manifest)
        else:
            text = json.dumps({"manifest": manifest, **(extra_json or {})}, indent=2) + "\n"
    else:
        text = table.to_csv() if isinstance(table, TimeSeries) else table
    _write(path, text)
    if path is not None:
        _write(path + ".manifest.json", json.dumps(manifest, indent=2) + "\n")
    return path


def cmd_cwalk(args):
    g, digest = load_graph(args)
    series = classical_walk.classical_walk_series(g, args.start, args.t_max)
    emit(args, series, make_manifest(args, digest))


def cmd_qwalk(args):
    g, digest = load_graph(args)
    if args.shots is None:
        args.shots = 1000 if args.method == "exact" else 0
    if args.method == "exact":
        cfg = ctqw.WalkConfig(args.start, args.t_max, args.steps, args.shots, args.seed)
        series = ctqw.quantum_walk_series(g, cfg)
    else:
        cfg = trotter.TrotterConfig(args.t_max, args.slices, args.order)
        series = trotter.trotter_walk_series(g, cfg, args.start)
        if args.shots:
            # padded graphs leak a little probability; measure it as an extra outcome
            leak = np.clip(1 - series.values.sum(axis=1, keepdims=True), 0, None)
            freqs = ctqw.sample_series(np.hstack([series.values, leak]), args.shots, args.seed)
            series = TimeSeries(series.times, freqs[:, :g.n], series.labels)
    emit(args, series, make_manifest(args, digest))


def cmd_kernel(args):
    spec = kernel.eigensystem(args.kind, args.n, args.operator)
    grid = kernel.spectral_kernel(spec, args.source, args.times)
    table = (complex_series(grid.times, grid.values, grid.n) if args.complex
             else grid.to_series())
    emit(args, table, make_manifest(args, None))
    sys.stderr.write(kernel.format_diagnostic(kernel.formula_diagnostic(args.n)))


def cmd_search(args):
    g, digest = load_graph(args)
    cfg = search.SearchConfig(args.target, args.gamma, args.t_max, args.steps)
    result = search.search_series(g, cfg)
    path = emit(args, result.series, make_manifest(args, digest))
    summary = result.summary_csv()
    if path is not None:
        _write(path + ".summary.csv", summary)
    sys.stderr.write(summary)


def transfer_csv(events):
    lines = ["vertex,t,peak"]
    lines += [f"v{e.vertex + 1},{format_float(e.time)},{format_float(e.peak)}" for e in events]
    return "\n".join(lines) + "\n"


def cmd_transfer(args):
    g, digest = load_graph(args)
    events = ctqw.detect_state_transfer(g, args.start, args.t_max, args.threshold, args.steps)
    rows = [{"vertex": f"v{e.vertex + 1}", "t": e.time, "peak": e.peak} for e in events]
    emit(args, transfer_csv(events), make_manifest(args, digest), {"events": rows})


COMMANDS = {
    "cwalk": cmd_cwalk,
    "qwalk": cmd_qwalk,
    "kernel": cmd_kernel,
    "search": cmd_search,
    "transfer": cmd_transfer,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("t_max", "gamma", "threshold"):
        value = getattr(args, name, None)
        if isinstance(value, float) and not math.isfinite(value):
            parser.error(f"--{name.replace('_', '-')} must be finite")
    try:
        COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"qwalks {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"qwalks {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return 0


if __name__ == "__main__":
    sys.exit(main())
