"""Command-line front end.

Subcommands: run (simulate a circuit document), qae (amplitude
estimation), qpr (symbolic script), bench (strategy timing grid).
Exit codes: 0 success, 1 parse/validation failure, 2 usage, 3 resource
limit (dimension cap or memory).
"""

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import bench as bench_mod
from .config import set_dimension_cap
from .docio import parse_circuit, simulate_document
from .errors import ConfigError, DimensionLimitError, QChipletError
from .histogram import exact_histogram, sample_histogram
from .qae import QaeConfig, amplitude_loader, run_qae
from .qprscript import run_script
from .docio import compile_document
from .circuit import merge

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

HISTOGRAM_FORMAT = "qchiplet-histogram-v1"
BENCH_FORMAT = "qchiplet-bench-v1"


def _emit(text: str, out_file):
    if out_file:
        with open(out_file, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _histogram_lines(hist, extra=None):
    extra = extra or {}
    rows = []
    header = ["label", "probability"] + (["count"] if hist.counts else [])
    rows.append("  ".join(f"{h:>12}" for h in header))
    for i, label in enumerate(hist.labels):
        cells = [label, f"{hist.probabilities[i]:.10f}"]
        if hist.counts:
            cells.append(str(hist.counts[i]))
        rows.append("  ".join(f"{c:>12}" for c in cells))
    if hist.counts:
        rows.append(f"shots={hist.shots} seed={hist.seed} rng={hist.rng_algorithm}")
    for k, v in extra.items():
        rows.append(f"{k}={v}")
    return "\n".join(rows)


def _histogram_csv(hist, extra=None):
    buf = io.StringIO()
    buf.write(f"# {HISTOGRAM_FORMAT}\n")
    if hist.counts:
        buf.write(f"# shots={hist.shots} seed={hist.seed} rng={hist.rng_algorithm}\n")
    for k, v in (extra or {}).items():
        buf.write(f"# {k}={v}\n")
    writer = csv.writer(buf)
    writer.writerow(["label", "probability", "count"])
    for i, label in enumerate(hist.labels):
        count = hist.counts[i] if hist.counts else ""
        writer.writerow([label, f"{hist.probabilities[i]:.17g}", count])
    return buf.getvalue().rstrip("\n")


def _histogram_json(hist, extra=None):
    body = {
        "format": HISTOGRAM_FORMAT,
        "shots": hist.shots,
        "seed": hist.seed,
        "rng": hist.rng_algorithm,
        "entries": [
            {
                "label": label,
                "probability": hist.probabilities[i],
                **({"count": hist.counts[i]} if hist.counts else {}),
            }
            for i, label in enumerate(hist.labels)
        ],
    }
    body.update(extra or {})
    return json.dumps(body, indent=2)


def _emit_histogram(hist, fmt, out_file, extra=None):
    if fmt == "table":
        _emit(_histogram_lines(hist, extra), out_file)
    elif fmt == "csv":
        _emit(_histogram_csv(hist, extra), out_file)
    else:
        _emit(_histogram_json(hist, extra), out_file)


def cmd_run(args) -> int:
    with open(args.file) as fh:
        doc = parse_circuit(fh.read())
    state = simulate_document(doc, mode=args.mode, backend=args.backend)
    probs = np.abs(state) ** 2
    n = len(doc.qubits)
    if args.shots > 0:
        hist = sample_histogram(probs, n, args.shots, args.seed)
    else:
        hist = exact_histogram(probs, n)
    _emit_histogram(hist, args.output, args.out_file)
    return EXIT_OK


def cmd_qae(args) -> int:
    if (args.amplitude is None) == (args.a_circuit is None):
        raise ConfigError("provide exactly one of --amplitude or --a-circuit")
    if args.amplitude is not None:
        if not 0.0 <= args.amplitude <= 1.0:
            raise ConfigError("--amplitude must lie in [0, 1]")
        a = amplitude_loader(args.amplitude)
        flag = 0
    else:
        with open(args.a_circuit) as fh:
            doc = parse_circuit(fh.read())
        circuit, _ = compile_document(doc)
        a = merge(circuit, "A")
        flag = doc.qubit_index(args.flag, "--flag") if args.flag else 0
    cfg = QaeConfig(a, flag=flag, m=args.m, shots=args.shots, seed=args.seed)
    result = run_qae(cfg, mode=args.mode, backend=args.backend)
    extra = {
        "estimate": f"{result.estimate:.12g}",
        "peak_outcome": result.peak_outcome,
        "q_applications": result.q_applications,
    }
    _emit_histogram(result.histogram, args.output, args.out_file, extra)
    return EXIT_OK


def cmd_qpr(args) -> int:
    with open(args.script) as fh:
        lines = run_script(fh.read())
    _emit("\n".join(lines) if lines else "", args.out_file)
    return EXIT_OK


def _bench_csv(rows, meta):
    buf = io.StringIO()
    buf.write(f"# {BENCH_FORMAT}\n")
    for k, v in meta.items():
        buf.write(f"# {k}={v}\n")
    writer = csv.writer(buf)
    writer.writerow(["n", "strategy", "backend", "repetitions", "min_s", "median_s"])
    for r in rows:
        writer.writerow([r.n, r.strategy, r.backend, r.repetitions, f"{r.min_s:.6f}", f"{r.median_s:.6f}"])
    return buf.getvalue().rstrip("\n")


def cmd_bench(args) -> int:
    strategies = [s.strip() for s in args.strategies.split(",") if s.strip()]
    for s in strategies:
        if s not in bench_mod.STRATEGIES:
            raise ConfigError(f"unknown strategy {s!r}; choose from {bench_mod.STRATEGIES}")
    if args.n_min > args.n_max:
        raise ConfigError("--n-min must not exceed --n-max")
    meta = bench_mod.environment_metadata()
    rows = bench_mod.bench_qae(
        range(args.n_min, args.n_max + 1), strategies, args.reps, args.backend
    )
    if args.output == "csv":
        _emit(_bench_csv(rows, meta), args.out_file)
    elif args.output == "json":
        body = {
            "format": BENCH_FORMAT,
            "environment": meta,
            "rows": [r.__dict__ for r in rows],
        }
        _emit(json.dumps(body, indent=2), args.out_file)
    else:
        lines = [f"# {k}={v}" for k, v in meta.items()]
        lines.append(f"{'n':>4} {'strategy':>14} {'backend':>8} {'reps':>5} {'min_s':>10} {'median_s':>10}")
        for r in rows:
            lines.append(
                f"{r.n:>4} {r.strategy:>14} {r.backend:>8} {r.repetitions:>5} {r.min_s:>10.6f} {r.median_s:>10.6f}"
            )
        _emit("\n".join(lines), args.out_file)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qchiplet", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, mode_choices):
        p.add_argument("--shots", type=int, default=0, help="0 = exact probabilities")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--mode", choices=mode_choices, default=mode_choices[0])
        p.add_argument("--backend", choices=["numba", "numpy"], default=None,
                       help="kernel backend for state-update mode")
        p.add_argument("--output", choices=["table", "csv", "json"], default="table")
        p.add_argument("--out-file", default=None)
        p.add_argument("--max-dim", type=int, default=None,
                       help="override the dense operator dimension cap")

    p_run = sub.add_parser("run", help="simulate a circuit document")
    p_run.add_argument("file")
    common(p_run, ["merged", "naive", "state-update"])
    p_run.set_defaults(func=cmd_run)

    p_qae = sub.add_parser("qae", help="run amplitude estimation")
    p_qae.add_argument("--amplitude", "-a", type=float, default=None)
    p_qae.add_argument("--a-circuit", default=None, help="circuit document for the A block")
    p_qae.add_argument("--flag", default=None, help="flag qubit label in the A document")
    p_qae.add_argument("-m", type=int, default=3, help="evaluation qubit count")
    common(p_qae, ["auto", "full-matrix", "state-update"])
    p_qae.set_defaults(func=cmd_qae)

    p_qpr = sub.add_parser("qpr", help="execute a symbolic polynomial script")
    p_qpr.add_argument("script")
    p_qpr.add_argument("--out-file", default=None)
    p_qpr.set_defaults(func=cmd_qpr, max_dim=None)

    p_bench = sub.add_parser("bench", help="time merged/naive/state-update strategies")
    p_bench.add_argument("--n-min", type=int, default=6)
    p_bench.add_argument("--n-max", type=int, default=10)
    p_bench.add_argument("--reps", type=int, default=3)
    p_bench.add_argument("--strategies", default="merged,naive,state-update")
    p_bench.add_argument("--backend", choices=["auto", "numba", "numpy", "both"], default="auto")
    p_bench.add_argument("--output", choices=["table", "csv", "json"], default="table")
    p_bench.add_argument("--out-file", default=None)
    p_bench.add_argument("--max-dim", type=int, default=None)
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "max_dim", None):
            set_dimension_cap(args.max_dim)
        return args.func(args)
    except (DimensionLimitError, MemoryError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except (QChipletError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
