"""Merged-vs-naive benchmark over the amplitude-estimation workload.

Strategies:

* merged       - controlled Q**(2**j) blocks pre-merged by repeated
                 squaring, full-matrix application;
* naive        - every controlled-Q application materialized separately
                 (2**m - 1 embeddings of the full operator);
* state-update - pre-merged blocks applied through the dense-state kernels
                 without forming any 2**n x 2**n matrix.

Timing uses the monotonic clock; one warm-up run per cell is excluded and
min/median over the remaining repetitions are reported.
"""

import platform
import statistics
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import kernels
from .circuit import circuit_from_placements, merge
from .gates import GatePlacement, gate_matrix
from .qae import QaeConfig, run_qae

STRATEGIES = ("merged", "naive", "state-update")

BENCH_AMPLITUDE = 0.3
BENCH_M = 3


@dataclass(frozen=True)
class BenchRow:
    n: int
    strategy: str
    backend: str
    repetitions: int
    min_s: float
    median_s: float


def environment_metadata() -> dict:
    import numpy

    meta = {
        "cpu": platform.processor() or platform.machine(),
        "platform": platform.platform(),
        "python": sys.version.split()[0],
        "numpy": numpy.__version__,
        "numba_available": kernels.HAVE_NUMBA,
        "default_kernel_backend": kernels.DEFAULT_BACKEND,
    }
    if kernels.HAVE_NUMBA:
        import numba

        meta["numba"] = numba.__version__
    return meta


def workload_config(n_total: int, m: int = BENCH_M) -> QaeConfig:
    """QAE instance over n_total qubits: H on every non-flag state qubit,
    amplitude loader on the flag."""
    n_state = n_total - m
    if n_state < 1:
        raise ValueError(f"need at least {m + 1} qubits, got {n_total}")
    placements = [GatePlacement(gate_matrix("AMP", [BENCH_AMPLITUDE]), (0,), n_state)]
    placements += [GatePlacement(gate_matrix("H"), (q,), n_state) for q in range(1, n_state)]
    a = merge(circuit_from_placements(n_state, placements), "A")
    return QaeConfig(a, flag=0, m=m)


def run_workload(n_total: int, strategy: str, backend=None) -> np.ndarray:
    cfg = workload_config(n_total)
    if strategy == "merged":
        return run_qae(cfg, mode="full-matrix")
    if strategy == "naive":
        return run_qae(cfg, mode="full-matrix", expand_powers=True)
    if strategy == "state-update":
        return run_qae(cfg, mode="state-update", backend=backend)
    raise ValueError(f"unknown strategy {strategy!r}")


def time_cell(n_total: int, strategy: str, repetitions: int, backend=None) -> BenchRow:
    run_workload(n_total, strategy, backend)  # warm-up (JIT compile, caches)
    samples = []
    for _ in range(repetitions):
        t0 = time.perf_counter()
        run_workload(n_total, strategy, backend)
        samples.append(time.perf_counter() - t0)
    label = (backend or kernels.DEFAULT_BACKEND) if strategy == "state-update" else "-"
    return BenchRow(
        n_total, strategy, label, repetitions, min(samples), statistics.median(samples)
    )


def bench_qae(n_values, strategies=STRATEGIES, repetitions: int = 3, backend="auto"):
    """Full timing grid; state-update rows run once per requested backend."""
    rows = []
    for n in n_values:
        for strategy in strategies:
            if strategy == "state-update":
                if backend == "both":
                    backends = ["numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])
                elif backend == "auto":
                    backends = [kernels.DEFAULT_BACKEND]
                else:
                    backends = [backend]
                for b in backends:
                    rows.append(time_cell(n, strategy, repetitions, b))
            else:
                rows.append(time_cell(n, strategy, repetitions))
    return rows
