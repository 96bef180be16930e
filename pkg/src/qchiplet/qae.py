"""Reference amplitude-estimation circuit.

Layout for m evaluation qubits and an n_state-qubit state register:
qubits 0..m-1 are the evaluation register (qubit j controls Q**(2**j)),
qubits m..m+n_state-1 hold the state register.  The pipeline is
A, H on the evaluation qubits, the controlled Grover powers, then the
inverse QFT (bit reversal folded in) and measurement of the evaluation
register.
"""

import math
from dataclasses import dataclass

import numpy as np

from .circuit import Chiplet, Circuit, CircuitLayer, GatePlacement, power, simulate
from .config import check_dimension, get_dimension_cap
from .errors import ConfigError, ParameterError, ShapeError
from .gates import Gate, gate_matrix
from .histogram import HistogramRecord, exact_histogram, sample_histogram
from .linalg import basis_state, dagger, is_unitary


def zero_reflection(n: int) -> np.ndarray:
    """I - 2|0...0><0...0| on n qubits."""
    m = np.eye(1 << n, dtype=np.complex128)
    m[0, 0] = -1.0
    return m


def flag_reflection(n: int, flag: int) -> np.ndarray:
    """Phase flip on basis states whose flag qubit reads 0.

    The flip-on-0 sign convention makes the Grover operator for a
    single-qubit amplitude loader a plain rotation by 2*theta, so its
    eigenphases are +-2*arcsin(sqrt(a)); the flip-on-1 variant is exactly
    the negated operator.
    """
    dim = 1 << n
    bit = 1 << (n - 1 - flag)
    d = np.ones(dim, dtype=np.complex128)
    for i in range(dim):
        if not i & bit:
            d[i] = -1.0
    return np.diag(d)


def grover_q(a: Chiplet, flag: int = 0) -> Chiplet:
    """Q = A * M000 * A^dagger * M_F for state-preparation chiplet A."""
    if not 0 <= flag < a.n:
        raise ConfigError(f"flag qubit {flag} out of range for {a.n} state qubits")
    if not is_unitary(a.matrix, 1e-9):
        raise ShapeError("state-preparation block must be unitary")
    q = a.matrix @ zero_reflection(a.n) @ dagger(a.matrix) @ flag_reflection(a.n, flag)
    return Chiplet("Q", a.n, q, (a.name, "M000", f"MF@{flag}"))


def qft(m: int) -> np.ndarray:
    return dagger(inverse_qft(m))


def inverse_qft(m: int) -> np.ndarray:
    """The normalized conjugate DFT matrix: (1/sqrt(N)) exp(-2*pi*i*j*k/N)."""
    dim = 1 << m
    check_dimension(dim)
    j, k = np.meshgrid(np.arange(dim), np.arange(dim), indexing="ij")
    return np.exp(-2j * np.pi * j * k / dim) / math.sqrt(dim)


def bit_reversal_permutation(m: int) -> np.ndarray:
    dim = 1 << m
    p = np.zeros((dim, dim), dtype=np.complex128)
    for i in range(dim):
        rev = int(format(i, f"0{m}b")[::-1], 2)
        p[rev, i] = 1.0
    return p


def decode_amplitude(y: int, m: int) -> float:
    if not 0 <= y < (1 << m):
        raise ParameterError(f"outcome {y} out of range for {m} evaluation qubits")
    return math.sin(math.pi * y / (1 << m)) ** 2


def amplitude_loader(a: float) -> Chiplet:
    """Single-qubit A sending |0> to sqrt(1-a)|0> + sqrt(a)|1>."""
    return Chiplet("A", 1, gate_matrix("AMP", [a]).matrix, ("AMP",))


@dataclass(frozen=True)
class QaeConfig:
    a: Chiplet          # state-preparation block over the state register
    flag: int = 0       # index of the flag qubit within the state register
    m: int = 3          # evaluation qubit count
    shots: int = 0      # 0 = exact probabilities only
    seed: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise ConfigError("need at least one evaluation qubit")
        if self.a.n < 1:
            raise ConfigError("state register must have at least one qubit")
        if not 0 <= self.flag < self.a.n:
            raise ConfigError(f"flag index {self.flag} out of range")
        if self.shots < 0:
            raise ConfigError("shots must be non-negative")

    @property
    def n_state(self) -> int:
        return self.a.n

    @property
    def n_total(self) -> int:
        return self.m + self.a.n


@dataclass(frozen=True)
class QaeResult:
    histogram: HistogramRecord
    estimate: float
    peak_outcome: int
    q_applications: int


def build_qae(cfg: QaeConfig, expand_powers: bool = False) -> Circuit:
    """Assemble the full estimation circuit.

    With expand_powers the controlled Q**(2**j) blocks are unrolled into
    repeated controlled-Q placements (2**m - 1 in total), mirroring the
    un-merged design; otherwise each power is a single pre-merged block.
    """
    n = cfg.n_total
    state_qubits = tuple(range(cfg.m, n))
    q = grover_q(cfg.a, cfg.flag)

    layers = [
        CircuitLayer((GatePlacement(cfg.a.as_gate(), state_qubits, n),), n),
        CircuitLayer(
            tuple(GatePlacement(gate_matrix("H"), (j,), n) for j in range(cfg.m)), n
        ),
    ]
    for j in range(cfg.m):
        reps = 1 << j
        if expand_powers:
            for _ in range(reps):
                layers.append(
                    CircuitLayer(
                        (GatePlacement(q.as_gate(), state_qubits, n, ((j, 1),)),), n
                    )
                )
        else:
            qk = power(q, reps)
            layers.append(
                CircuitLayer(
                    (GatePlacement(qk.as_gate(), state_qubits, n, ((j, 1),)),), n
                )
            )
    read = inverse_qft(cfg.m) @ bit_reversal_permutation(cfg.m)
    iqft_gate = Gate("IQFT", cfg.m, read, tol=1e-9)
    layers.append(CircuitLayer((GatePlacement(iqft_gate, tuple(range(cfg.m)), n),), n))
    return Circuit(n, tuple(layers), "qae")


def count_q_applications(cfg: QaeConfig) -> int:
    return (1 << cfg.m) - 1


def run_qae(cfg: QaeConfig, mode: str = "auto", backend=None, expand_powers: bool = False) -> QaeResult:
    """Simulate the estimation circuit and decode the amplitude.

    The estimate is sin^2(pi*y/2**m) at the most probable evaluation
    outcome y (ties resolved toward smaller y).
    """
    if mode == "auto":
        mode = "full-matrix" if (1 << cfg.n_total) <= get_dimension_cap() else "state-update"
    circuit = build_qae(cfg, expand_powers=expand_powers)
    state = simulate(circuit, basis_state(cfg.n_total), mode=mode, backend=backend)

    probs_full = np.abs(state) ** 2
    outcome_probs = probs_full.reshape(1 << cfg.m, 1 << cfg.n_state).sum(axis=1)
    if cfg.shots > 0:
        hist = sample_histogram(outcome_probs, cfg.m, cfg.shots, cfg.seed)
    else:
        hist = exact_histogram(outcome_probs, cfg.m)
    # smallest y among near-ties, so the decoded estimate is deterministic
    peak = int(np.flatnonzero(outcome_probs >= outcome_probs.max() - 1e-12)[0])
    return QaeResult(hist, decode_amplitude(peak, cfg.m), peak, count_q_applications(cfg))
