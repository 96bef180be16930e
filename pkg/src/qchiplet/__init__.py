"""qchiplet: matrix-based quantum circuit simulation with pre-merged blocks.

Core pieces: dense kron-and-dot linear algebra (`linalg`), a gate library
with arbitrary-qubit embedding (`gates`), circuits and reusable merged
chiplets (`circuit`), a symbolic polynomial state calculus (`qpr`), a
reference amplitude-estimation pipeline (`qae`), and a CLI (`cli`).
"""

from .circuit import (
    Chiplet,
    ChipletLibrary,
    Circuit,
    CircuitLayer,
    circuit_from_placements,
    merge,
    power,
    simulate,
)
from .gates import Gate, GatePlacement, controlled, embed, gate_matrix
from .linalg import apply, basis_state, dagger, is_unitary, kron, matmul, norm, normalize
from .qae import QaeConfig, QaeResult, amplitude_loader, build_qae, decode_amplitude, grover_q, inverse_qft, qft, run_qae
from .qpr import QprPolynomial, apply_qpr, collect, eval_qpr, init_qpr, probability

__version__ = "0.1.0"

__all__ = [
    "Chiplet",
    "ChipletLibrary",
    "Circuit",
    "CircuitLayer",
    "Gate",
    "GatePlacement",
    "QaeConfig",
    "QaeResult",
    "QprPolynomial",
    "amplitude_loader",
    "apply",
    "apply_qpr",
    "basis_state",
    "build_qae",
    "circuit_from_placements",
    "collect",
    "controlled",
    "dagger",
    "decode_amplitude",
    "embed",
    "eval_qpr",
    "gate_matrix",
    "grover_q",
    "init_qpr",
    "inverse_qft",
    "is_unitary",
    "kron",
    "matmul",
    "merge",
    "norm",
    "normalize",
    "power",
    "probability",
    "qft",
    "run_qae",
    "simulate",
]
