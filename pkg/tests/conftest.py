"""Shared oracles and random-circuit helpers.

The embedding oracle here deliberately takes a different route from the
library (permutation conjugation of a front-embedded kron, plus projector
masking for controls) so library bugs cannot cancel out in tests.
"""

import numpy as np
import pytest

from qchiplet.circuit import circuit_from_placements
from qchiplet.gates import GatePlacement, gate_matrix
from qchiplet.qpr import apply_qpr, init_qpr

H2 = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
X2 = np.array([[0, 1], [1, 0]], dtype=complex)
Z2 = np.diag([1, -1]).astype(complex)
I2 = np.eye(2, dtype=complex)
CX4 = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)


def permutation_matrix(n, order):
    """P with (P psi) reading qubit order[pos] at position pos."""
    dim = 1 << n
    p = np.zeros((dim, dim), dtype=complex)
    for i in range(dim):
        bits = [(i >> (n - 1 - q)) & 1 for q in range(n)]
        j = 0
        for pos in range(n):
            j = (j << 1) | bits[order[pos]]
        p[j, i] = 1.0
    return p


def oracle_embed(gate, targets, n, controls=()):
    """Reference n-qubit embedding of `gate` (2**k square) with controls."""
    k = len(targets)
    order = list(targets) + [q for q in range(n) if q not in targets]
    perm = permutation_matrix(n, order)
    core = np.kron(gate, np.eye(1 << (n - k), dtype=complex))
    u = perm.conj().T @ core @ perm
    if not controls:
        return u
    cmask = cval = 0
    for q, pol in controls:
        bit = 1 << (n - 1 - q)
        cmask |= bit
        if pol:
            cval |= bit
    match = np.array([(i & cmask) == cval for i in range(1 << n)], dtype=float)
    proj = np.diag(match).astype(complex)
    return u @ proj + np.eye(1 << n, dtype=complex) - proj


def random_ops(rng, n, count):
    """Descriptors usable by both the matrix and the symbolic engines."""
    ops = []
    for _ in range(count):
        name = rng.choice(["H", "X", "Z", "CX", "CCX", "AMP"])
        qubits = list(rng.permutation(n))
        if name in ("H", "X", "Z", "AMP"):
            targets, n_ctl = qubits[:1], 0
        elif name == "CX":
            targets, n_ctl = qubits[:1], 1
        else:
            targets, n_ctl = qubits[:1], 2
            if n < 3:
                continue
        controls = tuple(
            (int(q), int(rng.integers(2))) for q in qubits[1 : 1 + n_ctl]
        )
        param = float(rng.uniform(0, 1)) if name == "AMP" else None
        ops.append((name if name in ("H", "X", "Z", "AMP") else "X", tuple(int(t) for t in targets), controls, param))
    return ops


def ops_to_circuit(ops, n):
    placements = []
    for name, targets, controls, param in ops:
        params = [param] if param is not None else []
        placements.append(GatePlacement(gate_matrix(name, params), targets, n, controls))
    return circuit_from_placements(n, placements)


def ops_to_qpr(ops, n):
    labels = [f"q{i}" for i in range(n)]
    poly = init_qpr(labels)
    for name, targets, controls, param in ops:
        poly = apply_qpr(
            poly,
            name,
            [labels[t] for t in targets],
            [(labels[q], pol) for q, pol in controls],
            param,
        )
    return poly


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture(autouse=True)
def _reset_dimension_cap():
    # --max-dim is per-invocation in real use; undo in-process overrides
    from qchiplet import config

    saved = config._cap
    yield
    config._cap = saved
