"""Dense complex linear algebra: the kron-and-dot substrate.

Operators are square complex128 ndarrays of side 2**k, states are 1-D
complex128 ndarrays of length 2**n.  All functions are pure; inputs are
never mutated.
"""

import numpy as np

from .config import check_dimension
from .errors import DegenerateStateError, ShapeError

DEFAULT_UNITARY_TOL = 1e-10


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got ndim={m.ndim}")
    return m


def as_state(v) -> np.ndarray:
    s = np.asarray(v, dtype=np.complex128).reshape(-1)
    if s.size == 0:
        raise ShapeError("state vector must be non-empty")
    return s


def is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


def kron(a, b) -> np.ndarray:
    """Kronecker product; checks the result against the dimension cap."""
    a, b = as_matrix(a), as_matrix(b)
    check_dimension(a.shape[0] * b.shape[0])
    check_dimension(a.shape[1] * b.shape[1])
    return np.kron(a, b)


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"matmul shape mismatch: {a.shape} x {b.shape}")
    return a @ b


def apply(m, v) -> np.ndarray:
    """Apply operator m to state v."""
    m, v = as_matrix(m), as_state(v)
    if m.shape[1] != v.shape[0]:
        raise ShapeError(f"operator {m.shape} cannot act on state of dim {v.shape[0]}")
    return m @ v


def dagger(m) -> np.ndarray:
    return as_matrix(m).conj().T


def is_unitary(m, tol: float = DEFAULT_UNITARY_TOL) -> bool:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"unitarity check needs a square matrix, got {m.shape}")
    delta = dagger(m) @ m - np.eye(m.shape[0])
    return float(np.max(np.abs(delta))) <= tol


def norm(v) -> float:
    return float(np.linalg.norm(as_state(v)))


def normalize(v) -> np.ndarray:
    v = as_state(v)
    n = np.linalg.norm(v)
    if n == 0.0:
        raise DegenerateStateError("cannot normalize the zero vector")
    return v / n


def basis_state(n_qubits: int, index: int = 0) -> np.ndarray:
    """|index> on n_qubits qubits (qubit 0 is the most significant bit)."""
    dim = 1 << n_qubits
    if not 0 <= index < dim:
        raise ShapeError(f"basis index {index} out of range for {n_qubits} qubits")
    v = np.zeros(dim, dtype=np.complex128)
    v[index] = 1.0
    return v
