"""Gate library and embedding of gates into n-qubit operators.

Qubit convention: qubit 0 is the leftmost / most significant bit of the
basis index, so index = sum(b_i * 2**(n-1-i)).  This makes the textbook
kron expression H (x) H (x) I literally equal to the embedding of H on
qubits 0 and 1 of a 3-qubit register.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .config import check_dimension
from .errors import ParameterError, PlacementError, ShapeError, UnknownGateError
from .linalg import as_matrix, is_power_of_two, is_unitary

SQRT_HALF = 1.0 / math.sqrt(2.0)

POSITIVE = 1
NEGATIVE = 0


def _h() -> np.ndarray:
    return SQRT_HALF * np.array([[1, 1], [1, -1]], dtype=np.complex128)


def _amp(s: float) -> np.ndarray:
    # Amplitude-loading rotation: |0> -> sqrt(1-s)|0> + sqrt(s)|1>.
    # The |1> column completes a real rotation (RY(2*arcsin(sqrt(s)))).
    if not 0.0 <= s <= 1.0:
        raise ParameterError(f"AMP parameter must lie in [0, 1], got {s}")
    c, r = math.sqrt(1.0 - s), math.sqrt(s)
    return np.array([[c, -r], [r, c]], dtype=np.complex128)


@dataclass(frozen=True)
class Gate:
    """A named unitary on `arity` qubits."""

    name: str
    arity: int
    matrix: np.ndarray
    params: tuple = ()
    tol: float = 1e-10

    def __post_init__(self):
        m = as_matrix(self.matrix)
        dim = 1 << self.arity
        if m.shape != (dim, dim):
            raise ShapeError(
                f"gate {self.name}: matrix shape {m.shape} does not match arity {self.arity}"
            )
        if not is_unitary(m, self.tol):
            raise ShapeError(f"gate {self.name}: matrix is not unitary within {self.tol}")
        object.__setattr__(self, "matrix", m)


def gate_matrix(name: str, params=()) -> Gate:
    """Build a library gate by name.

    Known names: X, Z, H, CX, CCX, R(theta), RY(theta), AMP(s).
    """
    params = tuple(float(p) for p in params)

    def expect(count):
        if len(params) != count:
            raise ParameterError(f"gate {name} takes {count} parameter(s), got {len(params)}")

    if name == "X":
        expect(0)
        return Gate("X", 1, np.array([[0, 1], [1, 0]], dtype=np.complex128))
    if name == "Z":
        expect(0)
        return Gate("Z", 1, np.diag([1, -1]).astype(np.complex128))
    if name == "H":
        expect(0)
        return Gate("H", 1, _h())
    if name == "CX":
        expect(0)
        return Gate("CX", 2, controlled(np.array([[0, 1], [1, 0]], dtype=np.complex128)))
    if name == "CCX":
        expect(0)
        cx = controlled(np.array([[0, 1], [1, 0]], dtype=np.complex128))
        return Gate("CCX", 3, controlled(cx))
    if name == "R":
        expect(1)
        return Gate("R", 1, np.diag([1.0, np.exp(1j * params[0])]), params)
    if name == "RY":
        expect(1)
        half = params[0] / 2.0
        m = np.array(
            [[math.cos(half), -math.sin(half)], [math.sin(half), math.cos(half)]],
            dtype=np.complex128,
        )
        return Gate("RY", 1, m, params)
    if name == "AMP":
        expect(1)
        return Gate("AMP", 1, _amp(params[0]), params)
    raise UnknownGateError(f"unknown gate name {name!r}")


def controlled(u) -> np.ndarray:
    """diag(I, u): identity when the new (most significant) control is 0."""
    u = as_matrix(u)
    if u.shape[0] != u.shape[1] or not is_power_of_two(u.shape[0]):
        raise ShapeError(f"controlled() needs a square power-of-two matrix, got {u.shape}")
    dim = u.shape[0]
    check_dimension(2 * dim)
    out = np.eye(2 * dim, dtype=np.complex128)
    out[dim:, dim:] = u
    return out


@dataclass(frozen=True)
class GatePlacement:
    """A gate bound to target qubits, optionally conditioned on controls.

    Controls are (qubit, polarity) pairs; polarity is the activating bit
    value (1 = positive, 0 = negative).
    """

    gate: Gate
    targets: tuple
    n: int
    controls: tuple = field(default=())

    def __post_init__(self):
        targets = tuple(int(t) for t in self.targets)
        controls = tuple((int(q), int(p)) for q, p in self.controls)
        object.__setattr__(self, "targets", targets)
        object.__setattr__(self, "controls", controls)
        if len(targets) != self.gate.arity:
            raise PlacementError(
                f"gate {self.gate.name} has arity {self.gate.arity}, got {len(targets)} targets"
            )
        used = list(targets) + [q for q, _ in controls]
        if len(set(used)) != len(used):
            raise PlacementError(f"overlapping qubit indices in placement: {used}")
        if any(not 0 <= q < self.n for q in used):
            raise PlacementError(f"qubit index out of range for n={self.n}: {used}")
        if any(p not in (0, 1) for _, p in controls):
            raise PlacementError("control polarity must be 0 or 1")

    @property
    def qubits(self):
        return set(self.targets) | {q for q, _ in self.controls}


def target_bit_positions(p: GatePlacement) -> np.ndarray:
    """Bit position (LSB = 0) of each target; targets[0] is the gate's MSB."""
    return np.array([p.n - 1 - t for t in p.targets], dtype=np.int64)


def control_masks(p: GatePlacement):
    """(mask, value): index i satisfies the controls iff i & mask == value."""
    mask = 0
    value = 0
    for q, pol in p.controls:
        bit = 1 << (p.n - 1 - q)
        mask |= bit
        if pol == POSITIVE:
            value |= bit
    return mask, value


def embed(p: GatePlacement) -> np.ndarray:
    """Full 2**n operator acting as p.gate on its targets.

    Acts as the gate on basis states whose controls all match their
    polarity and as the identity elsewhere.
    """
    dim = 1 << p.n
    check_dimension(dim)
    g = p.gate.matrix
    k = p.gate.arity
    dk = 1 << k
    tpos = target_bit_positions(p)
    cmask, cval = control_masks(p)

    offsets = np.zeros(dk, dtype=np.int64)
    tmask = 0
    for t in range(dk):
        off = 0
        for b in range(k):
            if (t >> (k - 1 - b)) & 1:
                off |= 1 << int(tpos[b])
        offsets[t] = off
        tmask |= off

    idx = np.arange(dim, dtype=np.int64)
    matched = (idx & cmask) == cval
    out = np.zeros((dim, dim), dtype=np.complex128)
    unmatched = idx[~matched]
    out[unmatched, unmatched] = 1.0

    cols = idx[matched]
    base = cols & ~tmask
    t_in = np.zeros_like(cols)
    for b in range(k):
        t_in |= ((cols >> int(tpos[b])) & 1) << (k - 1 - b)
    rows = base[:, None] + offsets[None, :]
    out[rows, cols[:, None]] = g[:, t_in].T
    return out
