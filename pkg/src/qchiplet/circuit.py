"""Circuits, layers, and pre-merged chiplet blocks.

A Circuit is an ordered list of layers of non-overlapping placements;
`merge` collapses it into a single reusable unitary (a Chiplet), `power`
exponentiates a chiplet by repeated squaring, and `simulate` runs either
by materializing full operators or by direct state update through the
kernels module.
"""

from dataclasses import dataclass, field

import numpy as np

from .config import check_dimension
from .errors import LibraryError, PlacementError, ShapeError
from .gates import Gate, GatePlacement, control_masks, embed, target_bit_positions
from .kernels import apply_gate_inplace
from .linalg import as_state, is_unitary

CHIPLET_UNITARY_TOL = 1e-9


@dataclass(frozen=True)
class CircuitLayer:
    placements: tuple
    n: int

    def __post_init__(self):
        object.__setattr__(self, "placements", tuple(self.placements))
        seen = set()
        for p in self.placements:
            if p.n != self.n:
                raise PlacementError(f"placement n={p.n} does not match layer n={self.n}")
            if seen & p.qubits:
                raise PlacementError(f"qubits {sorted(seen & p.qubits)} appear twice in one layer")
            seen |= p.qubits


@dataclass(frozen=True)
class Circuit:
    n: int
    layers: tuple
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        for layer in self.layers:
            if layer.n != self.n:
                raise PlacementError(f"layer n={layer.n} does not match circuit n={self.n}")

    @property
    def placements(self):
        for layer in self.layers:
            yield from layer.placements


def circuit_from_placements(n, placements, name=""):
    """One placement per layer, in order."""
    return Circuit(n, tuple(CircuitLayer((p,), n) for p in placements), name)


@dataclass(frozen=True)
class Chiplet:
    """A named, pre-merged unitary block over n qubits."""

    name: str
    n: int
    matrix: np.ndarray
    provenance: tuple = ()

    def __post_init__(self):
        dim = 1 << self.n
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.shape != (dim, dim):
            raise ShapeError(f"chiplet {self.name}: matrix shape {m.shape}, expected {dim}x{dim}")
        if not is_unitary(m, CHIPLET_UNITARY_TOL):
            raise ShapeError(f"chiplet {self.name}: matrix not unitary within {CHIPLET_UNITARY_TOL}")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "provenance", tuple(self.provenance))

    def as_gate(self) -> Gate:
        return Gate(self.name, self.n, self.matrix, tol=CHIPLET_UNITARY_TOL)


def layer_matrix(layer: CircuitLayer) -> np.ndarray:
    dim = 1 << layer.n
    check_dimension(dim)
    out = None
    for p in layer.placements:
        u = embed(p)
        out = u if out is None else u @ out
    return np.eye(dim, dtype=np.complex128) if out is None else out


def merge(c: Circuit, name: str = "") -> Chiplet:
    """Pre-calculate the whole circuit as one matrix (right-to-left product)."""
    dim = 1 << c.n
    check_dimension(dim)
    out = np.eye(dim, dtype=np.complex128)
    for layer in c.layers:
        out = layer_matrix(layer) @ out
    return Chiplet(name or c.name or "merged", c.n, out, tuple(f"layer{i}" for i in range(len(c.layers))))


def power(ch: Chiplet, k: int) -> Chiplet:
    """ch.matrix**k by repeated squaring; k = 0 gives the identity chiplet."""
    if k < 0:
        raise PlacementError("chiplet power must be non-negative")
    result = np.eye(1 << ch.n, dtype=np.complex128)
    base = ch.matrix
    e = k
    while e:
        if e & 1:
            result = result @ base
        e >>= 1
        if e:
            base = base @ base
    return Chiplet(f"{ch.name}^{k}", ch.n, result, ch.provenance + (f"power={k}",))


def apply_placement(state: np.ndarray, p: GatePlacement, backend=None) -> np.ndarray:
    """Apply one placement to a 2**n state without forming the 2**n operator."""
    cmask, cval = control_masks(p)
    return apply_gate_inplace(state, p.gate.matrix, target_bit_positions(p), cmask, cval, backend)


def simulate(c, v0, mode: str = "full-matrix", backend=None) -> np.ndarray:
    """Run a Circuit (or a single Chiplet) on initial state v0.

    full-matrix materializes each layer operator; state-update applies
    placements directly through the kernels and never allocates a
    2**n x 2**n matrix.
    """
    if isinstance(c, Chiplet):
        c = circuit_from_placements(c.n, [GatePlacement(c.as_gate(), tuple(range(c.n)), c.n)], c.name)
    v = as_state(v0).copy()
    if v.shape[0] != 1 << c.n:
        raise ShapeError(f"state dim {v.shape[0]} does not match {c.n} qubits")
    if mode == "full-matrix":
        check_dimension(1 << c.n)
        for p in c.placements:
            v = embed(p) @ v
        return v
    if mode == "state-update":
        for p in c.placements:
            v = apply_placement(v, p, backend)
        return v
    raise PlacementError(f"unknown simulation mode {mode!r}")


@dataclass
class ChipletLibrary:
    entries: dict = field(default_factory=dict)

    def register(self, ch: Chiplet) -> "ChipletLibrary":
        if ch.name in self.entries:
            raise LibraryError(f"chiplet {ch.name!r} already registered")
        self.entries[ch.name] = ch
        return self

    def instantiate(self, name, targets, n, controls=(), k: int = 1) -> GatePlacement:
        """Place a registered chiplet (optionally exponentiated) on `targets`.

        `controls` adds ordinary control qubits, as in the controlled
        Grover-power blocks: inactive placements leave the state unchanged.
        """
        if name not in self.entries:
            raise LibraryError(f"chiplet {name!r} is not registered")
        ch = self.entries[name]
        if k != 1:
            ch = power(ch, k)
        return GatePlacement(ch.as_gate(), tuple(targets), n, tuple(controls))
