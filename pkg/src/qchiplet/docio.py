"""Circuit document parsing, validation, and compilation.

Documents are JSON with an explicit version, an ordered qubit list, named
reusable sub-circuit blocks ("chiplets"), and a flat program of gate or
chiplet-reference operations.  Example:

    {
      "version": 1,
      "qubits": ["A", "B", "C"],
      "initial_state": "000",
      "chiplets": {
        "bell": {"qubits": ["x", "y"],
                 "program": [{"gate": "H", "targets": ["x"]},
                             {"gate": "CX", "targets": ["x", "y"]}]}
      },
      "program": [
        {"gate": "H", "targets": ["A"]},
        {"chiplet": "bell", "targets": ["B", "C"], "power": 2,
         "controls": [{"qubit": "A", "polarity": "negative"}]}
      ]
    }

Controls may be written as a bare label (positive polarity) or an object
with "polarity": "positive"/"negative" (or 1/0).  Chiplet blocks must be
defined before they are referenced, which also rules out cycles.
"""

import json
from dataclasses import dataclass, field

from .circuit import Chiplet, ChipletLibrary, Circuit, CircuitLayer, merge, simulate
from .errors import DocumentError, QChipletError
from .gates import GatePlacement, gate_matrix
from .linalg import basis_state

DOCUMENT_VERSION = 1

GATE_NAMES = ("X", "Z", "H", "CX", "CCX", "R", "RY", "AMP")


@dataclass(frozen=True)
class Operation:
    """One program step: a named gate or a chiplet reference."""

    kind: str            # "gate" | "chiplet"
    name: str
    targets: tuple
    params: tuple = ()
    controls: tuple = ()  # (label, polarity) pairs
    power: int = 1


@dataclass(frozen=True)
class CircuitDocument:
    version: int
    qubits: tuple
    program: tuple
    chiplets: tuple = ()  # (name, sub_document) pairs, in definition order
    initial_state: str = None

    def qubit_index(self, label, where):
        try:
            return self.qubits.index(label)
        except ValueError:
            raise DocumentError(f"unknown qubit label {label!r}", where)


def _parse_controls(raw, where):
    out = []
    for i, c in enumerate(raw):
        loc = f"{where}.controls[{i}]"
        if isinstance(c, str):
            out.append((c, 1))
            continue
        if not isinstance(c, dict) or "qubit" not in c:
            raise DocumentError("control must be a label or an object with 'qubit'", loc)
        pol = c.get("polarity", 1)
        if pol in ("positive", 1, True):
            pol = 1
        elif pol in ("negative", 0, False):
            pol = 0
        else:
            raise DocumentError(f"bad polarity {pol!r}", loc)
        out.append((c["qubit"], pol))
    return tuple(out)


def _parse_operation(raw, where, chiplet_names):
    if not isinstance(raw, dict):
        raise DocumentError("operation must be an object", where)
    has_gate, has_chip = "gate" in raw, "chiplet" in raw
    if has_gate == has_chip:
        raise DocumentError("operation needs exactly one of 'gate' or 'chiplet'", where)
    targets = raw.get("targets")
    if not isinstance(targets, list) or not targets:
        raise DocumentError("'targets' must be a non-empty list", where)
    controls = _parse_controls(raw.get("controls", []), where)
    if has_gate:
        name = raw["gate"]
        if name not in GATE_NAMES:
            raise DocumentError(f"unknown gate {name!r}", f"{where}.gate")
        params = tuple(float(p) for p in raw.get("params", []))
        if raw.get("power", 1) != 1:
            raise DocumentError("'power' applies to chiplet references only", where)
        return Operation("gate", name, tuple(targets), params, controls)
    name = raw["chiplet"]
    if name not in chiplet_names:
        raise DocumentError(f"reference to undefined chiplet {name!r}", f"{where}.chiplet")
    power = raw.get("power", 1)
    if not isinstance(power, int) or power < 0:
        raise DocumentError("'power' must be a non-negative integer", where)
    return Operation("chiplet", name, tuple(targets), (), controls, power)


def _parse_body(raw, where, known_chiplets):
    qubits = raw.get("qubits")
    if not isinstance(qubits, list) or not qubits:
        raise DocumentError("'qubits' must be a non-empty list of labels", where)
    if len(set(qubits)) != len(qubits):
        raise DocumentError("qubit labels collide", f"{where}.qubits")
    program_raw = raw.get("program")
    if not isinstance(program_raw, list):
        raise DocumentError("'program' must be a list", where)
    program = tuple(
        _parse_operation(op, f"{where}.program[{i}]", known_chiplets)
        for i, op in enumerate(program_raw)
    )
    return tuple(qubits), program


def parse_circuit(text) -> CircuitDocument:
    """Parse and validate a circuit document from JSON text or a dict."""
    if isinstance(text, (str, bytes)):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise DocumentError(f"invalid JSON: {e}")
    else:
        raw = text
    if not isinstance(raw, dict):
        raise DocumentError("document root must be an object")
    version = raw.get("version")
    if version != DOCUMENT_VERSION:
        raise DocumentError(f"unsupported document version {version!r}", "version")

    chiplets = []
    names = set()
    for name, sub in raw.get("chiplets", {}).items():
        where = f"chiplets[{name!r}]"
        if not isinstance(sub, dict):
            raise DocumentError("chiplet definition must be an object", where)
        sub_qubits, sub_program = _parse_body(sub, where, names)
        chiplets.append(
            (name, CircuitDocument(DOCUMENT_VERSION, sub_qubits, sub_program, ()))
        )
        names.add(name)

    qubits, program = _parse_body(raw, "$", names)
    initial = raw.get("initial_state")
    if initial is not None:
        if (
            not isinstance(initial, str)
            or len(initial) != len(qubits)
            or set(initial) - {"0", "1"}
        ):
            raise DocumentError(
                f"initial_state must be a {len(qubits)}-bit string", "initial_state"
            )
    return CircuitDocument(version, qubits, program, tuple(chiplets), initial)


def _op_to_json(op: Operation):
    out = {}
    if op.kind == "gate":
        out["gate"] = op.name
        if op.params:
            out["params"] = list(op.params)
    else:
        out["chiplet"] = op.name
        if op.power != 1:
            out["power"] = op.power
    out["targets"] = list(op.targets)
    if op.controls:
        out["controls"] = [
            {"qubit": q, "polarity": "positive" if p else "negative"} for q, p in op.controls
        ]
    return out


def serialize_circuit(doc: CircuitDocument) -> str:
    body = {"version": doc.version, "qubits": list(doc.qubits)}
    if doc.initial_state is not None:
        body["initial_state"] = doc.initial_state
    if doc.chiplets:
        body["chiplets"] = {
            name: {
                "qubits": list(sub.qubits),
                "program": [_op_to_json(op) for op in sub.program],
            }
            for name, sub in doc.chiplets
        }
    body["program"] = [_op_to_json(op) for op in doc.program]
    return json.dumps(body, indent=2)


def _placement(doc, op: Operation, n, library: ChipletLibrary, where):
    targets = tuple(doc.qubit_index(t, where) for t in op.targets)
    controls = tuple((doc.qubit_index(q, where), p) for q, p in op.controls)
    try:
        if op.kind == "gate":
            return GatePlacement(gate_matrix(op.name, op.params), targets, n, controls)
        return library.instantiate(op.name, targets, n, controls, op.power)
    except QChipletError as e:
        if isinstance(e, DocumentError):
            raise
        raise DocumentError(str(e), where)


def _build_circuit(doc, library):
    n = len(doc.qubits)
    placements = [
        _placement(doc, op, n, library, f"program[{i}]")
        for i, op in enumerate(doc.program)
    ]
    return Circuit(n, tuple(CircuitLayer((p,), n) for p in placements))


def compile_document(doc: CircuitDocument):
    """Build the executable circuit and the chiplet library it references.

    Chiplet blocks are pre-merged in definition order, so later blocks may
    reuse earlier ones.
    """
    library = ChipletLibrary()
    for name, sub in doc.chiplets:
        library.register(merge(_build_circuit(sub, library), name))
    return _build_circuit(doc, library), library


def initial_state_vector(doc: CircuitDocument):
    n = len(doc.qubits)
    index = int(doc.initial_state, 2) if doc.initial_state else 0
    return basis_state(n, index)


def simulate_document(doc: CircuitDocument, mode: str = "merged", backend=None):
    """Run a document under one of the three execution strategies."""
    circuit, _ = compile_document(doc)
    v0 = initial_state_vector(doc)
    if mode == "merged":
        return merge(circuit).matrix @ v0
    if mode == "naive":
        return simulate(circuit, v0, mode="full-matrix")
    if mode == "state-update":
        return simulate(circuit, v0, mode="state-update", backend=backend)
    raise DocumentError(f"unknown execution mode {mode!r}")
