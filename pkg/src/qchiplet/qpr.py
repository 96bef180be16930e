"""Symbolic polynomial representation of quantum states.

A state over labeled qubits (A, B, ...) is a sum of product terms like
``sqrt(g)·B1·C0``: a monomial coefficient (complex scalar times symbols
raised to half-integer powers) attached to one bit assignment per qubit.
Gates act by variable substitution on each term; Hadamard is applied
unnormalized (no 1/sqrt(2) factor), with normalization available on demand.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    AssignmentError,
    DegenerateStateError,
    LabelError,
    UnsupportedGateError,
)

COLLECT_EPS = 1e-14

HALF = Fraction(1, 2)


def _fmt_scalar(z: complex) -> str:
    if abs(z.imag) < 1e-12:
        x = z.real
        if x == int(x):
            return str(int(x))
        return f"{x:.12g}"
    return f"({z.real:.12g}{z.imag:+.12g}j)"


@dataclass(frozen=True)
class Monomial:
    """scalar * prod(sym**exp); exponents are half-integers, zeros omitted."""

    scalar: complex
    exponents: tuple = ()

    def __post_init__(self):
        exps = tuple(sorted((s, Fraction(e)) for s, e in dict(self.exponents).items() if e != 0))
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "scalar", complex(self.scalar))

    def __mul__(self, other: "Monomial") -> "Monomial":
        exps = dict(self.exponents)
        for s, e in other.exponents:
            exps[s] = exps.get(s, Fraction(0)) + e
        return Monomial(self.scalar * other.scalar, tuple(exps.items()))

    def scaled(self, factor: complex) -> "Monomial":
        return Monomial(self.scalar * factor, self.exponents)

    def conjugated(self) -> "Monomial":
        return Monomial(complex(self.scalar).conjugate(), self.exponents)

    def order_key(self):
        return (
            len(self.exponents),
            tuple(s for s, _ in self.exponents),
            tuple(e for _, e in self.exponents),
        )

    def render(self) -> str:
        parts = []
        for s, e in self.exponents:
            if e == HALF:
                parts.append(f"sqrt({s})")
            elif e == 1:
                parts.append(s)
            else:
                parts.append(f"{s}^({e})")
        scalar = self.scalar
        text = "·".join(parts)
        if not parts or scalar != 1:
            prefix = _fmt_scalar(scalar)
            text = f"{prefix}·{text}" if parts else prefix
        return text

    def _is_negative_real(self) -> bool:
        return abs(self.scalar.imag) < 1e-12 and self.scalar.real < 0

    def negated(self) -> "Monomial":
        return Monomial(-self.scalar, self.exponents)


def render_monomial_sum(monomials) -> str:
    monomials = sorted(monomials, key=Monomial.order_key)
    if not monomials:
        return "0"
    out = monomials[0].render()
    for m in monomials[1:]:
        if m._is_negative_real():
            out += f" - {m.negated().render()}"
        else:
            out += f" + {m.render()}"
    return out


@dataclass(frozen=True)
class QprTerm:
    coeff: Monomial
    bits: tuple  # one bit per polynomial label, in label order


@dataclass(frozen=True)
class QprPolynomial:
    labels: tuple
    terms: tuple
    complements: tuple = ()  # (bar_symbol, base_symbol) pairs introduced by AMP

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "complements", tuple(self.complements))

    def label_index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise LabelError(f"unknown qubit label {label!r}; have {list(self.labels)}")

    def render(self) -> str:
        """Canonical text, grouping monomials that share a basis assignment."""
        groups = {}
        for t in self.terms:
            groups.setdefault(t.bits, []).append(t.coeff)
        if not groups:
            return "0"
        chunks = []
        for bits in sorted(groups):
            basis = "·".join(f"{lab}{b}" for lab, b in zip(self.labels, bits))
            monos = sorted(groups[bits], key=Monomial.order_key)
            if len(monos) == 1:
                m = monos[0]
                if m.scalar == 1 and not m.exponents:
                    chunks.append(basis)
                else:
                    chunks.append(f"{m.render()}·{basis}")
            else:
                chunks.append(f"({render_monomial_sum(monos)})·{basis}")
        return " + ".join(chunks)


def init_qpr(labels) -> QprPolynomial:
    labels = tuple(labels)
    if not labels:
        raise LabelError("at least one qubit label is required")
    if len(set(labels)) != len(labels):
        raise LabelError(f"duplicate qubit labels: {labels}")
    term = QprTerm(Monomial(1.0), (0,) * len(labels))
    return QprPolynomial(labels, (term,))


def collect(p: QprPolynomial) -> QprPolynomial:
    """Merge like terms (same basis, same exponent map), drop near-zeros."""
    merged = {}
    for t in p.terms:
        key = (t.bits, t.coeff.exponents)
        merged[key] = merged.get(key, 0.0) + t.coeff.scalar
    terms = []
    for (bits, exps), scalar in merged.items():
        if abs(scalar) < COLLECT_EPS:
            continue
        terms.append(QprTerm(Monomial(scalar, exps), bits))
    terms.sort(key=lambda t: (t.bits, t.coeff.order_key()))
    return QprPolynomial(p.labels, tuple(terms), p.complements)


def _controls_match(term, idx_pol) -> bool:
    return all(term.bits[i] == pol for i, pol in idx_pol)


def apply_qpr(p: QprPolynomial, gate: str, targets, controls=(), param=None) -> QprPolynomial:
    """Apply a gate by substitution; the result is collected.

    `targets` and `controls` use qubit labels; controls are
    (label, polarity) pairs.  CX and CCX are accepted as sugar for X with
    positive controls.  AMP takes either a symbol name (symbolic square
    roots, with `<name>bar` standing for the 1-complement) or a numeric
    value in [0, 1].
    """
    targets = [targets] if isinstance(targets, str) else list(targets)
    controls = list(controls)
    if gate == "CX":
        if len(targets) != 2:
            raise UnsupportedGateError("CX needs (control, target) labels")
        controls += [(targets[0], 1)]
        targets, gate = targets[1:], "X"
    elif gate == "CCX":
        if len(targets) != 3:
            raise UnsupportedGateError("CCX needs (control, control, target) labels")
        controls += [(targets[0], 1), (targets[1], 1)]
        targets, gate = targets[2:], "X"

    if len(targets) != 1:
        raise UnsupportedGateError(f"gate {gate} acts on exactly one target")
    ti = p.label_index(targets[0])
    idx_pol = [(p.label_index(lab), int(pol)) for lab, pol in controls]
    for _, pol in idx_pol:
        if pol not in (0, 1):
            raise UnsupportedGateError("control polarity must be 0 or 1")

    complements = dict(p.complements)
    if gate == "AMP":
        if param is None:
            raise UnsupportedGateError("AMP requires a parameter (symbol name or value)")
        if isinstance(param, str):
            bar = param + "bar"
            complements[bar] = param
            m_keep0 = Monomial(1.0, ((bar, HALF),))   # sqrt(1-s)
            m_flip = Monomial(1.0, ((param, HALF),))  # sqrt(s)
        else:
            s = float(param)
            if not 0.0 <= s <= 1.0:
                raise UnsupportedGateError(f"AMP value must lie in [0, 1], got {s}")
            m_keep0 = Monomial(math.sqrt(1.0 - s))
            m_flip = Monomial(math.sqrt(s))

    def flipped(bits, value):
        out = list(bits)
        out[ti] = value
        return tuple(out)

    new_terms = []
    for term in p.terms:
        if idx_pol and not _controls_match(term, idx_pol):
            new_terms.append(term)
            continue
        b = term.bits[ti]
        if gate == "H":
            # A0 -> A0 + A1, A1 -> A0 - A1 (1/sqrt(2) deliberately omitted)
            new_terms.append(QprTerm(term.coeff, flipped(term.bits, 0)))
            sign = 1.0 if b == 0 else -1.0
            new_terms.append(QprTerm(term.coeff.scaled(sign), flipped(term.bits, 1)))
        elif gate == "X":
            new_terms.append(QprTerm(term.coeff, flipped(term.bits, 1 - b)))
        elif gate == "Z":
            coeff = term.coeff.scaled(-1.0) if b == 1 else term.coeff
            new_terms.append(QprTerm(coeff, term.bits))
        elif gate == "AMP":
            if b == 0:
                new_terms.append(QprTerm(term.coeff * m_keep0, flipped(term.bits, 0)))
                new_terms.append(QprTerm(term.coeff * m_flip, flipped(term.bits, 1)))
            else:
                new_terms.append(QprTerm((term.coeff * m_flip).scaled(-1.0), flipped(term.bits, 0)))
                new_terms.append(QprTerm(term.coeff * m_keep0, flipped(term.bits, 1)))
        else:
            raise UnsupportedGateError(f"gate {gate!r} has no substitution rule")
    return collect(QprPolynomial(p.labels, tuple(new_terms), tuple(complements.items())))


class SymPoly:
    """Sum of monomials keyed by exponent map; closed under + and scaling."""

    def __init__(self, items=()):
        self._items = {}
        for m in items:
            self.add(m)

    def add(self, m: Monomial):
        key = m.exponents
        self._items[key] = self._items.get(key, 0.0) + m.scalar
        if abs(self._items[key]) < COLLECT_EPS:
            del self._items[key]

    def monomials(self):
        return [Monomial(s, exps) for exps, s in self._items.items()]

    def __eq__(self, other):
        if not isinstance(other, SymPoly):
            return NotImplemented
        keys = set(self._items) | set(other._items)
        return all(abs(self._items.get(k, 0.0) - other._items.get(k, 0.0)) < 1e-12 for k in keys)

    def render(self) -> str:
        return render_monomial_sum(self.monomials())

    def evaluate(self, assignment, complements=()) -> complex:
        return sum(
            _eval_monomial(m, assignment, dict(complements)) for m in self.monomials()
        )


def _eval_monomial(m: Monomial, assignment, complements) -> complex:
    value = m.scalar
    for sym, exp in m.exponents:
        if sym in assignment:
            base = assignment[sym]
        elif sym in complements and complements[sym] in assignment:
            base = 1.0 - assignment[complements[sym]]
        else:
            raise AssignmentError(f"no binding for symbol {sym!r}")
        value *= float(base) ** float(exp)
    return value


@dataclass(frozen=True)
class ProbabilityResult:
    """Symbolic numerator / denominator of a measurement probability."""

    numerator: SymPoly
    denominator: SymPoly
    complements: tuple = ()

    def value(self, assignment=None) -> float:
        assignment = assignment or {}
        num = self.numerator.evaluate(assignment, self.complements)
        den = self.denominator.evaluate(assignment, self.complements)
        return float(num.real) / float(den.real)

    def unnormalized(self, assignment=None) -> float:
        assignment = assignment or {}
        return float(self.numerator.evaluate(assignment, self.complements).real)


def _squared_coefficient(monomials) -> SymPoly:
    # |sum m_i|^2 expanded pairwise: cross terms like 2*sqrt(g)*sqrt(h) survive.
    out = SymPoly()
    for a in monomials:
        for b in monomials:
            out.add(a * b.conjugated())
    return out


def probability(p: QprPolynomial, condition) -> ProbabilityResult:
    """P(condition) = sum of squared per-basis coefficients, over the total.

    `condition` maps labels to required bit values; unmentioned qubits are
    marginalized.  The numerator and denominator stay symbolic; `value`
    evaluates the ratio numerically.
    """
    if not p.terms:
        raise DegenerateStateError("probability of an empty polynomial")
    cond = [(p.label_index(lab), int(bit)) for lab, bit in dict(condition).items()]
    groups = {}
    for t in p.terms:
        groups.setdefault(t.bits, []).append(t.coeff)
    numerator, denominator = SymPoly(), SymPoly()
    for bits, monos in groups.items():
        sq = _squared_coefficient(monos)
        for m in sq.monomials():
            denominator.add(m)
        if all(bits[i] == b for i, b in cond):
            for m in sq.monomials():
                numerator.add(m)
    return ProbabilityResult(numerator, denominator, p.complements)


def eval_qpr(p: QprPolynomial, assignment=None) -> np.ndarray:
    """Numeric (unnormalized) state vector; labels[0] is the most significant bit."""
    assignment = assignment or {}
    comps = dict(p.complements)
    n = len(p.labels)
    v = np.zeros(1 << n, dtype=np.complex128)
    for t in p.terms:
        idx = 0
        for b in t.bits:
            idx = (idx << 1) | b
        v[idx] += _eval_monomial(t.coeff, assignment, comps)
    return v
