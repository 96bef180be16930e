"""Line-based script driver for the symbolic polynomial engine.

Directives (one per line, '#' starts a comment):

    init B C L                 declare qubits, all in state 0
    apply H C                  apply a gate to target label(s)
    apply AMP(g) B if C=0      parameterized gate, optional 'if' controls
    apply X L if B=1 C=0       multiple controls with explicit polarity
    apply CX B C               control/target sugar (also CCX)
    collect                    merge like terms (apply already collects)
    print                      emit the canonical polynomial text
    probability L=1 [B=0 ...]  emit symbolic numerator/denominator (+ value
                               when every symbol has a 'let' binding)
    let g 0.25                 bind a symbol for numeric output
    eval                       emit the numeric state vector
"""

import re

import numpy as np

from .errors import AssignmentError, QChipletError, ScriptError
from .qpr import apply_qpr, collect, eval_qpr, init_qpr, probability

_GATE_RE = re.compile(r"^([A-Za-z]+)(?:\(([^)]*)\))?$")


def _parse_condition(token, lineno):
    if "=" not in token:
        raise ScriptError(f"expected label=bit, got {token!r}", lineno)
    label, _, bit = token.partition("=")
    if bit not in ("0", "1"):
        raise ScriptError(f"condition bit must be 0 or 1, got {token!r}", lineno)
    return label, int(bit)


def run_script(text: str):
    """Execute a script; returns the emitted output lines."""
    poly = None
    bindings = {}
    out = []

    def need_state(lineno):
        if poly is None:
            raise ScriptError("no 'init' directive yet", lineno)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        directive, args = tokens[0], tokens[1:]
        try:
            if directive == "init":
                if not args:
                    raise ScriptError("init needs at least one qubit label", lineno)
                poly = init_qpr(args)
            elif directive == "apply":
                need_state(lineno)
                if not args:
                    raise ScriptError("apply needs a gate name", lineno)
                m = _GATE_RE.match(args[0])
                if not m:
                    raise ScriptError(f"bad gate spec {args[0]!r}", lineno)
                gate, param = m.group(1), m.group(2)
                if param is not None:
                    try:
                        param = float(param)
                    except ValueError:
                        pass  # symbolic parameter name
                rest = args[1:]
                controls = []
                if "if" in rest:
                    split = rest.index("if")
                    rest, conds = rest[:split], rest[split + 1:]
                    controls = [_parse_condition(c, lineno) for c in conds]
                if not rest:
                    raise ScriptError("apply needs target label(s)", lineno)
                poly = apply_qpr(poly, gate, rest, controls, param)
            elif directive == "collect":
                need_state(lineno)
                poly = collect(poly)
            elif directive == "print":
                need_state(lineno)
                out.append(f"state: {poly.render()}")
            elif directive == "probability":
                need_state(lineno)
                cond = dict(_parse_condition(c, lineno) for c in args)
                label = ",".join(args)
                result = probability(poly, cond)
                out.append(f"p({label}) numerator: {result.numerator.render()}")
                out.append(f"p({label}) denominator: {result.denominator.render()}")
                try:
                    out.append(f"p({label}) value: {result.value(bindings):.12g}")
                except AssignmentError:
                    pass  # symbolic-only report when bindings are incomplete
            elif directive == "let":
                spec = " ".join(args).replace("=", " ").split()
                if len(spec) != 2:
                    raise ScriptError("usage: let <symbol> <value>", lineno)
                bindings[spec[0]] = float(spec[1])
            elif directive == "eval":
                need_state(lineno)
                v = eval_qpr(poly, bindings)
                rendered = np.array2string(v, precision=6, suppress_small=True)
                out.append(f"amplitudes: {rendered}")
            else:
                raise ScriptError(f"unknown directive {directive!r}", lineno)
        except ScriptError:
            raise
        except QChipletError as e:
            raise ScriptError(str(e), lineno)
    return out
