"""Parser for the OpenQASM 2.0 subset accepted by the compiler.

Accepted programs: the ``OPENQASM 2.0;`` header, an optional include, exactly
one ``qreg``, optional ``creg`` declarations, then statements over

    h s sdg x y z cx cz swap t tdg rz(expr) measure

with explicitly indexed operands. ``expr`` is a real literal, optionally
using ``pi`` with ``*`` and ``/`` and a leading sign. Anything else is
rejected loudly: custom gates, extra quantum registers, barriers and
classical control are outside the subset and raise immediately rather than
being silently dropped.
"""

from __future__ import annotations

import math
import re

from .errors import ParseError, UnsupportedError, ValidationError
from .ir import GateCircuit, Measure, NonCliffordRotation, RotationAngle
from .tableau import CliffordGate

_CLIFFORD_GATES = {
    "h": "H",
    "s": "S",
    "sdg": "Sdg",
    "x": "X",
    "y": "Y",
    "z": "Z",
    "cx": "CX",
    "cz": "CZ",
    "swap": "SWAP",
}

_STATEMENT_RE = re.compile(r"^(?P<name>[A-Za-z_][A-Za-z0-9_]*)\s*(?P<rest>.*)$")
_INDEXED_RE = re.compile(r"^(?P<reg>[A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(?P<idx>\d+)\s*\]$")
_NUMBER_RE = re.compile(r"\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?")


def parse_qasm_subset(text: str) -> GateCircuit:
    """Parse QASM source text into a :class:`GateCircuit`."""
    statements = _split_statements(text)
    if not statements:
        raise ParseError("empty input")

    stmt, line = statements[0]
    if not stmt.upper().startswith("OPENQASM"):
        raise ParseError("expected OPENQASM header", line)
    statements = statements[1:]

    qreg_name: str | None = None
    n_qubits = 0
    creg_names: set[str] = set()
    ops = []

    for stmt, line in statements:
        match = _STATEMENT_RE.match(stmt)
        if match is None:
            raise ParseError(f"cannot parse statement {stmt!r}", line)
        name = match.group("name")
        rest = match.group("rest").strip()

        if name == "include":
            continue
        if name == "qreg":
            if qreg_name is not None:
                raise UnsupportedError(
                    f"line {line}: only a single qreg is supported"
                )
            qreg_name, n_qubits = _parse_reg_decl(rest, line)
            continue
        if name == "creg":
            creg_name, _ = _parse_reg_decl(rest, line)
            creg_names.add(creg_name)
            continue
        if qreg_name is None:
            raise ParseError("gate statement before qreg declaration", line)

        if name == "measure":
            ops.append(Measure(_parse_measure(rest, qreg_name, creg_names, line, n_qubits)))
            continue

        angle_expr = None
        if name == "rz":
            if not rest.startswith("("):
                raise ParseError("rz requires a parenthesised angle", line)
            close = rest.find(")")
            if close < 0:
                raise ParseError("unterminated angle expression", line)
            angle_expr = rest[1:close]
            rest = rest[close + 1 :].strip()
        elif name not in _CLIFFORD_GATES and name not in ("t", "tdg"):
            raise UnsupportedError(f"line {line}: unsupported gate {name!r}")

        qubits = _parse_operands(rest, qreg_name, line, n_qubits)
        if name in _CLIFFORD_GATES:
            kind = _CLIFFORD_GATES[name]
            expected = 2 if kind in ("CX", "CZ", "SWAP") else 1
            if len(qubits) != expected:
                raise ParseError(
                    f"{name} takes {expected} operand(s), got {len(qubits)}", line
                )
            try:
                ops.append(CliffordGate(kind, tuple(qubits)))
            except ValidationError as exc:
                raise ValidationError(f"line {line}: {exc}") from None
        else:
            if len(qubits) != 1:
                raise ParseError(f"{name} takes one operand", line)
            if name == "t":
                angle = RotationAngle.t()
            elif name == "tdg":
                angle = RotationAngle.tdg()
            else:
                # rz(lambda) = exp(-i*lambda*Z/2): the stored theta is lambda/2
                angle = RotationAngle.rz(_eval_angle(angle_expr, line) / 2.0)
            ops.append(NonCliffordRotation(qubits[0], angle))

    if qreg_name is None:
        raise ParseError("no qreg declared")
    return GateCircuit(n_qubits, tuple(ops))


def _split_statements(text: str) -> list[tuple[str, int]]:
    """Statements with their 1-based source line, comments stripped."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        code = raw.split("//", 1)[0].strip().rstrip("\r")
        if not code:
            continue
        trailing = code.rstrip()
        parts = [s.strip() for s in trailing.split(";")]
        if parts[-1]:
            raise ParseError(f"missing ';' after {parts[-1]!r}", lineno)
        for part in parts[:-1]:
            if part:
                out.append((part, lineno))
    return out


def _parse_reg_decl(rest: str, line: int) -> tuple[str, int]:
    match = re.match(r"^([A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(\d+)\s*\]$", rest)
    if match is None:
        raise ParseError(f"malformed register declaration {rest!r}", line)
    size = int(match.group(2))
    if size < 1:
        raise ValidationError(f"line {line}: register size must be positive")
    return match.group(1), size


def _parse_operands(rest: str, qreg: str, line: int, n_qubits: int) -> list[int]:
    if not rest:
        raise ParseError("missing operands", line)
    qubits = []
    for token in rest.split(","):
        match = _INDEXED_RE.match(token.strip())
        if match is None:
            raise ParseError(f"expected an indexed operand, got {token.strip()!r}", line)
        if match.group("reg") != qreg:
            raise ValidationError(
                f"line {line}: unknown quantum register {match.group('reg')!r}"
            )
        idx = int(match.group("idx"))
        if idx >= n_qubits:
            raise ValidationError(
                f"line {line}: index {idx} out of range for qreg of size {n_qubits}"
            )
        qubits.append(idx)
    return qubits


def _parse_measure(
    rest: str, qreg: str, cregs: set[str], line: int, n_qubits: int
) -> int:
    parts = rest.split("->")
    source = parts[0].strip()
    qubits = _parse_operands(source, qreg, line, n_qubits)
    if len(qubits) != 1:
        raise ParseError("measure takes one qubit", line)
    if len(parts) == 2:
        target = _INDEXED_RE.match(parts[1].strip())
        if target is None:
            raise ParseError(f"malformed measure target {parts[1].strip()!r}", line)
        if cregs and target.group("reg") not in cregs:
            raise ValidationError(
                f"line {line}: unknown classical register {target.group('reg')!r}"
            )
    elif len(parts) > 2:
        raise ParseError("malformed measure statement", line)
    return qubits[0]


def _tokenize_angle(expr: str, line: int) -> list[str | float]:
    compact = expr.replace(" ", "")
    tokens: list[str | float] = []
    pos = 0
    while pos < len(compact):
        ch = compact[pos]
        if ch in "*/+-":
            tokens.append(ch)
            pos += 1
        elif compact.startswith("pi", pos):
            tokens.append(math.pi)
            pos += 2
        else:
            match = _NUMBER_RE.match(compact, pos)
            if match is None:
                raise ParseError(f"malformed angle expression {expr!r}", line)
            tokens.append(float(match.group()))
            pos = match.end()
    return tokens


def _eval_angle(expr: str, line: int) -> float:
    """Evaluate a real literal possibly using pi, '*', '/' and a leading sign."""
    tokens = _tokenize_angle(expr, line)
    sign = 1.0
    while tokens and tokens[0] in ("+", "-"):
        if tokens[0] == "-":
            sign = -sign
        tokens = tokens[1:]
    if not tokens or isinstance(tokens[0], str):
        raise ParseError(f"malformed angle expression {expr!r}", line)
    value = tokens[0]
    pos = 1
    while pos < len(tokens):
        op = tokens[pos]
        if op not in ("*", "/") or pos + 1 >= len(tokens) or isinstance(tokens[pos + 1], str):
            raise ParseError(f"malformed angle expression {expr!r}", line)
        term = tokens[pos + 1]
        value = value * term if op == "*" else value / term
        pos += 2
    return sign * value
