"""Line-oriented text format for measurement circuits.

The format is deliberately trivial to diff and to generate from other tools::

    # optional comments
    qubits 4
    resources 2
    PPM XIXI r0
    PPM -ZZII r1
    PPM IXXI

``qubits`` counts program qubits, ``resources`` the resource-state columns.
Each ``PPM`` line carries an optional sign, one letter per program qubit and,
for rotation-derived measurements, the resource column holding the Z of the
consumed resource state. Output is UTF-8 with LF endings; CRLF is tolerated
on input. Round-tripping any valid circuit is exact.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .ir import Ppm, PpmCircuit
from .pauli import PauliString

_HEADER_RE = re.compile(r"^(qubits|resources)\s+(\d+)$")
_PPM_RE = re.compile(r"^PPM\s+(?P<body>[+-]?[IXYZ]+)(?:\s+r(?P<res>\d+))?$")


def emit_ppm_text(circuit: PpmCircuit) -> str:
    lines = [f"qubits {circuit.n_program_qubits}", f"resources {circuit.n_resource_qubits}"]
    n_prog = circuit.n_program_qubits
    for ppm in circuit.ppms:
        sign = "-" if ppm.pauli.phase_exp == 2 else ""
        letters = "".join(ppm.pauli.letter_at(j) for j in range(n_prog))
        if ppm.resource_index is None:
            lines.append(f"PPM {sign}{letters}")
        else:
            lines.append(f"PPM {sign}{letters} r{ppm.resource_index}")
    return "\n".join(lines) + "\n"


def parse_ppm_text(text: str) -> PpmCircuit:
    n_prog: int | None = None
    n_res: int | None = None
    ppms: list[Ppm] = []
    seen_resources: set[int] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r").strip()
        if not line or line.startswith("#"):
            continue
        header = _HEADER_RE.match(line)
        if header is not None:
            key, value = header.group(1), int(header.group(2))
            if key == "qubits":
                if n_prog is not None:
                    raise ParseError("duplicate qubits header", lineno)
                n_prog = value
            else:
                if n_prog is None:
                    raise ParseError("resources header before qubits", lineno)
                if n_res is not None:
                    raise ParseError("duplicate resources header", lineno)
                n_res = value
            continue
        if n_prog is None or n_res is None:
            raise ParseError("PPM line before qubits/resources headers", lineno)
        match = _PPM_RE.match(line)
        if match is None:
            raise ParseError(f"cannot parse {line!r}", lineno)
        body = match.group("body")
        phase = 0
        if body[0] in "+-":
            phase = 2 if body[0] == "-" else 0
            body = body[1:]
        if len(body) != n_prog:
            raise ParseError(
                f"expected {n_prog} letters, got {len(body)}", lineno
            )
        program = PauliString.from_letters(body, phase)
        res = match.group("res")
        if res is None:
            ppms.append(
                Ppm(
                    PauliString(
                        n_prog + n_res, program.x_bits, program.z_bits, phase
                    )
                )
            )
            continue
        r = int(res)
        if r >= n_res:
            raise ParseError(f"resource index r{r} out of range", lineno)
        if r in seen_resources:
            raise ParseError(f"duplicate resource index r{r}", lineno)
        seen_resources.add(r)
        full = PauliString(
            n_prog + n_res,
            program.x_bits,
            program.z_bits | (1 << (n_prog + r)),
            phase,
        )
        ppms.append(Ppm(full, resource_index=r))

    if n_prog is None or n_res is None:
        raise ParseError("missing qubits/resources headers")
    try:
        return PpmCircuit(n_prog, n_res, tuple(ppms))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
