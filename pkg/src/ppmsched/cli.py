"""Command-line interface.

Subcommands::

    ppmsched compile  <qasm> -o <ppm-file>
    ppmsched optimize <ppm-file> --strategy combined --passes 3 ... --out results.csv
    ppmsched random   --qubits N --ppms M --density D --seed S -o <ppm-file>
    ppmsched sweep    --config <file> --out results.csv
    ppmsched verify   <qasm>

Exit code 0 on success, nonzero with a diagnostic on stderr otherwise.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import harness
from .errors import SizeLimitError
from .grouping import PortBudget, baseline_grouping, metrics
from .ir import GateCircuit, Measure
from .tableau import CliffordGate
from .optimize import StrategyConfig, run_strategy
from .oracle import circuit_unitary, equal_up_to_phase, ppr_unitary
from .pbc import attach_resource_states, compile_to_pprs
from .ppm_text import emit_ppm_text, parse_ppm_text
from .qasm import parse_qasm_subset

_CLI_STRATEGY = {
    "baseline": "baseline",
    "greedy": "greedy-restructure",
    "reshuffle": "reshuffle",
    "combined": "combined",
}
_CLI_MAPPER = {"clique-split": "clique-split", "hw-greedy": "hw-greedy"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ppmsched",
        description="Schedule Pauli product measurements under port budgets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compile = sub.add_parser(
        "compile", help="compile a Clifford+T/Rz QASM file to measurements"
    )
    p_compile.add_argument("qasm", type=Path)
    p_compile.add_argument("-o", "--output", type=Path, required=True)

    p_opt = sub.add_parser("optimize", help="schedule a measurement file")
    p_opt.add_argument("ppm_file", type=Path)
    p_opt.add_argument(
        "--strategy", choices=sorted(_CLI_STRATEGY), default="combined"
    )
    p_opt.add_argument("--passes", type=int, default=3)
    p_opt.add_argument("--ports-x", type=int, default=2)
    p_opt.add_argument("--ports-z", type=int, default=2)
    p_opt.add_argument("--seed", type=int, default=0)
    p_opt.add_argument(
        "--mapper", choices=sorted(_CLI_MAPPER), default="hw-greedy"
    )
    p_opt.add_argument("--out", type=Path, help="append-style results CSV")

    p_rand = sub.add_parser("random", help="generate a random measurement file")
    p_rand.add_argument("--qubits", type=int, required=True)
    p_rand.add_argument("--ppms", type=int, required=True)
    p_rand.add_argument("--density", type=float, required=True)
    p_rand.add_argument("--seed", type=int, default=0)
    p_rand.add_argument("--attach-resources", action="store_true")
    p_rand.add_argument("-o", "--output", type=Path, required=True)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep")
    p_sweep.add_argument("--config", type=Path, required=True)
    p_sweep.add_argument("--out", type=Path, required=True)
    p_sweep.add_argument("--workers", type=int, default=1)
    p_sweep.add_argument(
        "--format", choices=("csv", "json-lines"), default="csv"
    )

    p_verify = sub.add_parser(
        "verify", help="check compilation against the dense-matrix oracle"
    )
    p_verify.add_argument("qasm", type=Path)
    p_verify.add_argument("--tol", type=float, default=1e-9)

    return parser


def _cmd_compile(args: argparse.Namespace) -> int:
    circuit = parse_qasm_subset(args.qasm.read_text())
    pprs, _, terminal = compile_to_pprs(circuit)
    ppm_circuit = attach_resource_states(pprs, terminal, circuit.n_qubits)
    args.output.write_text(emit_ppm_text(ppm_circuit))
    print(
        f"compiled {len(pprs)} rotations and {len(terminal)} terminal "
        f"measurements on {circuit.n_qubits} qubits -> {args.output}"
    )
    return 0


def _cmd_optimize(args: argparse.Namespace) -> int:
    circuit = parse_ppm_text(args.ppm_file.read_text())
    budget = PortBudget(args.ports_x, args.ports_z)
    cfg = StrategyConfig(
        strategy=_CLI_STRATEGY[args.strategy],
        passes=args.passes,
        seed=args.seed,
        budget=budget,
        mapper=_CLI_MAPPER[args.mapper],
    )
    base_grouping = baseline_grouping(circuit, budget)
    base_metrics = metrics(circuit, base_grouping)
    start = time.perf_counter()
    grouping, _, m = run_strategy(circuit, cfg)
    elapsed_ms = (time.perf_counter() - start) * 1000.0

    n_cols = circuit.n_program_qubits + circuit.n_resource_qubits
    density = (
        sum(p.weight() for p in circuit.paulis()) / (len(circuit) * n_cols)
        if len(circuit)
        else 0.0
    )
    row = harness.ResultRow(
        strategy=cfg.strategy,
        seed=args.seed,
        n_qubits=circuit.n_program_qubits,
        density=round(density, 6),
        n_ppms=len(circuit),
        bx=args.ports_x,
        bz=args.ports_z,
        passes=args.passes,
        depth=m.depth,
        baseline_depth=base_metrics.depth,
        depth_reduction_pct=harness._reduction_pct(base_metrics.depth, m.depth),
        total_weight=m.total_weight_all,
        baseline_weight=base_metrics.total_weight_all,
        weight_reduction_pct=harness._reduction_pct(
            base_metrics.total_weight_all, m.total_weight_all
        ),
        runtime_ms=round(elapsed_ms, 3),
    )
    if args.out is not None:
        args.out.write_text(harness.emit_results([row]))
    print(
        f"{cfg.strategy}: depth {m.depth} (baseline {base_metrics.depth}, "
        f"{row.depth_reduction_pct:.1f}% reduction), "
        f"weight {m.total_weight_all} (baseline {base_metrics.total_weight_all})"
    )
    return 0


def _cmd_random(args: argparse.Namespace) -> int:
    spec = harness.RandomSpec(
        n_qubits=args.qubits,
        n_ppms=args.ppms,
        density=args.density,
        seed=args.seed,
        attach_resources=args.attach_resources,
    )
    circuit = harness.gen_random_ppms(spec)
    args.output.write_text(emit_ppm_text(circuit))
    print(f"wrote {len(circuit)} random measurements -> {args.output}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    cfg = harness.read_sweep_config(args.config.read_text())
    rows = harness.run_sweep(cfg, workers=args.workers)
    args.out.write_text(harness.emit_results(rows, args.format))
    print(f"wrote {len(rows)} rows -> {args.out}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    circuit = parse_qasm_subset(args.qasm.read_text())
    if circuit.n_qubits > 5:
        raise SizeLimitError(
            f"verify is limited to 5 qubits, circuit has {circuit.n_qubits}"
        )
    gates_only = GateCircuit(
        circuit.n_qubits,
        tuple(op for op in circuit.ops if not isinstance(op, Measure)),
    )
    pprs, _, _ = compile_to_pprs(gates_only)
    clifford_ops = tuple(
        op for op in gates_only.ops if isinstance(op, CliffordGate)
    )
    clifford_matrix = circuit_unitary(GateCircuit(circuit.n_qubits, clifford_ops))
    recomposed = clifford_matrix
    for ppr in reversed(pprs):
        recomposed = recomposed @ ppr_unitary(ppr)
    original = circuit_unitary(gates_only)
    ok = equal_up_to_phase(original, recomposed, args.tol)
    print(f"{'PASS' if ok else 'FAIL'}: compiled form "
          f"{'matches' if ok else 'differs from'} the circuit unitary "
          f"(tolerance {args.tol:g})")
    return 0 if ok else 1


_HANDLERS = {
    "compile": _cmd_compile,
    "optimize": _cmd_optimize,
    "random": _cmd_random,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
