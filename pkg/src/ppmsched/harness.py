"""Random instances, parameter sweeps and result serialization.

Sweeps are deterministic end to end: instance seeds derive from the master
seed and the cell coordinates through ``numpy``'s SeedSequence, strategy
streams additionally fold in the strategy index, and rows are emitted in
cell order no matter how many workers ran the cells. Two runs of the same
configuration therefore produce identical rows; only the ``runtime_ms``
column carries wall-clock measurements.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace
from typing import Sequence

import numpy as np

from .errors import ParseError, ValidationError
from .grouping import PortBudget, baseline_grouping, metrics
from .ir import Ppm, PpmCircuit
from .optimize import StrategyConfig, run_strategy
from .pauli import PauliString

SWEEP_AXES = ("density", "qubits", "input-depth", "ports", "passes")
_LETTERS = ("X", "Y", "Z")


@dataclass(frozen=True, slots=True)
class RandomSpec:
    """Shape of a random measurement sequence."""

    n_qubits: int
    n_ppms: int
    density: float
    seed: int
    attach_resources: bool = False

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValidationError("need at least one qubit")
        if self.n_ppms < 1:
            raise ValidationError("need at least one measurement")
        if not 0.0 < self.density <= 1.0:
            raise ValidationError(f"density must lie in (0, 1], got {self.density}")


def gen_random_ppms(spec: RandomSpec) -> PpmCircuit:
    """Independent random measurements; deterministic for a fixed seed.

    Each qubit of each string is non-identity with probability ``density``
    with the letter uniform over X/Y/Z; all-identity draws are rejected and
    resampled. With ``attach_resources`` every string also consumes a fresh
    resource state via a Z tail, mirroring rotation-derived measurements.
    """
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(spec.seed)))
    n = spec.n_qubits
    n_res = spec.n_ppms if spec.attach_resources else 0
    n_total = n + n_res
    ppms = []
    for i in range(spec.n_ppms):
        while True:
            hits = np.flatnonzero(rng.random(n) < spec.density)
            if hits.size:
                break
        letters = rng.integers(3, size=hits.size)
        x = z = 0
        for q, letter in zip(hits, letters):
            if letter != 2:  # X or Y
                x |= 1 << int(q)
            if letter != 0:  # Y or Z
                z |= 1 << int(q)
        if spec.attach_resources:
            z |= 1 << (n + i)
            ppms.append(Ppm(PauliString(n_total, x, z, 0), resource_index=i))
        else:
            ppms.append(Ppm(PauliString(n_total, x, z, 0)))
    return PpmCircuit(n, n_res, tuple(ppms))


@dataclass(frozen=True, slots=True)
class ResultRow:
    strategy: str
    seed: int
    n_qubits: int
    density: float
    n_ppms: int
    bx: int
    bz: int
    passes: int
    depth: int
    baseline_depth: int
    depth_reduction_pct: float
    total_weight: int
    baseline_weight: int
    weight_reduction_pct: float
    runtime_ms: float


RESULT_FIELDS = tuple(f.name for f in fields(ResultRow))


@dataclass(frozen=True, slots=True)
class SweepConfig:
    axis: str
    values: tuple[float, ...]
    trials: int
    base: RandomSpec
    strategies: tuple[StrategyConfig, ...]

    def __post_init__(self):
        if self.axis not in SWEEP_AXES:
            raise ValidationError(f"unknown sweep axis {self.axis!r}")
        if not self.values:
            raise ValidationError("sweep needs at least one axis value")
        if self.trials < 1:
            raise ValidationError("trials must be positive")
        if not self.strategies:
            raise ValidationError("sweep needs at least one strategy")
        object.__setattr__(self, "values", tuple(self.values))
        object.__setattr__(self, "strategies", tuple(self.strategies))


def derive_seed(*parts: int) -> int:
    """Stable 63-bit seed derived from integer coordinates."""
    state = np.random.SeedSequence(tuple(int(p) for p in parts)).generate_state(1)
    return int(state[0]) & (2**63 - 1)


def _cell_spec(cfg: SweepConfig, value: float) -> RandomSpec:
    if cfg.axis == "density":
        return replace(cfg.base, density=float(value))
    if cfg.axis == "qubits":
        return replace(cfg.base, n_qubits=int(value))
    if cfg.axis == "input-depth":
        return replace(cfg.base, n_ppms=int(value))
    return cfg.base


def _cell_strategy(cfg: SweepConfig, strategy: StrategyConfig, value: float) -> StrategyConfig:
    if cfg.axis == "ports":
        return replace(strategy, budget=PortBudget(int(value), int(value)))
    if cfg.axis == "passes":
        return replace(strategy, passes=int(value))
    return strategy


def _run_cell(cfg: SweepConfig, value_index: int, trial: int) -> list[ResultRow]:
    value = cfg.values[value_index]
    if cfg.axis in ("ports", "passes"):
        # These axes only change the strategy, so every axis value is
        # evaluated on the same instances and the trend is noise-free.
        instance_seed = derive_seed(cfg.base.seed, trial)
    else:
        instance_seed = derive_seed(cfg.base.seed, value_index, trial)
    spec = replace(_cell_spec(cfg, value), seed=instance_seed)
    circuit = gen_random_ppms(spec)
    empirical_density = spec.density

    baseline_cache: dict[PortBudget, tuple[int, int]] = {}

    def baseline_for(budget: PortBudget) -> tuple[int, int]:
        if budget not in baseline_cache:
            grouping = baseline_grouping(circuit, budget)
            m = metrics(circuit, grouping)
            baseline_cache[budget] = (m.depth, m.total_weight_all)
        return baseline_cache[budget]

    rows = []
    for si, strategy in enumerate(cfg.strategies):
        scfg = _cell_strategy(cfg, strategy, value)
        if cfg.axis in ("ports", "passes"):
            strategy_seed = derive_seed(cfg.base.seed, trial, si)
        else:
            strategy_seed = derive_seed(cfg.base.seed, value_index, trial, si)
        scfg = replace(scfg, seed=strategy_seed)
        base_depth, base_weight = baseline_for(scfg.budget)
        start = time.perf_counter()
        grouping, _, m = run_strategy(circuit, scfg)
        elapsed_ms = (time.perf_counter() - start) * 1000.0
        rows.append(
            ResultRow(
                strategy=scfg.strategy,
                seed=instance_seed,
                n_qubits=spec.n_qubits,
                density=empirical_density,
                n_ppms=spec.n_ppms,
                bx=int(scfg.budget.bx),
                bz=int(scfg.budget.bz),
                passes=scfg.passes,
                depth=m.depth,
                baseline_depth=base_depth,
                depth_reduction_pct=_reduction_pct(base_depth, m.depth),
                total_weight=m.total_weight_all,
                baseline_weight=base_weight,
                weight_reduction_pct=_reduction_pct(base_weight, m.total_weight_all),
                runtime_ms=round(elapsed_ms, 3),
            )
        )
    return rows


def _reduction_pct(baseline: int, value: int) -> float:
    if baseline == 0:
        return 0.0
    return 100.0 * (baseline - value) / baseline


def run_sweep(cfg: SweepConfig, workers: int = 1) -> list[ResultRow]:
    """Run every (axis value, trial, strategy) cell and collect rows in order."""
    cells = [
        (vi, trial) for vi in range(len(cfg.values)) for trial in range(cfg.trials)
    ]
    if workers <= 1:
        results = [_run_cell(cfg, vi, trial) for vi, trial in cells]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_cell, cfg, vi, trial) for vi, trial in cells]
            results = [f.result() for f in futures]
    return [row for cell_rows in results for row in cell_rows]


def emit_results(rows: Sequence[ResultRow], fmt: str = "csv") -> str:
    """Serialize rows; CSV header order matches the ResultRow fields."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(RESULT_FIELDS)
        for row in rows:
            writer.writerow([getattr(row, name) for name in RESULT_FIELDS])
        return buf.getvalue()
    if fmt == "json-lines":
        return "".join(
            json.dumps({name: getattr(row, name) for name in RESULT_FIELDS}) + "\n"
            for row in rows
        )
    raise ValidationError(f"unknown output format {fmt!r}")


_FIELD_TYPES = {f.name: f.type for f in fields(ResultRow)}


def parse_results_csv(text: str) -> list[ResultRow]:
    """Inverse of ``emit_results(..., "csv")``."""
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or tuple(reader.fieldnames) != RESULT_FIELDS:
        raise ParseError(f"unexpected CSV header {reader.fieldnames}")
    rows = []
    for record in reader:
        kwargs = {}
        for name in RESULT_FIELDS:
            raw = record[name]
            kind = _FIELD_TYPES[name]
            if kind == "int":
                kwargs[name] = int(raw)
            elif kind == "float":
                kwargs[name] = float(raw)
            else:
                kwargs[name] = raw
        rows.append(ResultRow(**kwargs))
    return rows


def read_sweep_config(text: str) -> SweepConfig:
    """Parse the line-oriented ``key=value`` sweep configuration format.

    Recognized keys: axis, values, trials, qubits, ppms, density, seed,
    attach_resources, strategies, passes, ports_x, ports_z, mapper.
    Lines starting with ``#`` are comments.
    """
    settings: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"expected key=value, got {line!r}", lineno)
        key, _, value = line.partition("=")
        key = key.strip()
        if key in settings:
            raise ParseError(f"duplicate key {key!r}", lineno)
        settings[key] = value.strip()

    known = {
        "axis", "values", "trials", "qubits", "ppms", "density", "seed",
        "attach_resources", "strategies", "passes", "ports_x", "ports_z",
        "mapper",
    }
    unknown = set(settings) - known
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}")
    for required in ("axis", "values"):
        if required not in settings:
            raise ParseError(f"missing required key {required!r}")

    axis = settings["axis"]
    values = tuple(float(v) for v in settings["values"].split(",") if v.strip())
    base = RandomSpec(
        n_qubits=int(settings.get("qubits", 20)),
        n_ppms=int(settings.get("ppms", 200)),
        density=float(settings.get("density", 0.3)),
        seed=int(settings.get("seed", 0)),
        attach_resources=settings.get("attach_resources", "false").lower()
        in ("true", "1", "yes"),
    )
    budget = PortBudget(
        int(settings.get("ports_x", 2)), int(settings.get("ports_z", 2))
    )
    names = [
        s.strip() for s in settings.get("strategies", "baseline,combined").split(",")
    ]
    aliases = {"greedy": "greedy-restructure"}
    strategies = tuple(
        StrategyConfig(
            strategy=aliases.get(name, name),
            passes=int(settings.get("passes", 3)),
            budget=budget,
            mapper=settings.get("mapper", "hw-greedy"),
        )
        for name in names
        if name
    )
    return SweepConfig(
        axis=axis,
        values=values,
        trials=int(settings.get("trials", 1)),
        base=base,
        strategies=strategies,
    )
