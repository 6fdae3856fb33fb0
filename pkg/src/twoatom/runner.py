"""Scenario dispatch: turn a parsed configuration into a result table.

Tables carry their fully resolved configuration in the metadata block, so
any emitted CSV can be replayed bit-identically.
"""
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__, basis, dynamics, geometry, jumps, observables
from .config import ScenarioConfig, parse_config, serialize_config
from .errors import ConfigError, UndefinedValueError
from .operators import KET_A, KET_EG, KET_GE, KET_S, ket_density

_INITIAL_KETS = {
    "ground": np.array([1, 0, 0, 0], dtype=complex),
    "excited_one": KET_EG,
    "excited_two": KET_GE,
    "excited_both": np.array([0, 0, 0, 1], dtype=complex),
    "symmetric": KET_S,
    "antisymmetric": KET_A,
}


@dataclass
class ResultTable:
    """Rectangular numeric results plus reproduction metadata.

    Sidecar payloads (for example trajectory records) ride along without
    entering the CSV rendering; the CLI writes them to companion files.
    """
    columns: list
    rows: list
    metadata: dict = field(default_factory=dict)
    sidecars: dict = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        idx = self.columns.index(name)
        return np.array([row[idx] for row in self.rows])

    def to_csv(self) -> str:
        lines = []
        for key in sorted(self.metadata):
            if key == "config":
                for cfg_line in self.metadata[key].strip().splitlines():
                    lines.append(f"# cfg: {cfg_line}")
            else:
                lines.append(f"# {key} = {self.metadata[key]}")
        lines.append(",".join(self.columns))
        for row in self.rows:
            lines.append(",".join(_fmt(v) for v in row))
        return "\n".join(lines) + "\n"


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".12g")


def parse_table_config(csv_text: str) -> ScenarioConfig:
    """Recover the configuration embedded in an emitted CSV."""
    cfg_lines = [line[len("# cfg: "):] for line in csv_text.splitlines()
                 if line.startswith("# cfg: ")]
    if not cfg_lines:
        raise ConfigError("no embedded configuration found")
    return parse_config("\n".join(cfg_lines))


def initial_state(cfg: ScenarioConfig) -> np.ndarray:
    return ket_density(_INITIAL_KETS[cfg["initial"]])


def build_generator(cfg: ScenarioConfig) -> dynamics.Generator:
    kind = cfg["generator"]
    if kind == "vacuum_drive":
        return dynamics.build_vacuum_drive(cfg.pair(), cfg.drive())
    if kind == "squeezed":
        return dynamics.build_squeezed(cfg.pair(), cfg.reservoir())
    if kind == "dicke_dressed":
        return dynamics.build_dicke_dressed(cfg.drive())
    return dynamics.build_bad_cavity(cfg.pair(), cfg["cavity_coupling"],
                                     cfg["cavity_rate"], cfg["cavity_drive"])


def _state_row(rho: np.ndarray, pair: geometry.AtomPairConfig) -> dict:
    pops = basis.collective_populations(rho)
    try:
        vis = observables.visibility(rho)
    except UndefinedValueError:
        vis = float("nan")
    return {
        "rho_gg": pops[0], "rho_ss": pops[1],
        "rho_aa": pops[2], "rho_ee": pops[3],
        "intensity": observables.total_intensity(rho, pair),
        "visibility": vis,
        "purity": observables.purity(rho),
        "spin_squared": observables.total_spin_squared(rho),
    }


def _run_steady(cfg: ScenarioConfig) -> ResultTable:
    gen = build_generator(cfg)
    rho, degenerate = dynamics.steady_state(gen)
    row = _state_row(rho, cfg.pair())
    rc = basis.basis_transform("to_collective", rho)
    row.update({
        "re_rho_sg": rc[1, 0].real, "im_rho_sg": rc[1, 0].imag,
        "re_rho_es": rc[3, 1].real, "im_rho_es": rc[3, 1].imag,
        "re_rho_eg": rc[3, 0].real, "im_rho_eg": rc[3, 0].imag,
    })
    table = ResultTable(columns=list(row), rows=[list(row.values())])
    table.metadata["degenerate"] = int(degenerate)
    return table


def _run_evolve(cfg: ScenarioConfig) -> ResultTable:
    gen = build_generator(cfg)
    series = dynamics.evolve(gen, initial_state(cfg), cfg.grid(),
                             rtol=cfg["rtol"], atol=cfg["atol"])
    pair = cfg.pair()
    columns = ["t", "rho_gg", "rho_ss", "rho_aa", "rho_ee",
               "intensity", "purity", "spin_squared"]
    rows = []
    for k, t in enumerate(series.times):
        row = _state_row(series.states[k], pair)
        rows.append([t, row["rho_gg"], row["rho_ss"], row["rho_aa"],
                     row["rho_ee"], row["intensity"], row["purity"],
                     row["spin_squared"]])
    return ResultTable(columns=columns, rows=rows)


def _run_g2(cfg: ScenarioConfig) -> ResultTable:
    gen = build_generator(cfg)
    rho, degenerate = dynamics.steady_state(gen)
    geom = observables.DetectionGeometry(theta1=cfg["theta1"],
                                         theta2=cfg["theta2"],
                                         phi=cfg["obs_phi"])
    series = observables.g2_tau(gen, rho, cfg.pair(), geom, cfg.grid())
    table = ResultTable(columns=["tau", "g2"],
                        rows=[[t, v] for t, v in
                              zip(series.taus, series.values)])
    table.metadata["degenerate"] = int(degenerate)
    return table


def _run_variance(cfg: ScenarioConfig) -> ResultTable:
    gen = build_generator(cfg)
    series = dynamics.evolve(gen, initial_state(cfg), cfg.grid(),
                             rtol=cfg["rtol"], atol=cfg["atol"])
    pair = cfg.pair()
    geom = observables.DetectionGeometry(theta1=cfg["theta1"],
                                         phi=cfg["obs_phi"])
    rows = [[t, observables.quadrature_variance(series.states[k], pair,
                                                cfg["alpha"], geom)]
            for k, t in enumerate(series.times)]
    return ResultTable(columns=["t", "variance"], rows=rows)


def _run_visibility(cfg: ScenarioConfig) -> ResultTable:
    gen = build_generator(cfg)
    rho, degenerate = dynamics.steady_state(gen)
    row = _state_row(rho, cfg.pair())
    table = ResultTable(columns=list(row), rows=[list(row.values())])
    table.metadata["degenerate"] = int(degenerate)
    return table


def _run_jump(cfg: ScenarioConfig) -> ResultTable:
    pair = cfg.pair()
    drive = cfg.drive() if cfg["rabi"] != 0 or cfg["detuning"] != 0 else None
    workers = cfg["workers"] or None
    ensemble = jumps.run_trajectories(pair, drive, initial_state(cfg),
                                      cfg["n_traj"], cfg["seed"], cfg.grid(),
                                      workers=workers,
                                      max_jumps=cfg["max_jumps"])
    gen = dynamics.build_vacuum_drive(pair, cfg.drive())
    reference = dynamics.evolve(gen, initial_state(cfg), cfg.grid(),
                                rtol=cfg["rtol"], atol=cfg["atol"])
    columns = ["t"]
    labels = ["gg", "ge", "eg", "ee"]  # product-basis (tensor) ordering
    columns += [f"mc_{s}" for s in labels]
    columns += [f"stderr_{s}" for s in labels]
    columns += [f"me_{s}" for s in labels]
    rows = []
    for k, t in enumerate(ensemble.times):
        mc = np.real(np.diag(ensemble.mean_states[k]))
        me = np.real(np.diag(reference.states[k]))
        rows.append([t, *mc, *ensemble.population_stderr[k], *me])
    table = ResultTable(columns=columns, rows=rows)
    table.metadata["n_trajectories"] = ensemble.n_trajectories
    table.sidecars["records.jsonl"] = records_jsonl(ensemble.records)
    table.sidecars["records.txt"] = jumps.export_records(ensemble.records)
    return table


def records_jsonl(records) -> str:
    """JSON-lines rendering of trajectory records."""
    lines = []
    for rec in records:
        lines.append(json.dumps({
            "seed": int(rec.seed), "index": int(rec.index),
            "n_jumps": int(rec.jump_times.size),
            "jump_times": [round(float(t), 9) for t in rec.jump_times],
            "channels": [int(c) for c in rec.channels],
        }, separators=(",", ":")))
    return "\n".join(lines) + "\n"


def _sweep_worker(args):
    cfg_values, key, value = args
    values = dict(cfg_values)
    values[key] = value
    sub = ScenarioConfig(values=values)
    gen = build_generator(sub)
    rho, _ = dynamics.steady_state(gen)
    return _state_row(rho, sub.pair())


def _run_sweep(cfg: ScenarioConfig) -> ResultTable:
    key = cfg["sweep_key"]
    grid = cfg.grid()
    payloads = [(cfg.values, key, float(v)) for v in grid]
    workers = cfg["workers"] or jumps.default_worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_worker, payloads))
    else:
        results = [_sweep_worker(p) for p in payloads]
    columns = [key] + list(results[0])
    rows = [[grid[k]] + list(results[k].values()) for k in range(len(grid))]
    return ResultTable(columns=columns, rows=rows)


def _run_figure(cfg: ScenarioConfig) -> ResultTable:
    from .figures import run_figure
    return run_figure(cfg["figure"])


_RUNNERS = {
    "steady": _run_steady,
    "evolve": _run_evolve,
    "g2": _run_g2,
    "variance": _run_variance,
    "visibility": _run_visibility,
    "jump": _run_jump,
    "sweep": _run_sweep,
    "figure": _run_figure,
}


def run_scenario(cfg: ScenarioConfig) -> ResultTable:
    """Execute a validated configuration and return its result table."""
    start = time.perf_counter()
    table = _RUNNERS[cfg["scenario"]](cfg)
    table.metadata.setdefault("config", serialize_config(cfg))
    table.metadata["engine_version"] = __version__
    table.metadata["wall_time_s"] = f"{time.perf_counter() - start:.3f}"
    return table
