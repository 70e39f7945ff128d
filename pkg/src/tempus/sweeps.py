"""Parameter sweeps, config files, and CSV tables.

All physical inputs at this interface are dimensionless multiples of
the reference timescale: a sweep point is (aT, T/T0, sigma/T0) with the
energy gap fixed by omega*T0. Rows are produced in the deterministic
cross-product order of the configured lists; independent rows may be
dispatched to a process pool, and tables are assembled single-threaded
in row order so output bytes never depend on the worker count.
"""

from __future__ import annotations

import configparser
import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .clock import ideal_rate
from .geometry import Scenario, classical_ratio, fermi_chart_samples
from .probability import (
    alice_probability,
    bob_probability,
    default_workers,
    inertial_probability,
)
from .quadrature import QuadratureSpec

__all__ = [
    "SweepConfig",
    "SweepTable",
    "TWIN_COLUMNS",
    "INERTIAL_COLUMNS",
    "CHART_COLUMNS",
    "load_config",
    "scenario_at",
    "run_twin_sweep",
    "run_inertial_sweep",
    "run_chart_export",
]

TWIN_COLUMNS = (
    "aT", "T_over_T0", "sigma_over_T0", "omega_T0",
    "P_A", "P_A_err", "P_B", "P_B_err",
    "ratio", "classical_ratio", "converged", "warnings",
)
INERTIAL_COLUMNS = ("T_over_T0", "sigma_over_T0", "omega_T0", "alpha", "converged")
CHART_COLUMNS = ("tau", "X", "t", "x")


@dataclass(frozen=True)
class SweepConfig:
    """Axes and settings of one sweep run."""

    aT_values: tuple
    T_over_T0_values: tuple
    sigma_over_T0_values: tuple
    omega_T0: float = 2.0
    quadrature: QuadratureSpec = field(default_factory=QuadratureSpec)
    output_path: str = ""
    workers: int = 0  # 0 = TEMPUS_WORKERS env var, else CPU count

    def __post_init__(self):
        for name in ("aT_values", "T_over_T0_values", "sigma_over_T0_values"):
            values = getattr(self, name)
            object.__setattr__(self, name, tuple(float(v) for v in values))
            values = getattr(self, name)
            if not values:
                raise ValueError(f"{name} must not be empty")
            floor = 0.0 if name == "aT_values" else None
            for v in values:
                if floor is not None and v < floor:
                    raise ValueError(f"{name} entries must be non-negative, got {v}")
                if floor is None and v <= 0:
                    raise ValueError(f"{name} entries must be positive, got {v}")
        if self.omega_T0 <= 0:
            raise ValueError(f"omega_T0 must be positive, got {self.omega_T0}")
        if self.workers < 0:
            raise ValueError(f"workers must be non-negative, got {self.workers}")

    def resolved_workers(self) -> int:
        return self.workers if self.workers > 0 else default_workers()


@dataclass
class SweepTable:
    """An ordered CSV-shaped table with exact round-tripping."""

    columns: tuple
    rows: list

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_format_cell(c) for c in row])
        return buf.getvalue()

    def write_csv(self, path: str):
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(self.to_csv_text())

    @classmethod
    def read_csv(cls, path: str) -> "SweepTable":
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            header = tuple(next(reader))
            rows = [tuple(_parse_cell(c) for c in row) for row in reader]
        return cls(columns=header, rows=rows)

    def unconverged_rows(self) -> list:
        if "converged" not in self.columns:
            return []
        k = self.columns.index("converged")
        return [i for i, row in enumerate(self.rows) if row[k] is False]


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse_cell(text: str):
    if text == "true":
        return True
    if text == "false":
        return False
    try:
        return float(text)
    except ValueError:
        return text


def _parse_float_list(text: str):
    return tuple(float(tok) for tok in text.replace(",", " ").split())


def load_config(path: str) -> SweepConfig:
    """Parse a sweep config file with [scenario]/[sweep]/[quadrature]/[output]."""
    parser = configparser.ConfigParser()
    with open(path, "r", encoding="utf-8") as fh:
        parser.read_file(fh)

    sweep = parser["sweep"] if parser.has_section("sweep") else {}
    scenario = parser["scenario"] if parser.has_section("scenario") else {}
    output = parser["output"] if parser.has_section("output") else {}
    quad_raw = parser["quadrature"] if parser.has_section("quadrature") else {}

    def missing(section, key):
        raise ValueError(f"config is missing required key '{key}' in section [{section}]")

    for key in ("aT_values", "T_over_T0_values", "sigma_over_T0_values"):
        if key not in sweep:
            missing("sweep", key)

    quad_kwargs = {}
    for key in ("rel_tol_1d", "rel_tol_4d", "abs_tol", "omega_cutoff_multiple"):
        if key in quad_raw:
            quad_kwargs[key] = float(quad_raw[key])
    for key in ("max_subdivisions_1d", "max_subdivisions_4d"):
        if key in quad_raw:
            quad_kwargs[key] = int(quad_raw[key])

    return SweepConfig(
        aT_values=_parse_float_list(sweep["aT_values"]),
        T_over_T0_values=_parse_float_list(sweep["T_over_T0_values"]),
        sigma_over_T0_values=_parse_float_list(sweep["sigma_over_T0_values"]),
        omega_T0=float(scenario.get("omega_T0", 2.0)),
        quadrature=QuadratureSpec(**quad_kwargs),
        output_path=output.get("path", ""),
        workers=int(output.get("workers", 0)),
    )


def scenario_at(aT: float, t_over_t0: float, sigma_over_t0: float,
                omega_t0: float) -> Scenario:
    """Build the dimensionful scenario for one sweep point (T0 = 1)."""
    T = float(t_over_t0)
    return Scenario(
        a=float(aT) / T,
        T=T,
        omega=float(omega_t0),
        sigma=float(sigma_over_t0),
    )


def _twin_row(args):
    aT, t_over_t0, sigma_over_t0, omega_t0, spec = args
    scn = scenario_at(aT, t_over_t0, sigma_over_t0, omega_t0)
    alice = alice_probability(scn, spec)
    bob = bob_probability(scn, spec)
    warnings = list(dict.fromkeys(alice.warnings + bob.warnings))
    return (
        aT, t_over_t0, sigma_over_t0, omega_t0,
        alice.value.real, alice.error_estimate,
        bob.value.real, bob.error_estimate,
        bob.value.real / alice.value.real,
        classical_ratio(aT),
        alice.converged and bob.converged,
        "; ".join(warnings),
    )


def _inertial_row(args):
    t_over_t0, sigma_over_t0, omega_t0, spec = args
    p = inertial_probability(t_over_t0, omega_t0, sigma_over_t0, spec)
    rate = ideal_rate(omega_t0, sigma_over_t0)
    alpha = abs(p.value.real / t_over_t0 - rate) / rate
    return (t_over_t0, sigma_over_t0, omega_t0, alpha, p.converged)


def _run_rows(worker, jobs, workers: int):
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(worker, jobs))
    return [worker(job) for job in jobs]


def run_twin_sweep(cfg: SweepConfig) -> SweepTable:
    """One row per (aT, T/T0, sigma/T0) in cross-product order."""
    jobs = [
        (aT, t, s, cfg.omega_T0, cfg.quadrature)
        for aT in cfg.aT_values
        for t in cfg.T_over_T0_values
        for s in cfg.sigma_over_T0_values
    ]
    rows = _run_rows(_twin_row, jobs, cfg.resolved_workers())
    table = SweepTable(columns=TWIN_COLUMNS, rows=rows)
    if cfg.output_path:
        table.write_csv(cfg.output_path)
    return table


def run_inertial_sweep(cfg: SweepConfig) -> SweepTable:
    """Deviation-from-ideal rows over (T/T0, sigma/T0)."""
    jobs = [
        (t, s, cfg.omega_T0, cfg.quadrature)
        for t in cfg.T_over_T0_values
        for s in cfg.sigma_over_T0_values
    ]
    rows = _run_rows(_inertial_row, jobs, cfg.resolved_workers())
    table = SweepTable(columns=INERTIAL_COLUMNS, rows=rows)
    if cfg.output_path:
        table.write_csv(cfg.output_path)
    return table


def run_chart_export(scn: Scenario, tau_grid, x_grid, output_path: str = "") -> SweepTable:
    """Comoving-chart sample rows (tau, X, t, x) for the figure renderer."""
    samples = fermi_chart_samples(scn, np.asarray(tau_grid), np.asarray(x_grid))
    rows = [tuple(float(v) for v in row) for row in samples]
    table = SweepTable(columns=CHART_COLUMNS, rows=rows)
    if output_path:
        table.write_csv(output_path)
    return table


def with_overrides(cfg: SweepConfig, *, rel_tol=None, cutoff_multiple=None,
                   workers=None, output_path=None) -> SweepConfig:
    """Apply CLI flag overrides; --rel-tol rescales both tolerance tiers."""
    quad = cfg.quadrature
    if rel_tol is not None:
        quad = replace(quad, rel_tol_4d=rel_tol, rel_tol_1d=rel_tol / 100.0)
    if cutoff_multiple is not None:
        quad = replace(quad, omega_cutoff_multiple=cutoff_multiple)
    return replace(
        cfg,
        quadrature=quad,
        workers=cfg.workers if workers is None else workers,
        output_path=cfg.output_path if output_path is None else output_path,
    )
