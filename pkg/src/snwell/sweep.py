"""Batch driver: alpha sweeps at fixed mu, with reproducible data files.

One sweep point = one alpha value: assemble the matrix, solve the lowest
n_states pairs, then (depending on the requested outputs) position
observables, Wigner fields, the nonreactive probability, and classical
contours at e = E_n.  Points are independent work items; a bounded thread
pool computes them and results are written in a fixed order afterwards, so
serial and parallel runs of the same config produce byte-identical trees.

File formats (all plain text, all embedding the full parameter set as
leading '# key = value' lines; floats are printed with repr round-trip
formatting so files reload to bitwise-identical doubles):

* records.csv            one row per (alpha, state): alpha, depth,
                         state_index, energy, mean_x, sigma_x,
                         nonreactive_prob, boundary_amplitude.  Columns not
                         requested via `outputs` hold nan.
* spectrum_<alpha>.csv   x column plus one psi_n column per state; energies
                         in the header.
* wigner_<alpha>_n<k>.dat  header then N rows (x) by N columns (p) of rho.
* contours_<alpha>.csv   level-set samples of H = E_n per state.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import FIRST_EXCEPTION, ThreadPoolExecutor, wait
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .classical import ModelParams, contour_points, depth
from .discretize import assemble, make_grid
from .eigensolve import Spectrum, solve
from .errors import ConfigurationError
from .observables import position_record
from .wigner import (
    WignerField,
    make_momentum_grid,
    nonreactive_probability,
    wigner_transform,
)

__all__ = [
    "OUTPUT_KINDS",
    "SweepConfig",
    "SweepRecord",
    "PointFailure",
    "SweepPointError",
    "run_sweep",
    "emit_wigner_grid",
    "load_wigner_grid",
]

logger = logging.getLogger(__name__)

OUTPUT_KINDS = ("spectrum", "observables", "wigner", "probability", "contours")
DEFAULT_OUTPUTS = frozenset({"spectrum", "observables", "probability", "contours"})

RECORD_COLUMNS = (
    "alpha",
    "depth",
    "state_index",
    "energy",
    "mean_x",
    "sigma_x",
    "nonreactive_prob",
    "boundary_amplitude",
)


@dataclass(frozen=True)
class SweepConfig:
    """Everything one sweep run depends on.  Defaults are the standard setup:
    mu = 4, window [-1, 9] x [-6, 6], N = 599, five states, hbar = m = 1."""

    mu: float = 4.0
    alpha_values: tuple[float, ...] = (1.0, 2.0, 5.0)
    domain: tuple[float, float] = (-1.0, 9.0)
    momentum_domain: tuple[float, float] = (-6.0, 6.0)
    n_points: int = 599
    n_states: int = 5
    hbar: float = 1.0
    mass: float = 1.0
    outputs: frozenset = DEFAULT_OUTPUTS
    output_dir: Path = Path("sweep_out")
    fail_fast: bool = False
    threads: int | None = None

    def __post_init__(self):
        if len(self.alpha_values) < 1:
            raise ConfigurationError("alpha_values must not be empty")
        if any(a <= 0 for a in self.alpha_values):
            raise ConfigurationError(f"alpha values must be > 0, got {self.alpha_values}")
        if len(set(self.alpha_values)) != len(self.alpha_values):
            raise ConfigurationError("alpha values must be distinct (they name output files)")
        if self.n_states < 1:
            raise ConfigurationError(f"n_states must be >= 1, got {self.n_states}")
        unknown = set(self.outputs) - set(OUTPUT_KINDS)
        if unknown:
            raise ConfigurationError(f"unknown outputs {sorted(unknown)}; valid: {OUTPUT_KINDS}")
        if self.threads is not None and self.threads < 1:
            raise ConfigurationError(f"threads must be >= 1, got {self.threads}")
        # delegates mu/hbar/mass range checks
        ModelParams(mu=self.mu, alpha=self.alpha_values[0], hbar=self.hbar, mass=self.mass)


@dataclass(frozen=True)
class SweepRecord:
    alpha: float
    depth: float
    state_index: int
    energy: float
    mean_x: float
    sigma_x: float
    nonreactive_prob: float
    boundary_amplitude: float


@dataclass(frozen=True)
class PointFailure:
    alpha: float
    state_index: int | None
    message: str


class SweepPointError(RuntimeError):
    """One or more sweep points failed; successful points were still written."""

    def __init__(self, failures: list[PointFailure], records: list[SweepRecord]):
        lines = ", ".join(
            f"(alpha={f.alpha}, n={f.state_index}): {f.message}" for f in failures
        )
        super().__init__(f"{len(failures)} sweep point(s) failed: {lines}")
        self.failures = failures
        self.records = records


@dataclass
class _PointData:
    params: ModelParams
    spectrum: Spectrum
    records: list = field(default_factory=list)
    fields: list = field(default_factory=list)
    contours: list = field(default_factory=list)


def _fmt(x) -> str:
    """Shortest decimal string that round-trips the IEEE double exactly."""
    return repr(float(x))


def _alpha_tag(alpha: float) -> str:
    return repr(float(alpha))


def _sweep_point(cfg: SweepConfig, grid, pgrid, alpha: float) -> _PointData:
    params = ModelParams(mu=cfg.mu, alpha=alpha, hbar=cfg.hbar, mass=cfg.mass)
    spectrum = solve(assemble(params, grid), cfg.n_states)
    want_obs = "observables" in cfg.outputs
    want_prob = "probability" in cfg.outputs
    want_wigner = "wigner" in cfg.outputs

    data = _PointData(params=params, spectrum=spectrum)
    for state in spectrum.states:
        mean_x = sigma_x = prob = math.nan
        if want_obs:
            rec = position_record(state, grid, params)
            mean_x, sigma_x = rec.mean_x, rec.sigma_x
        if want_prob or want_wigner:
            w = wigner_transform(state, grid, pgrid, params)
            if want_prob:
                prob = nonreactive_probability(w, params)
            if want_wigner:
                data.fields.append(w)
        data.records.append(
            SweepRecord(
                alpha=alpha,
                depth=depth(params),
                state_index=state.index,
                energy=state.energy,
                mean_x=mean_x,
                sigma_x=sigma_x,
                nonreactive_prob=prob,
                boundary_amplitude=state.boundary_amplitude,
            )
        )
    if "contours" in cfg.outputs:
        data.contours = [
            (state.index, state.energy, contour_points(params, state.energy, grid))
            for state in spectrum.states
        ]
    return data


def _config_header(cfg: SweepConfig) -> list[str]:
    return [
        f"# mu = {_fmt(cfg.mu)}",
        f"# hbar = {_fmt(cfg.hbar)}",
        f"# mass = {_fmt(cfg.mass)}",
        f"# domain = {_fmt(cfg.domain[0])} {_fmt(cfg.domain[1])}",
        f"# pdomain = {_fmt(cfg.momentum_domain[0])} {_fmt(cfg.momentum_domain[1])}",
        f"# n_points = {cfg.n_points}",
        f"# n_states = {cfg.n_states}",
        f"# alpha = {' '.join(_fmt(a) for a in cfg.alpha_values)}",
        f"# outputs = {' '.join(sorted(cfg.outputs))}",
    ]


def _params_header(params: ModelParams, grid) -> list[str]:
    return [
        f"# mu = {_fmt(params.mu)}",
        f"# alpha = {_fmt(params.alpha)}",
        f"# hbar = {_fmt(params.hbar)}",
        f"# mass = {_fmt(params.mass)}",
        f"# domain = {_fmt(grid.a)} {_fmt(grid.b)}",
        f"# n_points = {grid.n_points}",
    ]


def _write_records(path: Path, cfg: SweepConfig, records: list[SweepRecord]) -> None:
    lines = ["# snwell sweep records"]
    lines += _config_header(cfg)
    lines.append(",".join(RECORD_COLUMNS))
    for r in sorted(records, key=lambda r: (r.alpha, r.state_index)):
        lines.append(
            ",".join(
                (
                    _fmt(r.alpha),
                    _fmt(r.depth),
                    str(r.state_index),
                    _fmt(r.energy),
                    _fmt(r.mean_x),
                    _fmt(r.sigma_x),
                    _fmt(r.nonreactive_prob),
                    _fmt(r.boundary_amplitude),
                )
            )
        )
    path.write_text("\n".join(lines) + "\n")


def _write_spectrum(path: Path, data: _PointData) -> None:
    spectrum = data.spectrum
    lines = ["# snwell spectrum"]
    lines += _params_header(data.params, spectrum.grid)
    for state in spectrum.states:
        lines.append(f"# energy_{state.index} = {_fmt(state.energy)}")
    lines.append("x," + ",".join(f"psi_{s.index}" for s in spectrum.states))
    columns = [spectrum.grid.points] + [s.values for s in spectrum.states]
    for row in zip(*columns):
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _write_contours(path: Path, data: _PointData, grid) -> None:
    lines = ["# snwell classical level sets at e = E_n"]
    lines += _params_header(data.params, grid)
    lines.append("state_index,energy,x,p")
    for index, energy, pts in data.contours:
        for x, p in pts:
            lines.append(f"{index},{_fmt(energy)},{_fmt(x)},{_fmt(p)}")
    path.write_text("\n".join(lines) + "\n")


def emit_wigner_grid(w: WignerField, path) -> None:
    """Write one Wigner field as a self-describing whitespace grid file.

    The header carries the parameter set, both grid windows, the state index
    and energy (enough to rebuild the field's provenance and the classical
    overlay contour at e = E_n), and the nonreactive probability of the
    tabulated values.
    """
    path = Path(path)
    xg, pg = w.spatial_grid, w.momentum_grid
    prob = nonreactive_probability(w, w.params)
    lines = [
        "# snwell wigner grid",
        f"# mu = {_fmt(w.params.mu)}",
        f"# alpha = {_fmt(w.params.alpha)}",
        f"# hbar = {_fmt(w.params.hbar)}",
        f"# mass = {_fmt(w.params.mass)}",
        f"# state_index = {w.state_index}",
        f"# energy = {_fmt(w.energy)}",
        f"# x_window = {_fmt(xg.a)} {_fmt(xg.b)}",
        f"# x_points = {xg.n_points}",
        f"# p_window = {_fmt(pg.c)} {_fmt(pg.d)}",
        f"# p_points = {pg.n_points}",
        f"# nonreactive_prob = {_fmt(prob)}",
        "# layout = rows x, columns p",
    ]
    lines.extend(" ".join(_fmt(v) for v in row) for row in w.values)
    path.write_text("\n".join(lines) + "\n")


def load_wigner_grid(path) -> tuple[WignerField, dict]:
    """Reload a grid file written by emit_wigner_grid.

    Returns the reconstructed field and the raw header dict (string values;
    notably meta['nonreactive_prob'] as stored at write time).
    """
    path = Path(path)
    meta = {}
    with open(path) as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            body = line[1:].strip()
            if "=" in body:
                key, _, value = body.partition("=")
                meta[key.strip()] = value.strip()
    values = np.loadtxt(path)
    params = ModelParams(
        mu=float(meta["mu"]),
        alpha=float(meta["alpha"]),
        hbar=float(meta["hbar"]),
        mass=float(meta["mass"]),
    )
    xa, xb = (float(v) for v in meta["x_window"].split())
    pc, pd = (float(v) for v in meta["p_window"].split())
    xg = make_grid(xa, xb, int(meta["x_points"]))
    pg = make_momentum_grid(pc, pd, int(meta["p_points"]))
    field_ = WignerField(
        values=values,
        state_index=int(meta["state_index"]),
        energy=float(meta["energy"]),
        params=params,
        spatial_grid=xg,
        momentum_grid=pg,
    )
    return field_, meta


def run_sweep(cfg: SweepConfig) -> list[SweepRecord]:
    """Run every alpha point, write the requested files, return all records.

    Point failures are logged with their (alpha, n) and do not stop the other
    points unless cfg.fail_fast; if any occurred, a SweepPointError carrying
    the failure list (and the successful records) is raised after the
    remaining points were computed and written.
    """
    grid = make_grid(cfg.domain[0], cfg.domain[1], cfg.n_points)
    pgrid = make_momentum_grid(cfg.momentum_domain[0], cfg.momentum_domain[1], cfg.n_points)
    outdir = Path(cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)

    n_points = len(cfg.alpha_values)
    results: list[_PointData | None] = [None] * n_points
    failures: list[PointFailure] = []

    def capture(i: int):
        alpha = cfg.alpha_values[i]
        try:
            results[i] = _sweep_point(cfg, grid, pgrid, alpha)
        except Exception as exc:
            failure = PointFailure(
                alpha=alpha, state_index=getattr(exc, "state_index", None), message=str(exc)
            )
            logger.error("sweep point alpha=%s failed: %s", alpha, exc)
            failures.append(failure)
            if cfg.fail_fast:
                raise SweepPointError([failure], []) from exc

    workers = cfg.threads if cfg.threads is not None else (os.cpu_count() or 1)
    if workers == 1 or n_points == 1:
        for i in range(n_points):
            capture(i)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(capture, i) for i in range(n_points)]
            done, pending = wait(futures, return_when=FIRST_EXCEPTION)
            for fut in pending:
                fut.cancel()
            for fut in done:
                if not fut.cancelled() and fut.exception() is not None:
                    raise fut.exception()

    records: list[SweepRecord] = []
    for data in results:
        if data is not None:
            records.extend(data.records)
    _write_records(outdir / "records.csv", cfg, records)
    for i, data in enumerate(results):
        if data is None:
            continue
        tag = _alpha_tag(cfg.alpha_values[i])
        if "spectrum" in cfg.outputs:
            _write_spectrum(outdir / f"spectrum_{tag}.csv", data)
        if "contours" in cfg.outputs:
            _write_contours(outdir / f"contours_{tag}.csv", data, grid)
        for w in data.fields:
            emit_wigner_grid(w, outdir / f"wigner_{tag}_n{w.state_index}.dat")

    if failures:
        raise SweepPointError(failures, records)
    return records
