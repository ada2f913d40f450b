"""Batch propagation over parameter grids.

Two scan shapes cover the standard studies: a 2-D sweep over
(chirp, FWHM) and a 1-D scan over one-photon detuning.  Cells are
independent propagations from the ground state sharing one immutable
(system, pulse template, config) base, so they can run on a thread
pool; results land in preallocated index-addressed arrays, which keeps
output bitwise identical for any worker count.

A failed cell (step underflow, norm drift) records NaN populations and
a diagnostic string instead of aborting the whole grid.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .integrator import IntegrationConfig, IntegrationError, propagate
from .model import LevelSystem, PulseParams, fwhm_to_tau0

__all__ = ["SweepGrid", "sweep_chirp_fwhm", "detuning_scan"]


@dataclass(frozen=True, eq=False)
class SweepGrid:
    """Final populations on a rectangular parameter grid.

    x_axis, y_axis : grid coordinates; y_axis may be a singleton.
    cells : (len(y_axis), len(x_axis), n_levels) array of final
        populations; NaN rows mark failed cells.
    status : (len(y_axis), len(x_axis)) array of strings, "" for
        success, otherwise a short diagnostic.
    x_name, y_name : axis labels ("chirp_GHz_per_ns", "fwhm_ns",
        "delta_GHz").
    system, pulse_template, config : the shared base.
    """

    x_axis: np.ndarray = field()
    y_axis: np.ndarray = field()
    cells: np.ndarray = field()
    status: np.ndarray = field()
    x_name: str = "x"
    y_name: str = "y"
    system: LevelSystem | None = None
    pulse_template: PulseParams | None = None
    config: IntegrationConfig | None = None

    @property
    def n_cells(self) -> int:
        return self.cells.shape[0] * self.cells.shape[1]

    def n_failed(self) -> int:
        return int(np.sum(self.status != ""))


def _run_cells(system, pulses, shape, config, threads):
    """Propagate one pulse per cell, writing results by index."""
    n_rows, n_cols = shape
    cells = np.full((n_rows, n_cols, system.n_levels), np.nan)
    status = np.full((n_rows, n_cols), "", dtype=object)

    def one(idx):
        i, j = divmod(idx, n_cols)
        try:
            traj = propagate(system, pulses[idx], config)
        except IntegrationError as err:
            status[i, j] = f"failed: {err}"
        else:
            cells[i, j, :] = traj.final_state.populations()

    indices = range(n_rows * n_cols)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(one, indices))
    else:
        for idx in indices:
            one(idx)
    cells.flags.writeable = False
    return cells, status


def sweep_chirp_fwhm(
    system: LevelSystem,
    pulse_template: PulseParams,
    chirps,
    fwhms,
    config: IntegrationConfig | None = None,
    threads: int | None = None,
) -> SweepGrid:
    """Final populations over a (chirp, FWHM) grid.

    Each cell copies the template, overrides chirp and tau0 (from the
    FWHM), and propagates from level 1.  Rows follow fwhms, columns
    follow chirps; axis ordering is preserved as given.
    """
    chirps = np.atleast_1d(np.asarray(chirps, dtype=float))
    fwhms = np.atleast_1d(np.asarray(fwhms, dtype=float))
    if chirps.size == 0 or fwhms.size == 0:
        raise ValueError("sweep axes must be nonempty")
    if np.any(fwhms <= 0):
        raise ValueError("fwhms must be > 0")
    if config is None:
        config = IntegrationConfig()

    pulses = [
        replace(pulse_template, chirp=float(a), tau0=fwhm_to_tau0(float(w)))
        for w in fwhms
        for a in chirps
    ]
    cells, status = _run_cells(system, pulses, (fwhms.size, chirps.size), config, threads)
    return SweepGrid(
        x_axis=chirps,
        y_axis=fwhms,
        cells=cells,
        status=status,
        x_name="chirp_GHz_per_ns",
        y_name="fwhm_ns",
        system=system,
        pulse_template=pulse_template,
        config=config,
    )


def detuning_scan(
    system: LevelSystem,
    pulse_template: PulseParams,
    deltas,
    config: IntegrationConfig | None = None,
    threads: int | None = None,
) -> SweepGrid:
    """Final populations against one-photon detuning (singleton y-axis)."""
    deltas = np.atleast_1d(np.asarray(deltas, dtype=float))
    if deltas.size == 0:
        raise ValueError("deltas must be nonempty")
    if config is None:
        config = IntegrationConfig()

    pulses = [replace(pulse_template, detuning=float(d)) for d in deltas]
    cells, status = _run_cells(system, pulses, (1, deltas.size), config, threads)
    return SweepGrid(
        x_axis=deltas,
        y_axis=np.array([pulse_template.fwhm]),
        cells=cells,
        status=status,
        x_name="delta_GHz",
        y_name="fwhm_ns",
        system=system,
        pulse_template=pulse_template,
        config=config,
    )
