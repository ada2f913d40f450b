"""Grid scan tests: shapes, cell correspondence, failure isolation,
and thread-count invariance of the numerical results."""

import numpy as np
import pytest

import chirp4.scans as scans
from chirp4 import (
    IntegrationConfig,
    IntegrationError,
    PulseParams,
    detuning_scan,
    final_populations,
    fwhm_to_tau0,
    get_preset,
    propagate,
    sweep_chirp_fwhm,
)

RB = get_preset("85Rb-D1")
TEMPLATE = PulseParams(rabi_peak=3.035, tau0=1.0)
FAST = IntegrationConfig(n_samples=50)


def test_sweep_shapes_and_axes():
    chirps = np.array([-2.0, 0.0, 2.0])
    fwhms = np.array([1.0, 2.0])
    grid = sweep_chirp_fwhm(RB, TEMPLATE, chirps, fwhms, FAST)
    assert grid.cells.shape == (2, 3, 4)
    assert grid.status.shape == (2, 3)
    assert grid.n_cells == 6
    assert grid.n_failed() == 0
    assert np.array_equal(grid.x_axis, chirps)
    assert np.array_equal(grid.y_axis, fwhms)
    assert grid.x_name == "chirp_GHz_per_ns"
    assert grid.y_name == "fwhm_ns"
    assert not grid.cells.flags.writeable
    # every successful cell carries a full set of populations
    assert np.all(np.isfinite(grid.cells))
    assert np.allclose(grid.cells.sum(axis=2), 1.0, atol=1e-8)


def test_sweep_cell_matches_direct_propagation():
    chirps = [-3.0, 1.5]
    fwhms = [2.0, 3.0]
    grid = sweep_chirp_fwhm(RB, TEMPLATE, chirps, fwhms, FAST)
    from dataclasses import replace

    direct = replace(TEMPLATE, chirp=1.5, tau0=fwhm_to_tau0(3.0))
    want = np.asarray(final_populations(propagate(RB, direct, FAST)))
    assert np.allclose(grid.cells[1, 1, :], want, atol=0.0)


def test_sweep_axis_validation():
    with pytest.raises(ValueError, match="nonempty"):
        sweep_chirp_fwhm(RB, TEMPLATE, [], [1.0], FAST)
    with pytest.raises(ValueError, match="fwhms"):
        sweep_chirp_fwhm(RB, TEMPLATE, [1.0], [0.0], FAST)


def test_failed_cell_is_isolated(monkeypatch):
    real = scans.propagate

    def flaky(system, pulse, config=None, initial=None):
        if pulse.chirp == 2.0:
            raise IntegrationError("step size underflow at t = 0 ns", 0.0)
        return real(system, pulse, config, initial)

    monkeypatch.setattr(scans, "propagate", flaky)
    grid = sweep_chirp_fwhm(RB, TEMPLATE, [0.0, 2.0], [1.0], FAST)
    assert grid.n_failed() == 1
    assert grid.status[0, 1].startswith("failed:")
    assert "underflow" in grid.status[0, 1]
    assert np.all(np.isnan(grid.cells[0, 1, :]))
    # the neighbouring cell is untouched
    assert grid.status[0, 0] == ""
    assert np.all(np.isfinite(grid.cells[0, 0, :]))


def test_thread_count_does_not_change_results():
    chirps = np.linspace(-3.0, 3.0, 4)
    fwhms = np.linspace(1.0, 2.0, 3)
    g1 = sweep_chirp_fwhm(RB, TEMPLATE, chirps, fwhms, FAST, threads=1)
    g4 = sweep_chirp_fwhm(RB, TEMPLATE, chirps, fwhms, FAST, threads=4)
    assert np.array_equal(g1.cells, g4.cells)
    assert np.array_equal(g1.status, g4.status)


def test_detuning_scan_shape_and_values():
    deltas = np.array([-4.0, 0.0, 4.0])
    pulse = PulseParams(rabi_peak=3.035, tau0=1.5, chirp=-1.0)
    grid = detuning_scan(RB, pulse, deltas, FAST)
    assert grid.cells.shape == (1, 3, 4)
    assert grid.x_name == "delta_GHz"
    assert np.array_equal(grid.x_axis, deltas)
    assert grid.y_axis[0] == pytest.approx(pulse.fwhm)
    from dataclasses import replace

    want = np.asarray(final_populations(propagate(RB, replace(pulse, detuning=4.0), FAST)))
    assert np.allclose(grid.cells[0, 2, :], want, atol=0.0)
    with pytest.raises(ValueError, match="nonempty"):
        detuning_scan(RB, pulse, [], FAST)


def test_detuning_scan_keeps_template_detuning_out(monkeypatch):
    # the axis value replaces the template detuning rather than adding to it
    pulse = PulseParams(rabi_peak=1.0, tau0=1.0, detuning=99.0)
    seen = []
    real = scans.propagate

    def spy(system, p, config=None, initial=None):
        seen.append(p.detuning)
        return real(system, p, config, initial)

    monkeypatch.setattr(scans, "propagate", spy)
    detuning_scan(RB, pulse, [1.0, 2.0], FAST)
    assert seen == [1.0, 2.0]
