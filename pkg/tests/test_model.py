"""Unit tests for the physical types, presets, and unit conversions."""

import math

import numpy as np
import pytest

from chirp4 import (
    LevelSystem,
    PulseParams,
    StateVector,
    PRESETS,
    UNVALIDATED_PRESETS,
    build_hamiltonian,
    fwhm_to_tau0,
    get_preset,
    intensity_to_rabi,
    rabi_at,
    rabi_to_intensity,
    tau0_to_fwhm,
)


def test_preset_85rb_d1_values():
    rb = get_preset("85Rb-D1")
    assert rb.omega21 == 3.035
    assert rb.omega43 == 0.362
    assert rb.dipole == 2.54e-29
    assert rb.n_levels == 4
    assert rb.label == "85Rb-D1"


def test_preset_d2_swaps_dipole_only():
    d1 = get_preset("85Rb-D1")
    d2 = get_preset("85Rb-D2")
    assert d2.dipole == 3.58e-29
    assert d2.omega21 == d1.omega21
    assert d2.omega43 == d1.omega43


def test_preset_87rb_flagged_unvalidated():
    assert UNVALIDATED_PRESETS == {"87Rb-D1", "87Rb-D2"}
    for name in UNVALIDATED_PRESETS:
        assert name in PRESETS


def test_unknown_preset_lists_available():
    with pytest.raises(KeyError, match="85Rb-D1"):
        get_preset("85Rb-D9")


def test_level_system_validation():
    with pytest.raises(ValueError, match="omega21"):
        LevelSystem(omega21=-1.0, omega43=0.0, dipole=1e-29)
    with pytest.raises(ValueError, match="omega43"):
        LevelSystem(omega21=1.0, omega43=-0.1, dipole=1e-29)
    with pytest.raises(ValueError, match="dipole"):
        LevelSystem(omega21=1.0, omega43=0.0, dipole=0.0)
    with pytest.raises(ValueError, match="n_levels"):
        LevelSystem(omega21=1.0, omega43=0.0, dipole=1e-29, n_levels=5)
    # degenerate splittings are allowed; they are a useful analytic limit
    LevelSystem(omega21=0.0, omega43=0.0, dipole=1e-29)


def test_pulse_params_validation_and_fwhm():
    with pytest.raises(ValueError, match="tau0"):
        PulseParams(rabi_peak=1.0, tau0=0.0)
    with pytest.raises(ValueError, match="rabi_peak"):
        PulseParams(rabi_peak=-1.0, tau0=1.0)
    p = PulseParams(rabi_peak=1.0, tau0=2.0)
    assert p.fwhm == pytest.approx(2.0 * 2.0 * math.sqrt(math.log(2.0)))
    q = p.with_fwhm(3.0)
    assert q.tau0 == pytest.approx(fwhm_to_tau0(3.0))
    assert q.rabi_peak == p.rabi_peak


def test_fwhm_tau0_roundtrip():
    for fwhm in (0.5, 1.0, 2.99353, 17.0, 50.0):
        assert tau0_to_fwhm(fwhm_to_tau0(fwhm)) == pytest.approx(fwhm, rel=1e-14)
    assert fwhm_to_tau0(2.0 * math.sqrt(math.log(2.0))) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        fwhm_to_tau0(0.0)
    with pytest.raises(ValueError):
        tau0_to_fwhm(-1.0)


def test_rabi_envelope_shape():
    p = PulseParams(rabi_peak=3.0, tau0=2.0, t_peak=1.0)
    assert rabi_at(1.0, p) == pytest.approx(3.0)
    assert rabi_at(3.0, p) == pytest.approx(3.0 * math.exp(-1.0))
    t = np.array([1.0, 3.0, -1.0])
    out = rabi_at(t, p)
    assert out.shape == (3,)
    assert out[1] == pytest.approx(out[2])


def test_intensity_rabi_roundtrip():
    mu = 2.54e-29
    for intensity in (1.0, 100.0, 833.8):
        rabi = intensity_to_rabi(intensity, mu)
        assert rabi_to_intensity(rabi, mu) == pytest.approx(intensity, rel=1e-12)
    # quadratic scaling: 4x the intensity doubles the Rabi frequency
    assert intensity_to_rabi(400.0, mu) == pytest.approx(2.0 * intensity_to_rabi(100.0, mu))
    with pytest.raises(ValueError):
        intensity_to_rabi(-1.0, mu)
    with pytest.raises(ValueError):
        intensity_to_rabi(1.0, 0.0)


def test_hamiltonian_structure():
    rb = get_preset("85Rb-D1")
    p = PulseParams(rabi_peak=2.0, tau0=1.5, chirp=-3.0, detuning=0.7, t_peak=0.25)
    t = 1.0
    m = build_hamiltonian(t, rb, p)
    assert m.shape == (4, 4)
    assert np.allclose(m, m.T)
    g = 0.5 * rabi_at(t, p)
    ramp = p.detuning + rb.omega43 + p.chirp * (t - p.t_peak)
    assert m[0, 0] == pytest.approx(ramp)
    assert m[1, 1] == pytest.approx(ramp + rb.omega21)
    assert m[2, 2] == 0.0
    assert m[3, 3] == pytest.approx(rb.omega43)
    for i in (0, 1):
        for j in (2, 3):
            assert m[i, j] == pytest.approx(g)
    # no direct ground-ground or excited-excited coupling
    assert m[0, 1] == 0.0
    assert m[2, 3] == 0.0


def test_hamiltonian_rejects_reduced_system():
    lam = LevelSystem(omega21=3.035, omega43=0.0, dipole=2.54e-29, n_levels=3)
    with pytest.raises(ValueError, match="n_levels"):
        build_hamiltonian(0.0, lam, PulseParams(rabi_peak=1.0, tau0=1.0))


def test_state_vector_construction():
    s = StateVector.ground(4)
    assert s.n_levels == 4
    assert s.populations()[0] == 1.0
    assert not s.amplitudes.flags.writeable
    s3 = StateVector.ground(3)
    assert s3.n_levels == 3
    even = StateVector(np.ones(4) / 2.0)
    assert np.allclose(even.populations(), 0.25)
    with pytest.raises(ValueError, match="norm"):
        StateVector(np.array([1.0, 1.0, 0.0, 0.0]))
    with pytest.raises(ValueError, match="length"):
        StateVector(np.ones(5) / np.sqrt(5.0))
