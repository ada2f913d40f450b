"""Diagnostics tests: adiabaticity inequalities, pulse area, the Lambda
reduction, and the 4-vs-3-level yield comparison."""

import math

import pytest

from chirp4 import (
    IntegrationConfig,
    LevelSystem,
    PulseParams,
    adiabaticity_report,
    compare_yields,
    final_populations,
    fwhm_to_tau0,
    get_preset,
    propagate,
    pulse_area,
    reduce_to_lambda3,
)

RB = get_preset("85Rb-D1")


def test_adiabaticity_report_values():
    p = PulseParams(rabi_peak=3.035, tau0=2.0, chirp=-2.5)
    r = adiabaticity_report(RB, p)
    assert r.chirp_bandwidth_product == pytest.approx(5.0)
    assert r.chirp_condition_met  # 5.0 > omega21 = 3.035
    assert r.lz_ratio == pytest.approx(2.5 / 3.035**2)
    assert r.lz_condition_met
    assert not r.lz_strong
    assert r.spectral_width == pytest.approx(0.5)
    assert not r.broadband_flag


def test_adiabaticity_flag_boundaries():
    # slow chirp over a short pulse: bandwidth condition not met
    weak = adiabaticity_report(RB, PulseParams(rabi_peak=3.035, tau0=0.5, chirp=-1.0))
    assert not weak.chirp_condition_met
    # strong drive pushes the sweep deep into the adiabatic regime
    strong = adiabaticity_report(RB, PulseParams(rabi_peak=30.35, tau0=10.0, chirp=-1.0))
    assert strong.lz_strong
    # a sub-ns pulse is spectrally broader than the ground splitting
    broad = adiabaticity_report(RB, PulseParams(rabi_peak=3.035, tau0=0.2))
    assert broad.broadband_flag
    # unchirped: ratio 0, product 0
    flat = adiabaticity_report(RB, PulseParams(rabi_peak=3.035, tau0=1.0))
    assert flat.chirp_bandwidth_product == 0.0
    assert flat.lz_ratio == 0.0
    # zero amplitude: Landau-Zener ratio diverges
    off = adiabaticity_report(RB, PulseParams(rabi_peak=0.0, tau0=1.0, chirp=1.0))
    assert math.isinf(off.lz_ratio)
    assert not off.lz_condition_met


def test_pulse_area_formula():
    p = PulseParams(rabi_peak=2.0, tau0=3.0)
    assert pulse_area(p) == pytest.approx(2.0 * math.pi * 2.0 * 3.0 * math.sqrt(math.pi))


def test_reduce_to_lambda3():
    lam = reduce_to_lambda3(RB)
    assert lam.n_levels == 3
    assert lam.omega43 == 0.0
    assert lam.omega21 == RB.omega21
    assert lam.dipole == RB.dipole
    assert lam.label == "85Rb-D1-lambda3"
    with pytest.raises(ValueError, match="4-level"):
        reduce_to_lambda3(lam)


def test_compare_yields_wiring():
    p = PulseParams(rabi_peak=3.035, tau0=fwhm_to_tau0(2.0), chirp=-3.0)
    cfg = IntegrationConfig(n_samples=50)
    r = compare_yields(RB, p, cfg)
    p4 = final_populations(propagate(RB, p, cfg))
    p3 = final_populations(propagate(reduce_to_lambda3(RB), p, cfg))
    assert r.p_final_4lvl == pytest.approx(p4, abs=0.0)
    assert r.p_final_3lvl == pytest.approx(p3, abs=0.0)
    assert len(r.p_final_3lvl) == 3
    assert r.delta_p2 == pytest.approx(abs(p4[1] - p3[1]))
    # ratio definitions against the excited splitting
    assert r.chirp_ratio == pytest.approx(3.0 * p.tau0 / RB.omega43)
    assert r.rabi_ratio == pytest.approx(3.035 / RB.omega43)
    assert r.rabi_flag and not r.rabi_strong  # 8.38 sits between 5 and 10
    with pytest.raises(ValueError, match="4-level"):
        compare_yields(reduce_to_lambda3(RB), p, cfg)


def test_compare_yields_validity_thresholds():
    cfg = IntegrationConfig(n_samples=50)
    # chirp_ratio just above "met" (> 5) but below "strong" (> 10)
    tau0 = 6.0 * RB.omega43 / 1.0
    r = compare_yields(RB, PulseParams(rabi_peak=3.035, tau0=tau0, chirp=-1.0), cfg)
    assert r.chirp_flag and not r.chirp_strong
    assert r.valid()
    # slow chirp violates the bandwidth ratio, invalidating the reduction
    r2 = compare_yields(RB, PulseParams(rabi_peak=3.035, tau0=tau0, chirp=-0.01), cfg)
    assert not r2.chirp_flag
    assert not r2.valid()


def test_compare_yields_degenerate_excited_ratios():
    flat = LevelSystem(omega21=3.035, omega43=0.0, dipole=2.54e-29)
    r = compare_yields(flat, PulseParams(rabi_peak=1.0, tau0=1.0, chirp=-1.0),
                       IntegrationConfig(n_samples=50))
    assert math.isinf(r.chirp_ratio)
    assert math.isinf(r.rabi_ratio)
    assert r.valid()
