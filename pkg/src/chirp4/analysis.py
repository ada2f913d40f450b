"""Physics diagnostics: adiabaticity conditions, pulse area, and the
effective three-level Lambda reduction with a 4-vs-3-level yield comparison.

The transfer regimes are organized by two conditions evaluated here.
Chirp bandwidth: |alpha/2pi| * tau0 > omega21 marks the adiabatic-passage
window.  Landau-Zener: |alpha/2pi| / OmegaR^2 < 1 (dimensionless in the
GHz/ns unit system) keeps the sweep through each crossing adiabatic.
A separate broadband flag (1/tau0 > omega21) marks the pulse-area regime
where chirping is secondary.

The Lambda reduction keeps the two ground levels and a single excited
level with the same per-transition coupling OmegaR/2; it is the model of
the prior three-level treatments, not a bright-state rescaling.  The
bright-state correspondence (4-level at omega43 = 0 equals the 3-level
model driven sqrt(2) harder) is exercised in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .integrator import IntegrationConfig, propagate
from .model import LevelSystem, PulseParams

__all__ = [
    "AdiabaticityReport",
    "ComparisonReport",
    "adiabaticity_report",
    "pulse_area",
    "reduce_to_lambda3",
    "compare_yields",
]

RATIO_MET = 5.0
RATIO_STRONG = 10.0


@dataclass(frozen=True)
class AdiabaticityReport:
    """Evaluated adiabaticity inequalities for one (system, pulse) pair.

    chirp_bandwidth_product : |alpha/2pi| * tau0 in GHz.
    chirp_condition_met : product > omega21.
    lz_ratio : |alpha/2pi| / OmegaR^2.
    lz_condition_met : lz_ratio < 1; lz_strong flags < 0.1.
    spectral_width : 1/tau0 in GHz.
    broadband_flag : spectral width > omega21 (pulse-area regime).
    """

    chirp_bandwidth_product: float
    chirp_condition_met: bool
    lz_ratio: float
    lz_condition_met: bool
    lz_strong: bool
    spectral_width: float
    broadband_flag: bool


@dataclass(frozen=True)
class ComparisonReport:
    """Final yields of the 4-level model against its Lambda reduction.

    delta_p2 is the absolute difference in the final level-2 population.
    The validity ratios compare the chirp bandwidth and the peak Rabi
    frequency against the excited splitting omega43; "much greater" is
    operationalized as ratio > 5, "strongly" as ratio > 10.  Ratios are
    inf when omega43 = 0.
    """

    p_final_4lvl: tuple
    p_final_3lvl: tuple
    delta_p2: float
    chirp_ratio: float
    chirp_flag: bool
    chirp_strong: bool
    rabi_ratio: float
    rabi_flag: bool
    rabi_strong: bool

    def valid(self) -> bool:
        return self.chirp_flag and self.rabi_flag


def adiabaticity_report(system: LevelSystem, pulse: PulseParams) -> AdiabaticityReport:
    product = abs(pulse.chirp) * pulse.tau0
    lz = abs(pulse.chirp) / pulse.rabi_peak**2 if pulse.rabi_peak > 0 else math.inf
    width = 1.0 / pulse.tau0
    return AdiabaticityReport(
        chirp_bandwidth_product=product,
        chirp_condition_met=product > system.omega21,
        lz_ratio=lz,
        lz_condition_met=lz < 1.0,
        lz_strong=lz < 0.1,
        spectral_width=width,
        broadband_flag=width > system.omega21,
    )


def pulse_area(pulse: PulseParams) -> float:
    """Time integral of the angular Rabi frequency, in radians.

    A = 2pi * OmegaR * tau0 * sqrt(pi) for the Gaussian envelope.
    """
    return 2.0 * math.pi * pulse.rabi_peak * pulse.tau0 * math.sqrt(math.pi)


def reduce_to_lambda3(system: LevelSystem) -> LevelSystem:
    """Drop the upper excited level, keeping omega21 and the dipole."""
    if system.n_levels != 4:
        raise ValueError(f"expected a 4-level system, got n_levels={system.n_levels}")
    return replace(
        system,
        n_levels=3,
        omega43=0.0,
        label=system.label + "-lambda3",
    )


def compare_yields(
    system: LevelSystem,
    pulse: PulseParams,
    config: IntegrationConfig | None = None,
) -> ComparisonReport:
    """Propagate the 4-level system and its Lambda reduction side by side."""
    if system.n_levels != 4:
        raise ValueError(f"expected a 4-level system, got n_levels={system.n_levels}")
    if config is None:
        config = IntegrationConfig()

    p4 = propagate(system, pulse, config).final_state.populations()
    p3 = propagate(reduce_to_lambda3(system), pulse, config).final_state.populations()

    if system.omega43 > 0:
        chirp_ratio = abs(pulse.chirp) * pulse.tau0 / system.omega43
        rabi_ratio = pulse.rabi_peak / system.omega43
    else:
        chirp_ratio = math.inf
        rabi_ratio = math.inf
    return ComparisonReport(
        p_final_4lvl=tuple(float(p) for p in p4),
        p_final_3lvl=tuple(float(p) for p in p3),
        delta_p2=abs(float(p4[1]) - float(p3[1])),
        chirp_ratio=chirp_ratio,
        chirp_flag=chirp_ratio > RATIO_MET,
        chirp_strong=chirp_ratio > RATIO_STRONG,
        rabi_ratio=rabi_ratio,
        rabi_flag=rabi_ratio > RATIO_MET,
        rabi_strong=rabi_ratio > RATIO_STRONG,
    )
