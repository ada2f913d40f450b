"""Population transfer in a 4-level atom driven by one chirped Gaussian pulse.

The model covers the optically allowed hyperfine transitions between the
5S and 5P shells of ultracold rubidium in the rotating frame: two ground
levels split by omega21, two excited levels split by omega43, all four
ground-excited pairs driven with the same Rabi envelope.  Propagating
through a single linearly chirped pulse yields the familiar regimes:
Rabi-type oscillation for short pulses, adiabatic passage between the
ground hyperfine levels for negative chirp, trapping in the excited
manifold for positive chirp or slow sweeps.

Conventions: all Hamiltonian entries are ordinary frequencies in GHz and
time is in ns; the propagator supplies the 2*pi, solving
i dc/dt = 2*pi * M(t) * c.
"""

from .model import (
    LevelSystem,
    PulseParams,
    StateVector,
    PRESETS,
    UNVALIDATED_PRESETS,
    get_preset,
    rabi_at,
    build_hamiltonian,
    fwhm_to_tau0,
    tau0_to_fwhm,
    intensity_to_rabi,
    rabi_to_intensity,
)
from .integrator import (
    IntegrationConfig,
    IntegrationError,
    Trajectory,
    propagate,
    final_populations,
)
from .scans import SweepGrid, sweep_chirp_fwhm, detuning_scan
from .analysis import (
    AdiabaticityReport,
    ComparisonReport,
    adiabaticity_report,
    pulse_area,
    reduce_to_lambda3,
    compare_yields,
)

__version__ = "0.1.0"

__all__ = [
    "LevelSystem",
    "PulseParams",
    "StateVector",
    "PRESETS",
    "UNVALIDATED_PRESETS",
    "get_preset",
    "rabi_at",
    "build_hamiltonian",
    "fwhm_to_tau0",
    "tau0_to_fwhm",
    "intensity_to_rabi",
    "rabi_to_intensity",
    "IntegrationConfig",
    "IntegrationError",
    "Trajectory",
    "propagate",
    "final_populations",
    "SweepGrid",
    "sweep_chirp_fwhm",
    "detuning_scan",
    "AdiabaticityReport",
    "ComparisonReport",
    "adiabaticity_report",
    "pulse_area",
    "reduce_to_lambda3",
    "compare_yields",
    "__version__",
]
