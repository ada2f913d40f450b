"""Physical types and unit conventions for the 4-level chirped-pulse problem.

Units everywhere: time in ns, all frequencies (Rabi, splittings, detuning)
as ordinary frequencies in GHz, chirp rate in GHz/ns.  Hamiltonian matrices
built here are ordinary-frequency matrices; the propagator supplies the 2*pi,
i.e. it integrates  i dc/dt = 2*pi * M(t) * c.  With this convention the
peak Rabi frequency is Omega_R = mu*E0/h (Planck h, not hbar), which is what
ties the GHz numbers to laboratory intensities in W/cm^2.

Level ordering follows the atom: |1>, |2> are the lower/upper 5S hyperfine
states (split by omega21), |3>, |4> the lower/upper excited-state hyperfine
states (split by omega43).  All population starts in |1>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

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
]

# SI constants (CODATA exact values)
SPEED_OF_LIGHT = 299792458.0        # m/s
VACUUM_PERMITTIVITY = 8.8541878128e-12  # F/m
PLANCK_H = 6.62607015e-34           # J*s

# FWHM of the field envelope exp(-(t/tau0)^2) is tau0 * 2*sqrt(ln 2)
_FWHM_FACTOR = 2.0 * math.sqrt(math.log(2.0))


@dataclass(frozen=True)
class LevelSystem:
    """Atomic level structure: hyperfine splittings and transition dipole.

    Parameters
    ----------
    omega21 : float
        Ground-state (5S) hyperfine splitting, GHz.
    omega43 : float
        Excited-state (5P) hyperfine splitting, GHz.
    dipole : float
        Transition dipole moment, C*m.  One shared value per line; the
        hyperfine transition strengths are taken as equal.
    n_levels : int
        4 for the full system, 3 for the reduced lambda model.
    label : str
        Free-text tag, e.g. ``"85Rb-D1"``.
    """

    omega21: float
    omega43: float
    dipole: float
    n_levels: int = 4
    label: str = ""

    def __post_init__(self):
        if self.omega21 < 0:
            raise ValueError(f"omega21 must be >= 0, got {self.omega21}")
        if self.omega43 < 0:
            raise ValueError(f"omega43 must be >= 0, got {self.omega43}")
        if self.dipole <= 0:
            raise ValueError(f"dipole must be > 0, got {self.dipole}")
        if self.n_levels not in (3, 4):
            raise ValueError(f"n_levels must be 3 or 4, got {self.n_levels}")


@dataclass(frozen=True)
class PulseParams:
    """Single linearly-chirped Gaussian pulse.

    The field envelope is E0 * exp(-(t - t_peak)^2 / tau0^2) with a carrier
    whose instantaneous frequency ramps linearly at the chirp rate.

    Parameters
    ----------
    rabi_peak : float
        Peak Rabi frequency Omega_R = mu*E0/h, GHz (ordinary frequency).
    tau0 : float
        Envelope width, ns.  FWHM of the field is tau0 * 2*sqrt(ln 2).
    chirp : float
        Linear chirp rate alpha/2pi, GHz/ns, signed.
    detuning : float
        One-photon detuning Delta of the carrier at the pulse peak from the
        |1> -> |4> transition, GHz, signed.
    t_peak : float
        Time of peak field, ns.
    """

    rabi_peak: float
    tau0: float
    chirp: float = 0.0
    detuning: float = 0.0
    t_peak: float = 0.0

    def __post_init__(self):
        if self.tau0 <= 0:
            raise ValueError(f"tau0 must be > 0, got {self.tau0}")
        if self.rabi_peak < 0:
            raise ValueError(f"rabi_peak must be >= 0, got {self.rabi_peak}")

    @property
    def fwhm(self) -> float:
        """FWHM of the field envelope, ns."""
        return tau0_to_fwhm(self.tau0)

    def with_fwhm(self, fwhm: float) -> "PulseParams":
        """Copy of these parameters with tau0 set from a field FWHM."""
        return replace(self, tau0=fwhm_to_tau0(fwhm))


NORM_TOL = 1e-9  # unit-norm tolerance on |c|^2 at construction


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitude vector over the levels, unit norm.

    ``amplitudes`` is stored as a read-only complex array of length 3 or 4.
    """

    amplitudes: np.ndarray = field()

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).copy()
        if amps.ndim != 1 or amps.size not in (3, 4):
            raise ValueError(f"amplitudes must be a length-3 or -4 vector, got shape {amps.shape}")
        norm2 = float(np.sum(np.abs(amps) ** 2))
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"state norm^2 deviates from 1 by {abs(norm2 - 1.0):.3e}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def ground(cls, n_levels: int = 4) -> "StateVector":
        """All population in level |1>."""
        amps = np.zeros(n_levels, dtype=np.complex128)
        amps[0] = 1.0
        return cls(amps)

    @property
    def n_levels(self) -> int:
        return self.amplitudes.size

    def populations(self) -> np.ndarray:
        """|c_i|^2 per level."""
        return np.abs(self.amplitudes) ** 2


# 85Rb constants: 5S splitting 3.035 GHz, 5P1/2 splitting 0.362 GHz,
# dipole 2.54e-29 C*m (D1) / 3.58e-29 C*m (D2).  The D2 presets keep the
# D1 excited-state splitting (only the dipole is swapped); supply omega43
# explicitly for quantitative D2 work.  87Rb presets use the textbook
# splittings but are not validated against any reference result here.
PRESETS: dict[str, LevelSystem] = {
    "85Rb-D1": LevelSystem(omega21=3.035, omega43=0.362, dipole=2.54e-29, label="85Rb-D1"),
    "85Rb-D2": LevelSystem(omega21=3.035, omega43=0.362, dipole=3.58e-29, label="85Rb-D2"),
    "87Rb-D1": LevelSystem(omega21=6.8347, omega43=0.8167, dipole=2.54e-29, label="87Rb-D1"),
    "87Rb-D2": LevelSystem(omega21=6.8347, omega43=0.8167, dipole=3.58e-29, label="87Rb-D2"),
}

UNVALIDATED_PRESETS = frozenset({"87Rb-D1", "87Rb-D2"})


def get_preset(name: str) -> LevelSystem:
    try:
        return PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise KeyError(f"unknown preset {name!r}; available: {known}") from None


def rabi_at(t, pulse: PulseParams):
    """Instantaneous Rabi frequency Omega_R(t), GHz.

    Gaussian envelope rabi_peak * exp(-(t - t_peak)^2 / tau0^2); accepts a
    scalar or an array of times.
    """
    u = (np.asarray(t, dtype=float) - pulse.t_peak) / pulse.tau0
    out = pulse.rabi_peak * np.exp(-(u**2))
    return float(out) if np.isscalar(t) else out


def build_hamiltonian(t: float, system: LevelSystem, pulse: PulseParams) -> np.ndarray:
    """Rotating-frame 4x4 Hamiltonian matrix at time t, ordinary GHz.

    Diagonal: [Delta + omega43 + chirp*(t-T),
               Delta + omega43 + omega21 + chirp*(t-T),
               0,
               omega43];
    every ground<->excited entry is Omega_R(t)/2; ground-ground and
    excited-excited couplings are zero.  Real symmetric by construction.
    The propagator applies the 2*pi: i dc/dt = 2*pi * M(t) * c.
    """
    if system.n_levels != 4:
        raise ValueError(f"build_hamiltonian requires a 4-level system, got n_levels={system.n_levels}")
    g = 0.5 * rabi_at(float(t), pulse)
    ramp = pulse.detuning + system.omega43 + pulse.chirp * (float(t) - pulse.t_peak)
    m = np.zeros((4, 4))
    m[0, 0] = ramp
    m[1, 1] = ramp + system.omega21
    m[3, 3] = system.omega43
    m[0, 2] = m[2, 0] = g
    m[0, 3] = m[3, 0] = g
    m[1, 2] = m[2, 1] = g
    m[1, 3] = m[3, 1] = g
    return m


def fwhm_to_tau0(fwhm: float) -> float:
    """Envelope width tau0 from the field FWHM (both ns)."""
    if fwhm <= 0:
        raise ValueError(f"fwhm must be > 0, got {fwhm}")
    return fwhm / _FWHM_FACTOR


def tau0_to_fwhm(tau0: float) -> float:
    """Field FWHM from the envelope width tau0 (both ns)."""
    if tau0 <= 0:
        raise ValueError(f"tau0 must be > 0, got {tau0}")
    return tau0 * _FWHM_FACTOR


def intensity_to_rabi(intensity: float, dipole: float) -> float:
    """Peak Rabi frequency (GHz) for a peak intensity in W/cm^2.

    E0 = sqrt(2 I / (c eps0)) and Omega_R = mu E0 / h; intensity scales as
    the square of the Rabi frequency.
    """
    if intensity < 0:
        raise ValueError(f"intensity must be >= 0, got {intensity}")
    if dipole <= 0:
        raise ValueError(f"dipole must be > 0, got {dipole}")
    e0 = math.sqrt(2.0 * intensity * 1e4 / (SPEED_OF_LIGHT * VACUUM_PERMITTIVITY))
    return dipole * e0 / PLANCK_H / 1e9


def rabi_to_intensity(rabi: float, dipole: float) -> float:
    """Peak intensity (W/cm^2) for a peak Rabi frequency in GHz."""
    if rabi < 0:
        raise ValueError(f"rabi must be >= 0, got {rabi}")
    if dipole <= 0:
        raise ValueError(f"dipole must be > 0, got {dipole}")
    e0 = rabi * 1e9 * PLANCK_H / dipole
    return 0.5 * SPEED_OF_LIGHT * VACUUM_PERMITTIVITY * e0**2 / 1e4
