"""Strand the population in the excited manifold with a slow chirp.

Over a 50 ns pulse chirped at only -0.026 GHz/ns the frequency sweep is
far too narrow to connect the two ground levels, so no Raman transfer
happens.  The sweep still crosses the one-photon resonances slowly
enough to climb adiabatically: the population leaves |1> and stays in
the excited manifold, split unevenly between |3> and |4>.  Repeating the
pulse ten times stronger changes the dressed-state composition but not
the verdict.  (With spontaneous emission ignored the excited levels hold
their population indefinitely; physically this is the regime where decay
would matter most.)
"""

import numpy as np

from chirp4 import IntegrationConfig, PulseParams, fwhm_to_tau0, get_preset, propagate


def main():
    rb = get_preset("85Rb-D1")
    for rabi in (3.035, 30.35):
        pulse = PulseParams(rabi_peak=rabi, tau0=fwhm_to_tau0(50.0), chirp=-0.026)
        traj = propagate(rb, pulse, IntegrationConfig(n_samples=1001))
        p = np.asarray(traj.final_populations())

        print(f"OmegaR = {rabi} GHz:")
        print("     t/ns      P1      P2      P3      P4")
        for k in range(0, traj.times.size, 125):
            t, pop = traj.times[k], traj.populations[k]
            print(f"  {t:+8.1f}  {pop[0]:.4f}  {pop[1]:.4f}  {pop[2]:.4f}  {pop[3]:.4f}")
        print(f"  final: P2 = {p[1]:.2e}, P3+P4 = {p[2] + p[3]:.6f}, "
              f"|P3 - P4| = {abs(p[2] - p[3]):.6f}\n")


if __name__ == "__main__":
    main()
