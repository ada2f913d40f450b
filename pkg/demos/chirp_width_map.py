"""Chart the transfer regimes over the (chirp rate, pulse width) plane.

A coarse sweep over chirp rates of -5..+5 GHz/ns and widths of 1..5 ns
shows the three regimes side by side: pulse-area Rabi flopping along the
zero-chirp column, the adiabatic Raman transfer filling the fast negative
chirp corner, and the excited-manifold trap on the positive chirp side
where the sweep meets the crossings in the wrong order for a Lambda
transfer.  Rendered as ASCII heatmaps of the final P2 and P3+P4.
"""

import numpy as np

from chirp4 import IntegrationConfig, PulseParams, get_preset, sweep_chirp_fwhm

SHADES = " .:-=+*#%@"


def _heatmap(title, values, chirps, fwhms):
    print(title)
    for i in reversed(range(len(fwhms))):
        cells = "".join(SHADES[min(int(v * 10), 9)] for v in values[i])
        print(f"  fwhm {fwhms[i]:4.1f} ns |{cells}|")
    lo, hi = chirps[0], chirps[-1]
    print(f"             chirp {lo:+.0f} .. {hi:+.0f} GHz/ns\n")


def main():
    rb = get_preset("85Rb-D1")
    template = PulseParams(rabi_peak=3.035, tau0=1.0)
    chirps = np.linspace(-5.0, 5.0, 41)
    fwhms = np.linspace(1.0, 5.0, 9)

    grid = sweep_chirp_fwhm(rb, template, chirps, fwhms, IntegrationConfig(n_samples=20))
    print(f"{grid.n_cells} cells, {grid.n_failed()} failed\n")

    _heatmap("final P2 (ground-to-ground transfer):", grid.cells[:, :, 1], chirps, fwhms)
    _heatmap(
        "final P3+P4 (left in the excited manifold):",
        grid.cells[:, :, 2] + grid.cells[:, :, 3],
        chirps,
        fwhms,
    )

    best = np.unravel_index(np.nanargmax(grid.cells[:, :, 1]), grid.status.shape)
    print(f"best transfer: P2 = {grid.cells[best[0], best[1], 1]:.4f} at "
          f"chirp = {chirps[best[1]]:+.2f} GHz/ns, fwhm = {fwhms[best[0]]:.2f} ns")


if __name__ == "__main__":
    main()
