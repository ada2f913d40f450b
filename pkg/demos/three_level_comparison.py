"""Test when the textbook 3-level Lambda picture stands in for 4 levels.

The reduction drops the upper excited level and its 0.362 GHz splitting.
That is justified when both the chirp bandwidth and the Rabi frequency
dwarf the splitting, and it visibly breaks when they do not.  Two runs:
the fast-chirp transfer point, where both validity ratios clear their
thresholds and the reduced model lands near the full result, and the
slow-chirp point, where the bandwidth ratio collapses and the reduced
model parks everything in its single excited level while the full model
funnels it into the upper excited state the reduction does not contain.
"""

from chirp4 import PulseParams, compare_yields, fwhm_to_tau0, get_preset


def _show(tag, report):
    p4, p3 = report.p_final_4lvl, report.p_final_3lvl
    print(f"{tag}:")
    print(f"  4-level final: P1..P4 = "
          + ", ".join(f"{p:.4f}" for p in p4))
    print(f"  3-level final: P1..P3 = "
          + ", ".join(f"{p:.4f}" for p in p3))
    print(f"  level-2 yield gap: {report.delta_p2:.4f}")
    print(f"  chirp bandwidth / omega43 = {report.chirp_ratio:.2f} "
          f"(met: {report.chirp_flag}, strong: {report.chirp_strong})")
    print(f"  OmegaR / omega43 = {report.rabi_ratio:.2f} "
          f"(met: {report.rabi_flag}, strong: {report.rabi_strong})")
    print(f"  reduction valid: {report.valid()}\n")


def main():
    rb = get_preset("85Rb-D1")
    fast = PulseParams(rabi_peak=3.035, tau0=fwhm_to_tau0(2.99353), chirp=-2.94752)
    slow = PulseParams(rabi_peak=3.035, tau0=fwhm_to_tau0(50.0), chirp=-0.026)

    _show("fast chirp (transfer regime)", compare_yields(rb, fast))
    _show("slow chirp (trapping regime)", compare_yields(rb, slow))


if __name__ == "__main__":
    main()
