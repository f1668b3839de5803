"""Switching transmission windows with the phase of a classical drive.

A V-shaped emitter (one ground, two excited levels) with both optical
legs guided behaves like two overlapping mirrors.  A classical field that
mixes the excited levels splits them into a dressed doublet, and the
*phase* of that field decides which dressed state decouples from the
guide: flipping the drive phase by pi moves the transparency window from
one side of the spectrum to the other while the extinction points stay.

This reproduces the physics of the bundled preset fig3b with the API
directly instead of the CLI.

Run:  python3 demos/v_system_switch.py
"""

import math

import numpy as np

from wqed import (
    CoherentCoupling,
    Emitter,
    Level,
    SystemSpec,
    Transition,
    sweep_spectrum,
)

GAMMA_1D = 0.99    # guided fraction beta = 0.99 on both legs
GAMMA_PRIME = 0.01
SPLITTING = 1.0    # bare distance between the excited levels
DRIVE = 2.0        # full off-diagonal element between them


def v_system(drive_phase, magnitude=DRIVE):
    emitter = Emitter(
        id="V",
        levels=(
            Level(id="g", energy=0.0, kind="ground"),
            Level(id="e1", energy=0.0, kind="excited"),
            Level(id="e2", energy=SPLITTING, kind="excited"),
        ),
        transitions=(
            Transition(excited="e1", ground="g", gamma1d_right=GAMMA_1D / 2,
                       gamma1d_left=GAMMA_1D / 2, gamma_prime=GAMMA_PRIME),
            Transition(excited="e2", ground="g", gamma1d_right=GAMMA_1D / 2,
                       gamma1d_left=GAMMA_1D / 2, gamma_prime=GAMMA_PRIME),
        ),
    )
    couplings = ()
    if magnitude:
        couplings = (CoherentCoupling(a="e1", b="e2", magnitude=magnitude,
                                      phase=drive_phase),)
    return SystemSpec(emitters=(emitter,), coherent_couplings=couplings)


def describe(label, grid, transmission):
    t = transmission
    interior = range(1, grid.size - 1)
    dips = [i for i in interior if t[i] < t[i - 1] and t[i] <= t[i + 1]]
    peaks = [i for i in interior
             if t[i] > t[i - 1] and t[i] >= t[i + 1] and t[i] > 0.5]
    dip_text = ", ".join(
        f"|t|^2 = {t[i]:.1e} at {grid[i]:+.2f}" for i in dips
    )
    window = max(peaks, key=lambda i: t[i])
    print(f"{label:>12}:  dips: {dip_text}")
    print(f"{'':>12}   transparency |t|^2 = {t[window]:.4f} "
          f"at delta = {grid[window]:+.3f}")


def main():
    grid = np.linspace(-6.0, 6.0, 2001)
    for label, phase, magnitude in (
        ("drive off", 0.0, 0.0),
        ("dphi = 0", 0.0, DRIVE),
        ("dphi = pi", math.pi, DRIVE),
    ):
        spectrum = sweep_spectrum(v_system(phase, magnitude), grid)
        describe(label, grid, spectrum.transmission)

    print("\nWith the drive on, both dressed resonances dip, but only one")
    print("member of the doublet couples strongly; the quasi-dark partner")
    print("keeps a near-unit transparency right next to its shallow dip,")
    print("and flipping the drive phase by pi swaps the two roles.")
    print("Compare: wqed run --preset fig3b")


if __name__ == "__main__":
    main()
