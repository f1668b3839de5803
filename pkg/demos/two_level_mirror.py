"""A single two-level emitter as a tunable partial mirror.

On resonance the emitter reradiates the guided field with a pi phase
shift, so transmission collapses to |t|^2 = (1 - beta)^2 where beta is
the fraction of spontaneous emission that goes back into the guide.  The
dip in 1 - |t|^2 always has full width Gamma (the total decay rate), no
matter how small the guided fraction is: loss eats the contrast, not the
linewidth.

Run:  python3 demos/two_level_mirror.py
"""

import numpy as np

from wqed import (
    Emitter,
    Level,
    SystemSpec,
    Transition,
    closed_form_two_level,
    sweep_spectrum,
)


def emitter_with_beta(beta):
    # Total width fixed at 1: directional guided rates beta/2 each,
    # the rest is emission into free space.
    return SystemSpec(emitters=(
        Emitter(
            id="A",
            levels=(
                Level(id="g", energy=0.0, kind="ground"),
                Level(id="e", energy=0.0, kind="excited"),
            ),
            transitions=(
                Transition(excited="e", ground="g",
                           gamma1d_right=beta / 2, gamma1d_left=beta / 2,
                           gamma_prime=1.0 - beta),
            ),
        ),
    ))


def dip_width(grid, transmission):
    """FWHM of the extinction dip, by linear interpolation."""
    depth = 1.0 - transmission
    half = depth.max() / 2
    above = depth >= half
    lo, hi = np.flatnonzero(above)[[0, -1]]
    x = grid

    def crossing(i, j):
        f = (half - depth[i]) / (depth[j] - depth[i])
        return x[i] + f * (x[j] - x[i])

    return crossing(hi, hi + 1) - crossing(lo, lo - 1)


def main():
    grid = np.linspace(-3.0, 3.0, 2001)
    print("beta    |t(0)|^2   (1-beta)^2   dip FWHM")
    for beta in (0.5, 0.9, 0.99):
        spectrum = sweep_spectrum(emitter_with_beta(beta), grid)
        on_resonance = spectrum.transmission[grid.size // 2]
        width = dip_width(grid, spectrum.transmission)
        print(f"{beta:4.2f}   {on_resonance: .6f}   {(1 - beta) ** 2:.6f}"
              f"     {width:.4f}")

    # The closed form carries the same physics without a matrix in sight.
    pair = closed_form_two_level(delta=0.0, gamma1d=0.99, gamma_total=1.0)
    print(f"\nclosed form at beta = 0.99: t = {pair.t:.6f}, "
          f"r = {pair.r:.6f}, loss = {pair.loss:.6f}")
    print("a nearly ideal emitter reflects almost everything it sees")


if __name__ == "__main__":
    main()
