"""Pumping a lambda emitter with a weak coherent pulse.

A lambda emitter (two ground states |0>, |1>, one excited state) driven
on the |0> leg scatters each incoming photon either elastically (blue,
emitter stays in |0>) or through the Raman channel (red, emitter flips to
|1>).  For a weak coherent drive the ground populations obey a closed
rate equation, so a square pulse empties |0> exponentially with rate
p_r * |alpha|^2 while every emitted photon sorts into one of four
frequency/direction bins whose probabilities sum to one when nothing is
lost.

Run:  python3 demos/raman_state_transfer.py
"""

import numpy as np

from wqed import (
    LambdaParams,
    PulseSpec,
    compute_rates,
    evolve_ground_state,
    filtered_photon_probs,
)


def symmetric_lambda(delta):
    # Both legs fully guided with symmetric rates and equal strength:
    # beta0 = beta1 = 1/2, no free-space loss.
    return LambdaParams(
        gamma0_1d_right=0.25, gamma0_1d_left=0.25, gamma0_prime=0.0,
        gamma1_1d_right=0.25, gamma1_1d_left=0.25, gamma1_prime=0.0,
        delta=delta, omega01=0.0,
    )


def main():
    print("scattering rates and filtered photon probabilities")
    print("delta    p_r     p_sc    p_red_r  p_red_l  p_blue_r  p_blue_l  sum")
    for delta in (0.0, 0.5, 1.0, 2.0):
        p = symmetric_lambda(delta)
        rates = compute_rates(p)
        probs = filtered_photon_probs(p)
        total = (probs.p_red_r + probs.p_red_l
                 + probs.p_blue_r + probs.p_blue_l)
        print(f"{delta:4.1f}   {rates.p_r:.4f}  {rates.p_sc:.4f}"
              f"  {probs.p_red_r:.4f}   {probs.p_red_l:.4f}"
              f"   {probs.p_blue_r:.4f}    {probs.p_blue_l:.4f}   {total:.3f}")
    print("forward Raman tops out at 1/4: half the scatterings flip the")
    print("state, and the flipped photon picks a direction at random.\n")

    # Square pulse with one photon on average: rho00 decays as
    # exp(-p_r |alpha|^2 t) and the trace stays put.
    p = symmetric_lambda(0.0)
    rates = compute_rates(p)
    pulse = PulseSpec(intensity=2.0, duration=1.0)
    times = np.linspace(0.0, 1.0, 6)
    states = evolve_ground_state(p, pulse, times)
    print(f"square pulse, p_r*|alpha|^2 = {rates.p_r * pulse.intensity:.2f}:")
    print("   t     rho00    exact    rho11")
    for state in states:
        exact = np.exp(-rates.p_r * pulse.intensity * state.time)
        print(f"  {state.time:.1f}   {state.rho00:.5f}  {exact:.5f}"
              f"  {state.rho11:.5f}")


if __name__ == "__main__":
    main()
