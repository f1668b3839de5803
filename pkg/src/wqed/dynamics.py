"""Adiabatic ground-state dynamics of a driven lambda emitter.

For a far-detuned or weak coherent drive the excited level follows the field
and the two ground levels evolve under effective per-photon rates:

* p_d, dephasing-only scattering back to |0>,
* p_r, Raman transfer |0> -> |1>,
* p_sc, total probability that one incident photon is scattered rather than
  transmitted forward,

all built from the directional guided rates, the loss rates, and the complex
detuning delta - i Gamma/2 of the driven transition.  The drive also Stark
shifts |0>, moving the ground splitting from omega01 to omega01 + d_omega
with d_omega = Gamma_{0,1D} |alpha|^2 delta / |delta~|^2.

``evolve_ground_state`` integrates the resulting master equation for a
square input pulse with fixed-step RK4 and cross-checks the populations
against the exact exponential solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import StepTooLarge, NumericalError, ValidationError


@dataclass(frozen=True)
class LambdaParams:
    """Rates and detunings of one lambda emitter driven on the |0> leg.

    The six rates are per direction / channel: guided right and left rates
    on each leg plus a loss rate per leg.  ``delta`` is the drive detuning
    from the |0> -> |e> transition (transition minus drive frequency), and
    ``omega01`` the bare ground-state splitting.
    """

    gamma0_1d_right: float
    gamma0_1d_left: float
    gamma0_prime: float
    gamma1_1d_right: float
    gamma1_1d_left: float
    gamma1_prime: float
    delta: float
    omega01: float

    def __post_init__(self):
        rates = (
            ("gamma0_1d_right", self.gamma0_1d_right),
            ("gamma0_1d_left", self.gamma0_1d_left),
            ("gamma0_prime", self.gamma0_prime),
            ("gamma1_1d_right", self.gamma1_1d_right),
            ("gamma1_1d_left", self.gamma1_1d_left),
            ("gamma1_prime", self.gamma1_prime),
        )
        problems = [
            f"{name} must be finite and >= 0, got {value}"
            for name, value in rates
            if not (math.isfinite(value) and value >= 0)
        ]
        for name, value in (("delta", self.delta), ("omega01", self.omega01)):
            if not math.isfinite(value):
                problems.append(f"{name} must be finite, got {value}")
        if not problems and self.gamma <= 0:
            problems.append("total width must be positive")
        if problems:
            raise ValidationError("invalid lambda parameters", problems)

    @property
    def gamma0_1d(self) -> float:
        return self.gamma0_1d_right + self.gamma0_1d_left

    @property
    def gamma1_1d(self) -> float:
        return self.gamma1_1d_right + self.gamma1_1d_left

    @property
    def gamma0(self) -> float:
        return self.gamma0_1d + self.gamma0_prime

    @property
    def gamma1(self) -> float:
        return self.gamma1_1d + self.gamma1_prime

    @property
    def gamma(self) -> float:
        """Total width of the excited level."""
        return self.gamma0 + self.gamma1

    @property
    def beta0(self) -> float:
        return self.gamma0_1d / self.gamma

    @property
    def beta1(self) -> float:
        return self.gamma1_1d / self.gamma

    @property
    def delta_abs2(self) -> float:
        """|delta - i Gamma/2|^2."""
        return self.delta**2 + self.gamma**2 / 4.0


@dataclass(frozen=True)
class Rates:
    """Per-photon scattering probabilities of the driven lambda emitter."""

    p_d: float
    p_r: float
    p_sc: float


@dataclass(frozen=True)
class PulseSpec:
    """A square drive pulse: intensity |alpha|^2 on [0, duration]."""

    intensity: float
    duration: float
    shape: str = "square"

    def __post_init__(self):
        problems = []
        if self.shape != "square":
            problems.append(f"unsupported pulse shape {self.shape!r}")
        if not (math.isfinite(self.intensity) and self.intensity >= 0):
            problems.append(f"intensity must be finite and >= 0, got {self.intensity}")
        if not (math.isfinite(self.duration) and self.duration > 0):
            problems.append(f"duration must be finite and > 0, got {self.duration}")
        if problems:
            raise ValidationError("invalid pulse", problems)

    @property
    def nbar(self) -> float:
        """Mean photon number of the pulse."""
        return self.intensity * self.duration


@dataclass(frozen=True)
class GroundDensity:
    """Ground-manifold density matrix at one time."""

    rho00: float
    rho11: float
    rho01: complex
    time: float

    def __post_init__(self):
        problems = []
        if abs(self.rho00 + self.rho11 - 1.0) > 1e-9:
            problems.append(
                f"populations must sum to 1 within 1e-9, got {self.rho00 + self.rho11}"
            )
        if self.rho00 < -1e-9 or self.rho11 < -1e-9:
            problems.append("populations must be non-negative within 1e-9")
        if self.rho00 * self.rho11 - abs(self.rho01) ** 2 < -1e-9:
            problems.append("coherence exceeds the positivity bound")
        if problems:
            raise ValidationError("invalid ground density", problems)


@dataclass(frozen=True)
class EffectiveElements:
    """Drive-dressed ground-manifold Hamiltonian pieces."""

    h00_shift: float
    h11: float
    omega01_prime: float


def compute_rates(p: LambdaParams) -> Rates:
    """Per-photon dephasing, Raman and total scattering probabilities.

    Only the right-going guided rate of the driven leg enters p_d and p_r;
    for a symmetric emitter that is half the leg's total guided rate, which
    is where the factor of two between directional and total rates is
    encoded.
    """
    gr0 = p.gamma0_1d_right
    d2 = p.delta_abs2
    p_d = p.gamma0 * gr0 / d2
    p_r = p.gamma1 * gr0 / d2
    lorentz = 1.0 + 4.0 * p.delta**2 / p.gamma**2
    p_sc = (2.0 - p.beta0 - p.beta1) * p.beta0 / lorentz
    return Rates(p_d=p_d, p_r=p_r, p_sc=p_sc)


def effective_hamiltonian_elements(
    p: LambdaParams, intensity: float
) -> EffectiveElements:
    """Stark shift of |0> at drive intensity |alpha|^2 and the dressed
    splitting omega01_prime = omega01 + shift."""
    if not (math.isfinite(intensity) and intensity >= 0):
        raise ValidationError(f"intensity must be finite and >= 0, got {intensity}")
    shift = p.gamma0_1d * intensity * p.delta / p.delta_abs2
    return EffectiveElements(
        h00_shift=-shift, h11=p.omega01, omega01_prime=p.omega01 + shift
    )


def _closed_form(
    p: LambdaParams, pulse: PulseSpec, rates: Rates, y0, t0: float, t: float
):
    """Exact populations and coherence magnitude for the square pulse."""
    fluence = pulse.intensity * (
        max(0.0, min(t, pulse.duration)) - max(0.0, min(t0, pulse.duration))
    )
    rho00 = y0[0] * math.exp(-rates.p_r * fluence)
    rho11 = y0[1] + y0[0] - rho00
    coh = abs(y0[2]) * math.exp(-0.5 * (rates.p_r + rates.p_d) * fluence)
    return rho00, rho11, coh


def evolve_ground_state(
    p: LambdaParams,
    pulse: PulseSpec,
    t_grid,
    initial: GroundDensity | None = None,
    max_steps: int = 2_000_000,
) -> tuple[GroundDensity, ...]:
    """Integrate the ground-manifold master equation over a time grid.

    The equations for a square pulse of intensity I(t) are

        d rho00 = -p_r I rho00,   d rho11 = +p_r I rho00,
        d rho01 = (i omega01'(t) - (p_r + p_d) I / 2) rho01,

    with omega01' the Stark-dressed splitting while the pulse is on and the
    bare omega01 after it.  Fixed-step RK4 with the step chosen so that
    max(p_r, p_d) I h <= 1e-3 and |omega01'| h <= 0.02; segments never
    straddle the pulse edge.  Raises StepTooLarge when the bound needs more
    than ``max_steps`` steps in total, and cross-checks the result against
    the exact square-pulse solution.
    """
    times = [float(t) for t in t_grid]
    if not times:
        raise ValidationError("time grid is empty")
    if any(b <= a for a, b in zip(times, times[1:])):
        raise ValidationError("time grid must be strictly increasing")
    if times[0] < 0:
        raise ValidationError("time grid must start at t >= 0")

    rates = compute_rates(p)
    dressed = effective_hamiltonian_elements(p, pulse.intensity).omega01_prime

    if initial is None:
        initial = GroundDensity(rho00=1.0, rho11=0.0, rho01=0j, time=times[0])

    def segment_edges(a: float, b: float):
        edge = pulse.duration
        if a < edge < b:
            return ((a, edge), (edge, b))
        return ((a, b),)

    def rhs(y, on_pulse: bool):
        intensity = pulse.intensity if on_pulse else 0.0
        omega = dressed if on_pulse else p.omega01
        d00 = -rates.p_r * intensity * y[0]
        d01 = (1j * omega - 0.5 * (rates.p_r + rates.p_d) * intensity) * y[2]
        return (d00, -d00, d01)

    def max_step(on_pulse: bool) -> float:
        h = math.inf
        if on_pulse:
            rate = max(rates.p_r, rates.p_d) * pulse.intensity
            if rate > 0:
                h = min(h, 1e-3 / rate)
        omega = abs(dressed if on_pulse else p.omega01)
        if omega > 0:
            h = min(h, 0.02 / omega)
        return h

    y = (complex(initial.rho00), complex(initial.rho11), complex(initial.rho01))
    y0 = y
    t0 = times[0]
    out = [initial]
    steps_used = 0

    for t_prev, t_next in zip(times, times[1:]):
        for a, b in segment_edges(t_prev, t_next):
            on_pulse = a < pulse.duration
            h_max = max_step(on_pulse)
            n = max(1, math.ceil((b - a) / h_max)) if math.isfinite(h_max) else 1
            steps_used += n
            if steps_used > max_steps:
                raise StepTooLarge(
                    f"step bound needs more than {max_steps} RK4 steps"
                )
            h = (b - a) / n
            for _ in range(n):
                k1 = rhs(y, on_pulse)
                k2 = rhs(tuple(y[i] + 0.5 * h * k1[i] for i in range(3)), on_pulse)
                k3 = rhs(tuple(y[i] + 0.5 * h * k2[i] for i in range(3)), on_pulse)
                k4 = rhs(tuple(y[i] + h * k3[i] for i in range(3)), on_pulse)
                y = tuple(
                    y[i] + (h / 6.0) * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i])
                    for i in range(3)
                )
        rho00, rho11, coh = _closed_form(p, pulse, rates, y0, t0, t_next)
        if (
            abs(y[0].real - rho00) > 1e-6
            or abs(y[1].real - rho11) > 1e-6
            or abs(abs(y[2]) - coh) > 1e-6
        ):
            raise NumericalError(
                "integrator drifted from the exact square-pulse solution"
            )
        out.append(
            GroundDensity(
                rho00=y[0].real, rho11=y[1].real, rho01=complex(y[2]), time=t_next
            )
        )
    return tuple(out)
