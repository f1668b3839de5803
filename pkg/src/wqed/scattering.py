"""Single-photon scattering amplitudes from the inverted excitation matrix.

The coupling tensor A packs, for each propagation direction, the amplitude
connecting a joint ground state to each single-excitation state:

    A[dir, g, a] = sqrt(gamma_dir of the channel) * exp(i coupling_phase)
                   * exp(+i z_a) for right movers, exp(-i z_a) for left,

where z_a is the phase position of the excited emitter.  Kernel entries are
S[out_dir, in_dir, g_out, g_in] = sum_ab conj(A[out, g_out, a]) inv[a, b]
A[in, g_in, b], and the elastic amplitudes referenced at the emitter plane
are t = 1 + i S (same direction) and r = i S (reversed direction).  Common
propagation phases between the emitter plane and distant observation points
are dropped; ``reflection_phase`` on output_amplitudes restores one if a
specific reference plane is wanted.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .emitters import SystemSpec, build_single_excitation_basis
from .errors import (
    AsymmetricCoupling,
    DivisionByZero,
    MultiGroundElastic,
    SingularMatrix,
    ValidationError,
)
from .hamiltonian import NhInverse, assemble_nh, invert_nh

RIGHT = "right"
LEFT = "left"
_DIRS = (RIGHT, LEFT)


@dataclass(frozen=True)
class AmplitudePair:
    """Elastic transmission and reflection amplitudes at one detuning."""

    t: complex
    r: complex

    @property
    def transmission(self) -> float:
        return abs(self.t) ** 2

    @property
    def reflection(self) -> float:
        return abs(self.r) ** 2

    @property
    def loss(self) -> float:
        return 1.0 - self.transmission - self.reflection


@dataclass(frozen=True)
class ScatteringKernel:
    """All direction- and ground-state-resolved scattering sums at one detuning.

    ``amplitudes[i_out, i_in, g_out, g_in]`` with direction index 0 = right,
    1 = left.  Entries with g_out != g_in are Raman amplitudes into a
    different joint ground state.
    """

    amplitudes: np.ndarray
    evaluation_detuning: float
    basis: object

    def entry(self, out_dir: str, in_dir: str, g_out: int, g_in: int) -> complex:
        return complex(
            self.amplitudes[_DIRS.index(out_dir), _DIRS.index(in_dir), g_out, g_in]
        )


@dataclass(frozen=True)
class SweepWarning:
    """A grid point whose amplitudes could not be evaluated."""

    code: str
    message: str
    index: int
    detuning: float


@dataclass(frozen=True)
class Spectrum:
    detuning_grid: np.ndarray
    transmission: np.ndarray
    reflection: np.ndarray
    loss: np.ndarray
    warnings: tuple[SweepWarning, ...] = ()


def coupling_tensor(system: SystemSpec, basis) -> np.ndarray:
    """The A tensor of shape (2 directions, n_ground, n_excited)."""
    n_g = len(basis.ground_states)
    n_e = basis.dim
    a = np.zeros((2, n_g, n_e), dtype=complex)
    for idx in range(n_e):
        exc = basis.excited_states[idx]
        z = system.emitters[exc.emitter_index].phase_position
        for g_idx, tr, _ in basis.decay_channels(idx):
            dipole = cmath.exp(1j * tr.coupling_phase)
            a[0, g_idx, idx] += math.sqrt(tr.gamma1d_right) * dipole * cmath.exp(1j * z)
            a[1, g_idx, idx] += math.sqrt(tr.gamma1d_left) * dipole * cmath.exp(-1j * z)
    return a


def scattering_kernel(
    system: SystemSpec, basis, nh_inverse: NhInverse, detuning: float
) -> ScatteringKernel:
    """Contract the coupling tensor with the matrix inverse.

    The inverse must have been computed from the same basis at the same
    drive detuning.
    """
    a = coupling_tensor(system, basis)
    s = np.einsum("agi,ij,bhj->abgh", a.conj(), nh_inverse.entries, a)
    return ScatteringKernel(amplitudes=s, evaluation_detuning=detuning, basis=basis)


def output_amplitudes(
    kernel: ScatteringKernel,
    input_direction: str = RIGHT,
    ground_state: int = 0,
    reflection_phase: float = 0.0,
) -> AmplitudePair:
    """Elastic t and r for a single-joint-ground system.

    Raises MultiGroundElastic when several joint ground states exist, since
    elastic amplitudes are then state-dependent and the scattering problem
    is inelastic.
    """
    n_g = kernel.amplitudes.shape[2]
    if n_g != 1:
        raise MultiGroundElastic(
            f"elastic amplitudes are ambiguous with {n_g} joint ground states"
        )
    if input_direction not in _DIRS:
        raise ValidationError(f"unknown input direction {input_direction!r}")
    i_in = _DIRS.index(input_direction)
    i_back = 1 - i_in
    s_fwd = kernel.amplitudes[i_in, i_in, ground_state, ground_state]
    s_back = kernel.amplitudes[i_back, i_in, ground_state, ground_state]
    t = 1.0 + 1j * s_fwd
    r = 1j * s_back * cmath.exp(1j * reflection_phase)
    return AmplitudePair(t=complex(t), r=complex(r))


def amplitudes_at(
    system: SystemSpec,
    detuning: float,
    input_direction: str = RIGHT,
    basis=None,
) -> AmplitudePair:
    """Assemble, invert and contract at a single drive detuning."""
    if basis is None:
        basis = build_single_excitation_basis(system)
    matrix = assemble_nh(system, basis, detuning)
    inverse = invert_nh(matrix)
    kernel = scattering_kernel(system, basis, inverse, detuning)
    return output_amplitudes(kernel, input_direction)


def sweep_spectrum(
    system: SystemSpec,
    detuning_grid,
    input_direction: str = RIGHT,
    threads: int = 1,
) -> Spectrum:
    """Evaluate |t|^2, |r|^2 and loss over a sorted detuning grid.

    Grid points where the matrix is numerically singular (zero-width dark
    state at the drive frequency) produce NaN rows and a SweepWarning rather
    than aborting the sweep.  Results are byte-identical for any thread
    count: the grid is partitioned by index and each point writes only its
    own slot.
    """
    grid = np.asarray(detuning_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValidationError("detuning grid must be a non-empty 1D array")
    if not np.all(np.isfinite(grid)):
        raise ValidationError("detuning grid contains non-finite values")
    if np.any(np.diff(grid) <= 0):
        raise ValidationError("detuning grid must be strictly increasing")

    basis = build_single_excitation_basis(system)
    n = grid.size
    trans = np.empty(n)
    refl = np.empty(n)
    warnings: list[SweepWarning | None] = [None] * n

    def evaluate(i: int) -> None:
        try:
            pair = amplitudes_at(system, float(grid[i]), input_direction, basis)
            trans[i] = pair.transmission
            refl[i] = pair.reflection
        except SingularMatrix as exc:
            trans[i] = math.nan
            refl[i] = math.nan
            warnings[i] = SweepWarning(
                code=exc.code, message=str(exc), index=i, detuning=float(grid[i])
            )

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(evaluate, range(n)))
    else:
        for i in range(n):
            evaluate(i)

    loss = 1.0 - trans - refl
    return Spectrum(
        detuning_grid=grid,
        transmission=trans,
        reflection=refl,
        loss=loss,
        warnings=tuple(w for w in warnings if w is not None),
    )


def closed_form_two_level(
    delta: float, gamma1d: float, gamma_total: float
) -> AmplitudePair:
    """Single two-level emitter: t = 1 - gamma1d/(gamma_total + 2i delta)."""
    den = gamma_total + 2j * delta
    if den == 0:
        raise DivisionByZero("gamma_total + 2i*delta")
    t = 1.0 - gamma1d / den
    r = -gamma1d / den
    return AmplitudePair(t=t, r=r)


def closed_form_v_system(
    delta1: float,
    delta2: float,
    gamma1d: float,
    omega: float,
    dphi: float,
    gamma_prime: float = 0.0,
) -> AmplitudePair:
    """Driven V-type emitter with equal transition rates.

    ``dphi`` is the gauge-invariant phase between the drive phase and the
    difference of the two dipole phases; ``omega`` the full drive matrix
    element magnitude.  Reflection equals t - 1 when referenced at the
    emitter.
    """
    half_width = 0.5j * (gamma1d + gamma_prime)
    d1t = delta1 - half_width
    d2t = delta2 - half_width
    cosd = math.cos(dphi)
    gg = omega * omega - (gamma1d / 2.0) ** 2 - 1j * gamma1d * omega * cosd
    num = d1t + d2t + 1j * gamma1d - 2.0 * omega * cosd
    den = d1t * d2t - gg
    if den == 0:
        raise DivisionByZero("delta1~*delta2~ - G*G~")
    t = 1.0 + 0.5j * gamma1d * num / den
    return AmplitudePair(t=t, r=t - 1.0)


def closed_form_two_emitters(
    delta: float, gamma1d: float, gamma_prime: float, k_dz: float
) -> AmplitudePair:
    """Two identical two-level emitters separated by phase distance k_dz.

    Written as a polynomial in x = gamma_prime + 2i delta.  At x = 0 the
    lossless resonant pair is an exact mirror for every spacing, t = 0 and
    r = -1, and that limit is returned explicitly (at mirror spacings the
    ratio form degenerates to 0/0 there).
    """
    if gamma1d == 0:
        return AmplitudePair(t=complex(1.0), r=complex(0.0))
    x = gamma_prime + 2j * delta
    if x == 0:
        return AmplitudePair(t=complex(0.0), r=complex(-1.0))
    e2 = cmath.exp(2j * k_dz)
    num = 2.0 * gamma1d * x + (1.0 - e2) * gamma1d * gamma1d
    den = num + x * x
    if den == 0:
        raise SingularMatrix(
            "zero-width dark state exactly at the drive frequency"
        )
    dt = delta - 0.5j * (gamma1d + gamma_prime)
    r = 0.5j * gamma1d * (dt * (1.0 + e2) + 1j * gamma1d * e2) / (
        dt * dt + 0.25 * gamma1d * gamma1d * e2
    )
    return AmplitudePair(t=1.0 - num / den, r=r)


def closed_form_dipole_pair(
    delta_a_t: complex,
    delta_b_t: complex,
    gamma_a_1d: float,
    gamma_b_1d: float,
    v_mag: float,
    v_phase: float,
) -> AmplitudePair:
    """Two co-located two-level emitters with a dipole-dipole coupling.

    The complex detunings are delta - i/2 (gamma1d + gamma_prime) of each
    emitter.  With both emitters at the same position, r = t - 1.
    """
    ga = 2j * delta_a_t
    gb = 2j * delta_b_t
    root = math.sqrt(gamma_a_1d * gamma_b_1d)
    vc = v_mag * math.cos(v_phase)
    num = 4j * root * vc + 2.0 * gamma_a_1d * gamma_b_1d - gamma_a_1d * gb - gamma_b_1d * ga
    den = ga * gb - gamma_a_1d * gamma_b_1d - 4j * root * vc + 4.0 * v_mag * v_mag
    if den == 0:
        raise DivisionByZero("dipole pair denominator")
    t = 1.0 + num / den
    return AmplitudePair(t=t, r=t - 1.0)


def closed_form_two_plus_v(
    delta_a: float, delta_b: float, gamma1d: float, omega: float, k_dz: float
) -> AmplitudePair:
    """A two-level emitter and a driven degenerate V emitter, spacing k_dz.

    All transitions carry the same total guided rate gamma1d, the V levels
    are degenerate at detuning delta_b and coherently coupled with full
    matrix element ``omega``, and there is no external loss.  Transmission
    vanishes at delta_a = 0 and at delta_b = -omega.
    """
    e2 = cmath.exp(2j * k_dz)
    den = e2 * gamma1d * gamma1d - (gamma1d + 2j * delta_a) * (
        gamma1d + 1j * (omega + delta_b)
    )
    if den == 0:
        raise DivisionByZero("two-plus-V denominator")
    t = 2.0 * delta_a * (omega + delta_b) / den
    at = delta_a - 0.5j * gamma1d
    bu = (omega + delta_b) - 1j * gamma1d
    r = 1j * gamma1d * (bu + 2.0 * e2 * (at + 1j * gamma1d)) / den
    return AmplitudePair(t=t, r=r)


def require_symmetric(system: SystemSpec) -> None:
    """Raise AsymmetricCoupling unless every transition has equal
    right/left rates."""
    for em in system.emitters:
        for tr in em.transitions:
            if tr.gamma1d_right != tr.gamma1d_left:
                raise AsymmetricCoupling(
                    f"transition {tr.excited!r}->{tr.ground!r} of emitter "
                    f"{em.id!r} has unequal directional rates"
                )
