"""Assembly and inversion of the single-excitation non-Hermitian Hamiltonian.

After eliminating the guided field, the excitation dynamics at drive
frequency offset ``input_detuning`` (measured from the first ground level of
each excited level's emitter) is governed by a complex matrix M over the
single-excitation basis:

* diagonal: delta_a - i/2 * Gamma_a, with delta_a the transition detuning
  and Gamma_a the total width of the excited level,
* waveguide-mediated off-diagonal terms: -i/2 * sum over shared decay
  channels of [sqrt(GR_a GR_b) + sqrt(GL_a GL_b)] * exp(i(phi_a - phi_b))
  * exp(i |z_a - z_b|), with z the emitter phase positions,
* coherent couplings add their full matrix element magnitude * exp(+/- i
  phase), dipole-dipole couplings add magnitude * exp(+/- i phase) as well.

Two decay channels are shared when they lead to the same joint ground state;
for a single emitter that means the same ground level, and across emitters it
means both transitions return their hosts to the first declared ground.

Scattering amplitudes and effective few-level parameters are built from the
inverse of M, computed here by LU factorization with an explicit residual
check.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .emitters import CombinedBasis, SystemSpec, total_decay_rate
from .errors import (
    BasisMismatch,
    DivisionByZero,
    NonfiniteEntry,
    SingularMatrix,
)


@dataclass(frozen=True)
class NhMatrix:
    """The assembled matrix plus the complex input detunings on its diagonal."""

    dim: int
    entries: np.ndarray
    basis: CombinedBasis
    input_detunings: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, NhMatrix):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.basis == other.basis
            and np.array_equal(self.entries, other.entries)
            and np.array_equal(self.input_detunings, other.input_detunings)
        )


@dataclass(frozen=True)
class NhInverse:
    entries: np.ndarray
    basis: CombinedBasis
    condition_estimate: float


@dataclass(frozen=True)
class EffectiveParamsV:
    """Effective single-transition parameters of a driven V configuration."""

    delta1_eff: complex
    delta2_eff: complex
    g_eff: complex
    g_prime_eff: complex


@dataclass(frozen=True)
class EffectiveParams3:
    """Effective parameters of the two-emitter (two-level plus V) system."""

    delta1_eff: complex
    delta2_eff: complex
    delta3_eff: complex
    gamma12_eff: complex
    gamma13_eff: complex
    gamma23_eff: complex


def assemble_nh(
    system: SystemSpec, basis: CombinedBasis, input_detuning: float
) -> NhMatrix:
    """Assemble the non-Hermitian matrix at one drive frequency offset.

    ``input_detuning`` is the drive frequency minus the reference frequency;
    each diagonal detuning is the excited-level energy minus the energy of
    the host emitter's first ground level minus ``input_detuning``.
    """
    if basis.system is not system and basis.system != system:
        raise BasisMismatch("basis was built from a different system")

    n = basis.dim
    m = np.zeros((n, n), dtype=complex)
    detunings = np.zeros(n, dtype=complex)

    positions = [em.phase_position for em in system.emitters]

    for a in range(n):
        exc = basis.excited_states[a]
        em = system.emitters[exc.emitter_index]
        e_exc = em.level(exc.level_id).energy
        e_ground = em.ground_levels()[0].energy
        delta = e_exc - e_ground - input_detuning
        width = total_decay_rate(em, exc.level_id)
        detunings[a] = delta - 0.5j * width
        m[a, a] = detunings[a]

    channels = [basis.decay_channels(a) for a in range(n)]
    for a in range(n):
        za = positions[basis.excited_states[a].emitter_index]
        for b in range(n):
            if a == b:
                continue
            zb = positions[basis.excited_states[b].emitter_index]
            prop = cmath.exp(1j * abs(za - zb))
            acc = 0j
            for ga, tra, _ in channels[a]:
                for gb, trb, _ in channels[b]:
                    if ga != gb:
                        continue
                    pair = math.sqrt(tra.gamma1d_right * trb.gamma1d_right) + math.sqrt(
                        tra.gamma1d_left * trb.gamma1d_left
                    )
                    phase = cmath.exp(1j * (tra.coupling_phase - trb.coupling_phase))
                    acc += pair * phase
            m[a, b] += -0.5j * acc * prop

    for cc in system.coherent_couplings:
        ia = basis.excited_index[system.find_excited(cc.a)[1].id, cc.a]
        ib = basis.excited_index[system.find_excited(cc.b)[1].id, cc.b]
        m[ia, ib] += cc.magnitude * cmath.exp(1j * cc.phase)
        m[ib, ia] += cc.magnitude * cmath.exp(-1j * cc.phase)

    for dc in system.dipole_couplings:
        ia = basis.excited_index[dc.transition_a]
        ib = basis.excited_index[dc.transition_b]
        m[ia, ib] += dc.magnitude * cmath.exp(1j * dc.phase)
        m[ib, ia] += dc.magnitude * cmath.exp(-1j * dc.phase)

    if not np.all(np.isfinite(m.view(float))):
        bad = np.argwhere(~np.isfinite(m))
        i, j = (int(bad[0][0]), int(bad[0][1])) if len(bad) else (0, 0)
        raise NonfiniteEntry(f"matrix entry ({i}, {j}) is not finite")

    return NhMatrix(dim=n, entries=m, basis=basis, input_detunings=detunings)


def invert_nh(matrix: NhMatrix) -> NhInverse:
    """Invert the assembled matrix with an explicit accuracy check.

    Uses LU factorization with partial pivoting.  The matrix is declared
    singular when a pivot falls below 1e-12 times the largest entry
    magnitude (a dark state with zero total width at the drive frequency),
    or when the residual ||M inv - I||_max exceeds 1e-10 * max(1, cond),
    with cond the exact 1-norm condition number of the computed inverse.
    """
    m = matrix.entries
    if not np.all(np.isfinite(m.view(float))):
        raise NonfiniteEntry("matrix has non-finite entries")

    scale = float(np.max(np.abs(m))) if matrix.dim else 0.0
    if scale == 0.0:
        raise SingularMatrix("matrix is identically zero")

    with warnings.catch_warnings():
        # scipy warns on exactly-zero pivots; the pivot check below turns
        # that condition into a structured SingularMatrix error instead.
        warnings.simplefilter("ignore")
        lu, piv = lu_factor(m, check_finite=False)
    pivots = np.abs(np.diag(lu))
    if float(np.min(pivots)) < 1e-12 * scale:
        raise SingularMatrix(
            "matrix is numerically singular (zero-width dark state at the drive frequency)"
        )

    inv = lu_solve((lu, piv), np.eye(matrix.dim, dtype=complex), check_finite=False)
    cond = float(
        np.linalg.norm(m, 1) * np.linalg.norm(inv, 1)
    )
    residual = float(np.max(np.abs(m @ inv - np.eye(matrix.dim))))
    if residual > 1e-10 * max(1.0, cond):
        raise SingularMatrix(
            f"inverse residual {residual:.3e} exceeds bound for cond {cond:.3e}"
        )
    return NhInverse(entries=inv, basis=matrix.basis, condition_estimate=cond)


def _checked_div(num: complex, den: complex, symbol: str) -> complex:
    if den == 0:
        raise DivisionByZero(symbol)
    return num / den


def effective_params_v(
    delta1t: complex, delta2t: complex, g: complex, g_bar: complex
) -> EffectiveParamsV:
    """Effective parameters of the 2x2 block [[delta1t, g_bar], [g, delta2t]].

    ``g`` is the (2,1) matrix element and ``g_bar`` the (1,2) element; for a
    reciprocal drive both equal Omega plus the waveguide-mediated term.  The
    four outputs are defined so that their reciprocals reproduce the entries
    of the block inverse: 1/delta1_eff = inv[1,1], 1/delta2_eff = inv[2,2],
    1/g_eff = inv[2,1], 1/g_prime_eff = inv[1,2].
    """
    gg = g * g_bar
    delta1_eff = delta1t - _checked_div(gg, delta2t, "delta2~")
    delta2_eff = delta2t - _checked_div(gg, delta1t, "delta1~")
    num = gg - delta1t * delta2t
    g_eff = _checked_div(num, g, "g")
    g_prime_eff = _checked_div(num, g_bar, "g~")
    return EffectiveParamsV(delta1_eff, delta2_eff, g_eff, g_prime_eff)


def effective_params_two_emitter(
    delta1t: complex,
    delta2t: complex,
    delta3t: complex,
    gamma1_1d: float,
    gamma2_1d: float,
    gamma3_1d: float,
    omega: float,
    k_dz: float,
) -> EffectiveParams3:
    """Effective parameters of a two-level emitter facing a driven V emitter.

    Level 1 is the single two-level transition, levels 2 and 3 the V
    transitions, k_dz the propagation phase between the emitters, and
    ``omega`` the classical drive amplitude in the half-element convention:
    the bare (2,3) matrix entry is omega/2 - i/2 sqrt(gamma2_1d*gamma3_1d).
    The deltaNt arguments are the complex detunings delta_n - i/2 Gamma_n.

    Outputs are reciprocals of the corresponding 3x3 inverse entries:
    1/deltaN_eff = inv[n,n] and 1/gammaNM_eff = inv[n,m].  Several widely
    quoted closed forms for these quantities fail that cross-check; the
    variants implemented here are re-derived from the cofactor expansion
    (see docs/notes.md) and verified against the numeric inverse.
    """
    e = cmath.exp(1j * k_dz)
    g12 = math.sqrt(gamma1_1d * gamma2_1d) * e
    g13 = math.sqrt(gamma1_1d * gamma3_1d) * e
    g23 = math.sqrt(gamma2_1d * gamma3_1d)
    x = omega - 1j * g23

    for val, name in (
        (delta1t, "delta1~"),
        (delta2t, "delta2~"),
        (delta3t, "delta3~"),
        (g12, "Gamma12"),
        (g13, "Gamma13"),
        (x, "Omega - i*Gamma23"),
    ):
        if val == 0:
            raise DivisionByZero(name)

    p = g12 * g12 / (4 * delta2t) + g13 * g13 / (4 * delta3t)
    delta1_eff = delta1t + p - _checked_div(
        x * p - g12 * g13,
        x - 4 * delta2t * delta3t / x,
        "(Omega - i*Gamma23) - 4*delta2~*delta3~/(Omega - i*Gamma23)",
    )

    q2 = g12 * g12 / (4 * delta1t) - x * x / (4 * delta3t)
    delta2_eff = delta2t + q2 - _checked_div(
        g13 * q2 + g12 * x,
        g13 + 4 * delta1t * delta3t / g13,
        "Gamma13 + 4*delta1~*delta3~/Gamma13",
    )

    q3 = g13 * g13 / (4 * delta1t) - x * x / (4 * delta2t)
    delta3_eff = delta3t + q3 - _checked_div(
        g12 * q3 + g13 * x,
        g12 + 4 * delta1t * delta2t / g12,
        "Gamma12 + 4*delta1~*delta2~/Gamma12",
    )

    u = x / 2
    gamma12_eff = -0.5j * (
        g12
        + 4 * delta1t * delta2t / g12
        + _checked_div(
            (g13 * g13 / g12) * delta2t
            - 4 * (u * u / g12) * delta1t
            - u * g13 * (1 - 4 * delta1t * delta2t / (g12 * g12)),
            delta3t - u * g13 / g12,
            "delta3~ - (Omega/2 - i*Gamma23/2)*Gamma13/Gamma12",
        )
    )
    gamma13_eff = -0.5j * (
        g13
        + 4 * delta1t * delta3t / g13
        + _checked_div(
            (g12 * g12 / g13) * delta3t
            - 4 * (u * u / g13) * delta1t
            - u * g12 * (1 - 4 * delta1t * delta3t / (g13 * g13)),
            delta2t - u * g12 / g13,
            "delta2~ - (Omega/2 - i*Gamma23/2)*Gamma12/Gamma13",
        )
    )
    gamma23_eff = (
        u
        - delta2t * delta3t / u
        + _checked_div(
            0.25 * (g12 - g13 * delta2t / u) * (g13 - g12 * delta3t / u),
            delta1t + 0.25 * g12 * g13 / u,
            "delta1~ + Gamma12*Gamma13/(2*(Omega - i*Gamma23))",
        )
    )
    return EffectiveParams3(
        delta1_eff=delta1_eff,
        delta2_eff=delta2_eff,
        delta3_eff=delta3_eff,
        gamma12_eff=gamma12_eff,
        gamma13_eff=gamma13_eff,
        gamma23_eff=gamma23_eff,
    )
