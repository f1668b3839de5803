"""Acceptance suite: the quantitative contracts the library must honor.

Each numbered criterion below is a physics statement with an explicit
tolerance.  The tests are deliberately redundant with the unit suite:
where the unit tests probe internals, these only exercise public entry
points (closed forms, the sweep pipeline, presets) and compare against
values that can be derived by hand.

The conftest plugin prints one PASS/FAIL line per criterion at the end
of the run.
"""

import cmath
import math

import numpy as np
import pytest

from wqed import (
    CoherentCoupling,
    DetectionConfig,
    DipoleDipoleCoupling,
    DivisionByZero,
    Emitter,
    FidelityParams,
    GroundDensity,
    LambdaParams,
    Level,
    PulseSpec,
    SingularMatrix,
    SystemSpec,
    Transition,
    average_fidelity,
    average_fidelity_numeric,
    closed_form_dipole_pair,
    closed_form_two_emitters,
    closed_form_two_level,
    closed_form_two_plus_v,
    closed_form_v_system,
    amplitudes_at,
    compute_rates,
    conditional_fidelity,
    effective_params_two_emitter,
    emit_table,
    evolve_ground_state,
    filtered_photon_probs,
    load_preset,
    run_scenario,
    spectrum_sweeps,
    sweep_spectrum,
)


def two_level(emitter_id="A", energy=0.0, g1d_r=0.25, g1d_l=0.25, g_prime=0.0,
              phase_position=0.0):
    return Emitter(
        id=emitter_id,
        levels=(
            Level(id="g", energy=0.0, kind="ground"),
            Level(id="e", energy=energy, kind="excited"),
        ),
        transitions=(
            Transition(excited="e", ground="g", gamma1d_right=g1d_r,
                       gamma1d_left=g1d_l, gamma_prime=g_prime),
        ),
        phase_position=phase_position,
    )


def v_emitter(d1, d2, gamma1d, gamma_prime=0.0, phase_position=0.0):
    return Emitter(
        id="B",
        levels=(
            Level(id="g", energy=0.0, kind="ground"),
            Level(id="e1", energy=d1, kind="excited"),
            Level(id="e2", energy=d2, kind="excited"),
        ),
        transitions=(
            Transition(excited="e1", ground="g", gamma1d_right=gamma1d / 2,
                       gamma1d_left=gamma1d / 2, gamma_prime=gamma_prime),
            Transition(excited="e2", ground="g", gamma1d_right=gamma1d / 2,
                       gamma1d_left=gamma1d / 2, gamma_prime=gamma_prime),
        ),
        phase_position=phase_position,
    )


def emitter_pair(gamma1d, gamma_prime, k_dz, energy=0.0):
    """Two identical two-level emitters separated by k_dz radians."""
    return SystemSpec(
        emitters=(
            two_level("A", energy=energy, g1d_r=gamma1d / 2,
                      g1d_l=gamma1d / 2, g_prime=gamma_prime),
            two_level("B", energy=energy, g1d_r=gamma1d / 2,
                      g1d_l=gamma1d / 2, g_prime=gamma_prime,
                      phase_position=k_dz),
        ),
    )


def fwhm(x, y):
    """Full width at half maximum of the single peak in y, interpolated.

    Walks outward from the peak sample to the first half-maximum
    crossing on each side and interpolates linearly inside the
    bracketing interval.
    """
    i = int(np.argmax(y))
    half = y[i] / 2.0
    left = right = None
    for j in range(i, 0, -1):
        if y[j - 1] <= half <= y[j]:
            frac = (y[j] - half) / (y[j] - y[j - 1])
            left = x[j] - frac * (x[j] - x[j - 1])
            break
    for j in range(i, len(y) - 1):
        if y[j + 1] <= half <= y[j]:
            frac = (y[j] - half) / (y[j] - y[j + 1])
            right = x[j] + frac * (x[j + 1] - x[j])
            break
    if left is None or right is None:
        raise AssertionError("half-maximum crossing not bracketed by grid")
    return right - left


def peak_location(x, y):
    """Interpolated abscissa of the maximum of y (local quadratic fit)."""
    i = int(np.argmax(y))
    if i in (0, len(y) - 1):
        return x[i]
    denom = y[i - 1] - 2.0 * y[i] + y[i + 1]
    if denom == 0.0:
        return x[i]
    shift = 0.5 * (y[i - 1] - y[i + 1]) / denom
    return x[i] + shift * (x[1] - x[0])


# ---------------------------------------------------------------------------
# 1. Two-level resonance
# ---------------------------------------------------------------------------


@pytest.mark.acceptance(1, "two-level resonant extinction and linewidth")
class TestTwoLevelResonance:
    def test_resonant_transmission_matches_coupling_fraction(self):
        for beta in (0.5, 0.9, 0.99):
            closed = closed_form_two_level(0.0, gamma1d=beta, gamma_total=1.0)
            assert abs(closed.transmission - (1.0 - beta) ** 2) <= 1e-12
            system = SystemSpec(emitters=(
                two_level(g1d_r=beta / 2, g1d_l=beta / 2, g_prime=1.0 - beta),
            ))
            got = amplitudes_at(system, detuning=0.0)
            assert abs(got.transmission - (1.0 - beta) ** 2) <= 1e-12

    def test_extinction_dip_width_equals_total_decay_rate(self):
        grid = np.linspace(-3.0, 3.0, 2001)
        for beta in (0.5, 0.9, 0.99):
            system = SystemSpec(emitters=(
                two_level(g1d_r=beta / 2, g1d_l=beta / 2, g_prime=1.0 - beta),
            ))
            spectrum = sweep_spectrum(system, grid)
            width = fwhm(grid, 1.0 - spectrum.transmission)
            assert abs(width - 1.0) <= 0.01

    def test_preset_curves_hit_the_same_floors(self):
        curves = dict(spectrum_sweeps(load_preset("fig3a")))
        floors = {"beta0.5": 0.25, "beta0.9": 0.01, "beta0.99": 1e-4}
        for label, floor in floors.items():
            spectrum = curves[label]
            i = int(np.argmin(np.abs(spectrum.detuning_grid)))
            assert spectrum.detuning_grid[i] == 0.0
            assert abs(spectrum.transmission[i] - floor) <= 1e-12


# ---------------------------------------------------------------------------
# 2. Flux conservation
# ---------------------------------------------------------------------------


@pytest.mark.acceptance(2, "flux conservation in lossless presets")
class TestFluxConservation:
    @pytest.mark.parametrize("name", ["fig6a", "fig7a", "fig7b"])
    def test_lossless_presets_conserve_flux_pointwise(self, name):
        for label, spectrum in spectrum_sweeps(load_preset(name)):
            assert not spectrum.warnings, (name, label)
            total = spectrum.transmission + spectrum.reflection
            assert np.all(np.isfinite(total)), (name, label)
            worst = float(np.max(np.abs(total - 1.0)))
            assert worst <= 1e-10, (name, label, worst)


# ---------------------------------------------------------------------------
# 3. Closed forms against the assembled pipeline
# ---------------------------------------------------------------------------


@pytest.mark.acceptance(3, "closed forms match the matrix pipeline")
class TestClosedFormsMatchPipeline:
    def assert_close(self, closed, numeric):
        assert abs(closed.t - numeric.t) <= 1e-10
        assert abs(closed.r - numeric.r) <= 1e-10

    def test_two_level(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            gamma1d = float(rng.uniform(0.1, 2.0))
            gamma_prime = float(rng.uniform(0.05, 1.0))
            delta = float(rng.uniform(-3.0, 3.0))
            system = SystemSpec(emitters=(
                two_level(energy=delta, g1d_r=gamma1d / 2, g1d_l=gamma1d / 2,
                          g_prime=gamma_prime),
            ))
            numeric = amplitudes_at(system, detuning=0.0)
            closed = closed_form_two_level(delta, gamma1d,
                                           gamma1d + gamma_prime)
            self.assert_close(closed, numeric)

    def test_v_system(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            d1 = float(rng.uniform(-3.0, 3.0))
            d2 = float(rng.uniform(-3.0, 3.0))
            gamma1d = float(rng.uniform(0.1, 2.0))
            gamma_prime = float(rng.uniform(0.05, 0.5))
            omega = float(rng.uniform(0.1, 2.0))
            dphi = float(rng.uniform(0.0, 2.0 * math.pi))
            system = SystemSpec(
                emitters=(v_emitter(d1, d2, gamma1d, gamma_prime),),
                coherent_couplings=(
                    CoherentCoupling(a="e1", b="e2", magnitude=omega,
                                     phase=dphi),
                ),
            )
            numeric = amplitudes_at(system, detuning=0.0)
            closed = closed_form_v_system(d1, d2, gamma1d, omega, dphi,
                                          gamma_prime)
            self.assert_close(closed, numeric)

    def test_two_emitters(self):
        rng = np.random.default_rng(13)
        accepted = 0
        while accepted < 50:
            gamma1d = float(rng.uniform(0.1, 2.0))
            gamma_prime = float(rng.uniform(0.05, 0.5))
            delta = float(rng.uniform(-3.0, 3.0))
            k_dz = float(rng.uniform(0.1, 2.0 * math.pi - 0.1))
            system = emitter_pair(gamma1d, gamma_prime, k_dz, energy=delta)
            try:
                numeric = amplitudes_at(system, detuning=0.0)
            except SingularMatrix:
                continue
            closed = closed_form_two_emitters(delta, gamma1d, gamma_prime,
                                              k_dz)
            self.assert_close(closed, numeric)
            accepted += 1

    def test_dipole_pair(self):
        rng = np.random.default_rng(14)
        accepted = 0
        while accepted < 50:
            da = float(rng.uniform(-3.0, 3.0))
            db = float(rng.uniform(-3.0, 3.0))
            ga = float(rng.uniform(0.1, 2.0))
            gb = float(rng.uniform(0.1, 2.0))
            pa = float(rng.uniform(0.0, 0.5))
            pb = float(rng.uniform(0.0, 0.5))
            v_mag = float(rng.uniform(0.1, 1.5))
            v_phase = float(rng.uniform(0.0, 2.0 * math.pi))
            system = SystemSpec(
                emitters=(
                    two_level("A", energy=da, g1d_r=ga / 2, g1d_l=ga / 2,
                              g_prime=pa),
                    two_level("B", energy=db, g1d_r=gb / 2, g1d_l=gb / 2,
                              g_prime=pb),
                ),
                dipole_couplings=(
                    DipoleDipoleCoupling(transition_a=("A", "e"),
                                         transition_b=("B", "e"),
                                         magnitude=v_mag, phase=v_phase),
                ),
            )
            try:
                numeric = amplitudes_at(system, detuning=0.0)
            except SingularMatrix:
                continue
            closed = closed_form_dipole_pair(
                da - 0.5j * (ga + pa), db - 0.5j * (gb + pb),
                ga, gb, v_mag, v_phase,
            )
            self.assert_close(closed, numeric)
            accepted += 1

    def test_two_plus_v(self):
        rng = np.random.default_rng(15)
        accepted = 0
        while accepted < 50:
            gamma1d = float(rng.uniform(0.1, 2.0))
            ea = float(rng.uniform(-3.0, 3.0))
            eb = float(rng.uniform(-3.0, 3.0))
            omega = float(rng.uniform(0.5, 4.0))
            k_dz = float(rng.uniform(0.1, 2.0 * math.pi - 0.1))
            w = float(rng.uniform(-4.0, 4.0))
            system = SystemSpec(
                emitters=(
                    two_level("A", energy=ea, g1d_r=gamma1d / 2,
                              g1d_l=gamma1d / 2),
                    v_emitter(eb, eb, gamma1d, phase_position=k_dz),
                ),
                coherent_couplings=(
                    CoherentCoupling(a="e1", b="e2", magnitude=omega),
                ),
            )
            try:
                numeric = amplitudes_at(system, detuning=w)
            except SingularMatrix:
                continue
            closed = closed_form_two_plus_v(ea - w, eb - w, gamma1d, omega,
                                            k_dz)
            self.assert_close(closed, numeric)
            accepted += 1


# ---------------------------------------------------------------------------
# 4. Effective three-level parameters
# ---------------------------------------------------------------------------


@pytest.mark.acceptance(4, "effective parameters match 3x3 inversion")
class TestEffectiveParameters:
    @staticmethod
    def reference_matrix(d1t, d2t, d3t, g1, g2, g3, omega, k_dz):
        e = cmath.exp(1j * k_dz)
        g12 = math.sqrt(g1 * g2) * e
        g13 = math.sqrt(g1 * g3) * e
        u = 0.5 * (omega - 1j * math.sqrt(g2 * g3))
        return np.array(
            [
                [d1t, -0.5j * g12, -0.5j * g13],
                [-0.5j * g12, d2t, u],
                [-0.5j * g13, u, d3t],
            ]
        )

    def test_reciprocals_match_numeric_inverse(self):
        rng = np.random.default_rng(16)
        accepted = 0
        while accepted < 50:
            g1, g2, g3 = (float(v) for v in rng.uniform(0.1, 2.0, size=3))
            omega = float(rng.uniform(0.1, 2.0))
            k_dz = float(rng.uniform(1e-3, 2.0 * math.pi - 1e-3))
            d1t = complex(rng.uniform(-3.0, 3.0), -0.5 * g1)
            d2t = complex(rng.uniform(-3.0, 3.0), -0.5 * g2)
            d3t = complex(rng.uniform(-3.0, 3.0), -0.5 * g3)
            m = self.reference_matrix(d1t, d2t, d3t, g1, g2, g3, omega, k_dz)
            if np.linalg.cond(m) > 1e5:
                continue
            inverse = np.linalg.inv(m)
            try:
                eff = effective_params_two_emitter(d1t, d2t, d3t, g1, g2, g3,
                                                   omega, k_dz)
            except DivisionByZero:
                continue
            pairs = [
                (eff.delta1_eff, inverse[0, 0]),
                (eff.delta2_eff, inverse[1, 1]),
                (eff.delta3_eff, inverse[2, 2]),
                (eff.gamma12_eff, inverse[0, 1]),
                (eff.gamma13_eff, inverse[0, 2]),
                (eff.gamma23_eff, inverse[1, 2]),
            ]
            for value, entry in pairs:
                rel = abs(1.0 / value - entry) / abs(entry)
                assert rel <= 1e-10
            accepted += 1


# ---------------------------------------------------------------------------
# 5. Atomic mirror formed by an emitter pair
# ---------------------------------------------------------------------------


@pytest.mark.acceptance(5, "emitter pair acts as an atomic mirror")
class TestAtomicMirror:
    def test_resonant_extinction_at_half_wavelength_spacing(self):
        closed = closed_form_two_emitters(0.0, 1.0, 0.0, math.pi)
        assert closed.transmission <= 1e-12
        assert abs(closed.reflection - 1.0) <= 1e-12
        # The assembled matrix is singular at exactly zero detuning, so
        # probe the pipeline just off resonance where |t|^2 ~ 1e-14.
        numeric = amplitudes_at(emitter_pair(1.0, 0.0, math.pi),
                                detuning=1e-7)
        assert numeric.transmission <= 1e-12

    def test_mirror_dip_is_twice_the_single_emitter_width(self):
        # Even point counts keep the singular resonance point off-grid.
        grid = np.linspace(-3.0, 3.0, 2000)
        single = SystemSpec(emitters=(two_level(g1d_r=0.5, g1d_l=0.5),))
        width_single = fwhm(grid,
                            1.0 - sweep_spectrum(single, grid).transmission)
        pair = emitter_pair(1.0, 0.0, math.pi)
        width_pair = fwhm(grid, 1.0 - sweep_spectrum(pair, grid).transmission)
        assert abs(width_pair / width_single - 2.0) <= 0.02

    def test_quarter_wavelength_reflection_band_width(self):
        grid = np.linspace(-3.0, 3.0, 2000)
        pair = emitter_pair(1.0, 0.0, math.pi / 2)
        width = fwhm(grid, 1.0 - sweep_spectrum(pair, grid).transmission)
        assert abs(width - math.sqrt(2.0)) <= 0.02 * math.sqrt(2.0)


# ---------------------------------------------------------------------------
# 6. Subradiant transparency window near half-wavelength spacing
# ---------------------------------------------------------------------------


@pytest.mark.acceptance(6, "dark-state transparency peak and linewidth")
class TestDarkStateWindow:
    def test_peak_position_and_width(self):
        k_dz = math.pi - 0.1
        system = emitter_pair(1.0, 0.0, k_dz)
        grid = np.linspace(0.02, 0.08, 6001)
        transmission = sweep_spectrum(system, grid).transmission
        expected_peak = 0.5 * math.sin(k_dz)
        expected_width = 0.5 * math.sin(k_dz) ** 2
        peak = peak_location(grid, transmission)
        assert abs(peak - expected_peak) <= 0.05 * expected_peak
        width = fwhm(grid, transmission)
        assert abs(width - expected_width) <= 0.05 * expected_width


# ---------------------------------------------------------------------------
# 7. Raman channel probabilities
# ---------------------------------------------------------------------------


def lambda_params(beta0, beta1, delta, omega01=0.0):
    return LambdaParams(
        gamma0_1d_right=beta0 / 2, gamma0_1d_left=beta0 / 2, gamma0_prime=0.0,
        gamma1_1d_right=beta1 / 2, gamma1_1d_left=beta1 / 2, gamma1_prime=0.0,
        delta=delta, omega01=omega01,
    )


@pytest.mark.acceptance(7, "Raman channel probabilities are complete")
class TestRamanChannels:
    def test_filtered_probabilities_sum_to_one_without_loss(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            beta0 = float(rng.uniform(0.05, 0.95))
            delta = float(rng.uniform(-3.0, 3.0))
            probs = filtered_photon_probs(
                lambda_params(beta0, 1.0 - beta0, delta)
            )
            total = (probs.p_red_r + probs.p_red_l
                     + probs.p_blue_r + probs.p_blue_l)
            assert abs(total - 1.0) <= 1e-12

    def test_forward_raman_probability_peaks_at_one_quarter(self):
        best = filtered_photon_probs(lambda_params(0.5, 0.5, 0.0)).p_red_r
        assert abs(best - 0.25) <= 1e-12
        for delta in np.linspace(-3.0, 3.0, 61):
            value = filtered_photon_probs(
                lambda_params(0.5, 0.5, float(delta))
            ).p_red_r
            assert value <= best + 1e-12


# ---------------------------------------------------------------------------
# 8. Ground-manifold dynamics against the exact square-pulse solution
# ---------------------------------------------------------------------------


@pytest.mark.acceptance(8, "pumped population matches the exact exponential")
class TestGroundDynamics:
    @pytest.mark.parametrize("fluence", [0.1, 1.0, 5.0])
    def test_population_decay_and_trace(self, fluence):
        params = lambda_params(0.5, 0.5, 0.0)
        rates = compute_rates(params)
        # Choose the intensity so that p_r * |alpha|^2 * T equals the
        # target fluence over the unit-length pulse.
        pulse = PulseSpec(intensity=fluence / rates.p_r, duration=1.0)
        times = np.linspace(0.0, 1.0, 51)
        states = evolve_ground_state(params, pulse, times)
        rho00 = np.array([s.rho00 for s in states])
        rho11 = np.array([s.rho11 for s in states])
        exact = np.exp(-fluence * times)
        assert float(np.max(np.abs(rho00 - exact))) <= 1e-6
        assert float(np.max(np.abs(rho00 + rho11 - 1.0))) <= 1e-9


# ---------------------------------------------------------------------------
# 9. Heralded-superposition fidelity
# ---------------------------------------------------------------------------


def fidelity_setup(nbar, omega01):
    return FidelityParams(
        lambda_params=lambda_params(0.5, 0.5, 0.0, omega01=omega01),
        pulse=PulseSpec(intensity=nbar, duration=1.0),
        detection=DetectionConfig(efficiency=1.0, filter="red_only",
                                  phase_offset=0.0),
    )


@pytest.mark.acceptance(9, "heralded superposition fidelity")
class TestFidelity:
    def test_end_of_pulse_fidelity(self):
        value = conditional_fidelity(fidelity_setup(0.8, 0.0), t_c=1.0)
        expected = 0.5 + 0.5 * math.exp(-0.4) / (2.0 - math.exp(-0.8))
        assert abs(value - expected) <= 1e-12
        assert abs(value - 0.7161) <= 1e-3

    def test_average_fidelity_slow_splitting(self):
        value = average_fidelity(fidelity_setup(1.0, 1e-3))
        assert abs(value - 1.0 / (2.0 - math.exp(-0.5))) <= 1e-3
        assert abs(value - 0.7176) <= 1e-3

    @pytest.mark.xfail(
        strict=True,
        reason=(
            "The closed-form average freezes the heralding normalization "
            "at its mid-fluence value; the faithful quadrature average "
            "over click times differs by 1e-3 to 8e-3 across this grid, "
            "so the 1e-4 agreement bound cannot be met.  See docs/notes.md."
        ),
    )
    def test_average_fidelity_closed_form_matches_quadrature(self):
        for nbar in (0.5, 1.0, 2.0):
            for omega01 in (0.001, 1.0, 10.0):
                fp = fidelity_setup(nbar, omega01)
                closed = average_fidelity(fp)
                numeric = average_fidelity_numeric(fp, panels=4096)
                assert abs(closed - numeric) <= 1e-4, (nbar, omega01)


# ---------------------------------------------------------------------------
# 10. Perfect reflections of the hybrid pair preset
# ---------------------------------------------------------------------------


@pytest.mark.acceptance(10, "hybrid pair preset reflects at both resonances")
class TestHybridPairReflections:
    def test_transmission_zeros_on_the_preset_grid(self):
        sweeps = spectrum_sweeps(load_preset("fig7a"))
        assert len(sweeps) == 1
        spectrum = sweeps[0][1]
        for offset in (-3.0, 3.0):
            i = int(np.argmin(np.abs(spectrum.detuning_grid - offset)))
            assert abs(spectrum.detuning_grid[i] - offset) <= 1e-9
            assert spectrum.transmission[i] <= 1e-10
            assert abs(spectrum.reflection[i] - 1.0) <= 1e-10


# ---------------------------------------------------------------------------
# 11. Chiral coupling
# ---------------------------------------------------------------------------


@pytest.mark.acceptance(11, "chiral emitter never reflects")
class TestChiralCoupling:
    def test_reflection_vanishes_identically(self):
        system = SystemSpec(emitters=(
            two_level(g1d_r=0.5, g1d_l=0.0, g_prime=0.3),
        ))
        spectrum = sweep_spectrum(system, np.linspace(-3.0, 3.0, 2001))
        assert np.all(spectrum.reflection == 0.0)
        assert np.all(1.0 - spectrum.transmission >= 0.0)
        assert np.all(spectrum.loss >= 0.0)

    def test_lossless_chiral_emitter_only_shifts_the_phase(self):
        system = SystemSpec(emitters=(
            two_level(g1d_r=0.8, g1d_l=0.0, g_prime=0.0),
        ))
        spectrum = sweep_spectrum(system, np.linspace(-3.0, 3.0, 2001))
        assert np.all(spectrum.reflection == 0.0)
        assert float(np.max(np.abs(spectrum.transmission - 1.0))) <= 1e-12


# ---------------------------------------------------------------------------
# Byte determinism of preset outputs
# ---------------------------------------------------------------------------


ALL_PRESETS = [
    "fig3a", "fig3b", "fig6a", "fig6b", "fig7a", "fig7b", "fig9a", "fig9b",
]


class TestPresetDeterminism:
    @pytest.mark.parametrize("name", ALL_PRESETS)
    def test_output_bytes_are_reproducible(self, name):
        scenario = load_preset(name)
        first = emit_table(run_scenario(scenario))
        second = emit_table(run_scenario(scenario))
        threaded = emit_table(run_scenario(scenario, threads=2))
        assert first == second == threaded
        assert first.endswith(b"\n")
        assert b"\r" not in first
