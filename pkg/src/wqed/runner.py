"""Execute a validated scenario and collect the results into one table.

Output is deterministic: equal scenario text produces byte-identical tables
for any thread count, because grids are partitioned by index and every value
is computed and written independently of evaluation order.
"""

from __future__ import annotations

import hashlib
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

import numpy as np

from .dynamics import compute_rates, evolve_ground_state
from .errors import SingularMatrix, ValidationError
from .protocols import (
    FidelityParams,
    average_fidelity,
    average_fidelity_numeric,
    conditional_fidelity,
    filtered_photon_probs,
    output_intensity,
)
from .scattering import amplitudes_at, sweep_spectrum
from .scenario import (
    CurveSpec,
    Scenario,
    apply_curve,
    lambda_params_from_system,
    serialize_scenario,
)
from .table import ResultTable
from .version import __version__


def _provenance(scenario: Scenario) -> list[tuple[str, str]]:
    text = scenario.source_text
    if text is None:
        text = serialize_scenario(scenario)
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    entries = [("wqed", __version__), ("scenario_sha256", digest),
               ("mode", scenario.run.mode)]
    grid = scenario.run.grid
    if grid is not None:
        entries.append(("grid", f"{grid.start!r}:{grid.stop!r}:{grid.points}"))
    return entries


def _curve_list(scenario: Scenario) -> tuple[tuple[str, CurveSpec | None], ...]:
    curves = scenario.run.curves
    if not curves:
        return (("", None),)
    return tuple((c.label, c) for c in curves)


def _parallel(n: int, fn, threads: int) -> None:
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(fn, range(n)))
    else:
        for i in range(n):
            fn(i)


def spectrum_sweeps(scenario: Scenario, threads: int = 1):
    """The per-curve detuning sweeps of a spectrum scenario.

    Returns (label, Spectrum) pairs; the label is empty when the scenario
    declares no curves.  Exposed separately from run_scenario so callers
    can reach reflection and loss, which the table omits.
    """
    run = scenario.run
    if run.mode != "spectrum" or run.sweep != "detuning":
        raise ValidationError("spectrum_sweeps needs a detuning-sweep spectrum scenario")
    grid = run.grid.values()
    out = []
    for label, curve in _curve_list(scenario):
        system = apply_curve(scenario.system, curve) if curve else scenario.system
        out.append(
            (label, sweep_spectrum(system, grid, run.input_direction, threads))
        )
    return tuple(out)


def _column_name(label: str) -> str:
    return f"T2_{label}" if label else "T2"


def _spectrum_detuning(scenario: Scenario, threads: int):
    run = scenario.run
    grid = run.grid.values()
    columns = [run.x_column or "delta"]
    data = [grid]
    diagnostics: list[str] = []
    for label, spectrum in spectrum_sweeps(scenario, threads):
        columns.append(_column_name(label))
        data.append(spectrum.transmission)
        for w in spectrum.warnings:
            diagnostics.append(
                f"WARN {w.code} curve={label or '-'} index={w.index} "
                f"x={w.detuning!r}: {w.message}"
            )
    rows = tuple(tuple(float(col[i]) for col in data) for i in range(grid.size))
    return tuple(columns), rows, tuple(diagnostics)


def _spectrum_phase(scenario: Scenario, threads: int):
    run = scenario.run
    grid = run.grid.values()
    columns = [run.x_column or "k_dz"]
    data = [grid]
    diagnostics: list[str] = []
    for label, curve in _curve_list(scenario):
        base = apply_curve(scenario.system, curve) if curve else scenario.system
        detuning = run.detuning
        if curve is not None and curve.detuning is not None:
            detuning = curve.detuning
        trans = np.empty(grid.size)
        warnings: list[str | None] = [None] * grid.size

        def evaluate(i: int, base=base, detuning=detuning, trans=trans, warnings=warnings,
                     label=label) -> None:
            emitters = tuple(
                em if em.id != run.sweep_emitter
                else replace(em, phase_position=float(grid[i]))
                for em in base.emitters
            )
            variant = replace(base, emitters=emitters)
            try:
                pair = amplitudes_at(variant, detuning, run.input_direction)
                trans[i] = pair.transmission
            except SingularMatrix as exc:
                trans[i] = math.nan
                warnings[i] = (
                    f"WARN {exc.code} curve={label or '-'} index={i} "
                    f"x={float(grid[i])!r}: {exc}"
                )

        _parallel(grid.size, evaluate, threads)
        columns.append(_column_name(label))
        data.append(trans)
        diagnostics.extend(w for w in warnings if w is not None)
    rows = tuple(tuple(float(col[i]) for col in data) for i in range(grid.size))
    return tuple(columns), rows, tuple(diagnostics)


def _lambda_rates(scenario: Scenario):
    run = scenario.run
    columns = ("delta", "p_d", "p_r", "p_sc",
               "p_red_r", "p_red_l", "p_blue_r", "p_blue_l")
    rows = []
    for _, curve in _curve_list(scenario):
        system = apply_curve(scenario.system, curve) if curve else scenario.system
        detuning = run.detuning
        if curve is not None and curve.detuning is not None:
            detuning = curve.detuning
        params = lambda_params_from_system(system, detuning)
        rates = compute_rates(params)
        probs = filtered_photon_probs(params)
        rows.append((params.delta, rates.p_d, rates.p_r, rates.p_sc,
                     probs.p_red_r, probs.p_red_l, probs.p_blue_r, probs.p_blue_l))
    return columns, tuple(rows), ()


def _lambda_intensity(scenario: Scenario):
    run = scenario.run
    params = lambda_params_from_system(scenario.system, run.detuning)
    grid = run.grid.values()
    trajectory = evolve_ground_state(params, run.pulse, grid)
    columns = (run.x_column or "t", "intensity_out", "rho00", "rho11", "rho01_abs")
    rows = tuple(
        (
            state.time,
            output_intensity(params, run.pulse, state.time),
            state.rho00,
            state.rho11,
            abs(state.rho01),
        )
        for state in trajectory
    )
    return columns, rows, ()


def _fidelity(scenario: Scenario):
    run = scenario.run
    params = lambda_params_from_system(scenario.system, run.detuning)
    fp = FidelityParams(lambda_params=params, pulse=run.pulse, detection=run.detection)
    grid = run.grid.values()
    columns = (run.x_column or "tc_over_T", "F")
    rows = tuple(
        (float(t) / run.pulse.duration, conditional_fidelity(fp, float(t)))
        for t in grid
    )
    return columns, rows, ()


def _average_fidelity(scenario: Scenario):
    run = scenario.run
    columns = ("nbar", "omega01_T", "f_closed", "f_numeric", "abs_diff")
    rows = []
    for _, curve in _curve_list(scenario):
        system = apply_curve(scenario.system, curve) if curve else scenario.system
        detuning = run.detuning
        pulse = run.pulse
        if curve is not None:
            if curve.detuning is not None:
                detuning = curve.detuning
            if curve.pulse is not None:
                pulse = curve.pulse
        params = lambda_params_from_system(system, detuning)
        fp = FidelityParams(lambda_params=params, pulse=pulse, detection=run.detection)
        closed = average_fidelity(fp)
        numeric = average_fidelity_numeric(fp)
        rows.append(
            (pulse.nbar, params.omega01 * pulse.duration, closed, numeric,
             abs(closed - numeric))
        )
    return columns, tuple(rows), ()


def run_scenario(scenario: Scenario, threads: int = 1) -> ResultTable:
    """Run one scenario and return its result table.

    ``threads`` parallelizes grid evaluation without changing any output
    byte.  Grid points that hit an exactly singular matrix produce NaN
    cells and a diagnostics entry instead of aborting.
    """
    if threads < 1:
        raise ValidationError(f"threads must be >= 1, got {threads}")
    run = scenario.run
    if run.mode == "spectrum":
        if run.sweep == "detuning":
            columns, rows, diagnostics = _spectrum_detuning(scenario, threads)
        else:
            columns, rows, diagnostics = _spectrum_phase(scenario, threads)
    elif run.mode == "lambda_rates":
        columns, rows, diagnostics = _lambda_rates(scenario)
    elif run.mode == "lambda_intensity":
        columns, rows, diagnostics = _lambda_intensity(scenario)
    elif run.mode == "fidelity":
        columns, rows, diagnostics = _fidelity(scenario)
    elif run.mode == "average_fidelity":
        columns, rows, diagnostics = _average_fidelity(scenario)
    else:
        raise ValidationError(f"unknown mode {run.mode!r}")
    return ResultTable(
        columns=tuple(columns),
        rows=rows,
        provenance=tuple(_provenance(scenario)),
        diagnostics=diagnostics,
    )
