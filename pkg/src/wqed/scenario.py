"""Scenario files: TOML parsing, validation, serialization and presets.

A scenario bundles one physical system with one run request:

    [waveguide]             optional metadata (gamma_ref, description)
    [[emitter]]             id, phase_position, levels = [{id, energy, kind}]
    [[transition]]          emitter, excited, ground, rates, phases
    [[coupling]]            kind = "coherent" (a, b, magnitude, phase) or
                            kind = "dipole" (emitter_a/level_a, emitter_b/
                            level_b, magnitude, phase)
    [run]                   mode plus mode-specific keys
    [[run.curve]]           optional parameter variations

Modes: "spectrum" (detuning or phase sweep; curves become columns),
"lambda_rates" and "average_fidelity" (curves become rows), and
"lambda_intensity" / "fidelity" (single curve over a time grid).  Unknown
keys anywhere are schema errors; all diagnostics are collected before
raising so a file can be fixed in one pass.

Energies, rates and detunings are in units of a reference rate; positions
and grid values for phase sweeps are dimensionless propagation phases k*z.
The drive detuning is the drive frequency minus the reference frequency, so
a transition at excited energy E is driven at bare detuning E - detuning.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from importlib import resources

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .dynamics import LambdaParams, PulseSpec
from .emitters import (
    CoherentCoupling,
    DipoleDipoleCoupling,
    Emitter,
    Level,
    SystemSpec,
    Transition,
    validate_system,
)
from .errors import ParseError, SchemaError, ValidationError
from .protocols import DetectionConfig

MODES = ("spectrum", "lambda_rates", "lambda_intensity", "fidelity", "average_fidelity")
SWEEPS = ("detuning", "phase")
_LABEL_RE = re.compile(r"^[A-Za-z0-9_.+-]+$")


@dataclass(frozen=True)
class GridSpec:
    start: float
    stop: float
    points: int

    def values(self):
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class CurveSpec:
    """One parameter variation: overrides applied on top of the base system."""

    label: str
    detuning: float | None = None
    phase_positions: tuple[tuple[str, float], ...] = ()
    transitions: tuple[tuple[str, Transition], ...] = ()
    couplings: tuple[CoherentCoupling, ...] = ()
    pulse: PulseSpec | None = None


@dataclass(frozen=True)
class RunSpec:
    mode: str
    input_direction: str = "right"
    sweep: str = "detuning"
    grid: GridSpec | None = None
    x_column: str | None = None
    detuning: float = 0.0
    sweep_emitter: str | None = None
    pulse: PulseSpec | None = None
    detection: DetectionConfig | None = None
    curves: tuple[CurveSpec, ...] = ()


@dataclass(frozen=True)
class Scenario:
    system: SystemSpec
    run: RunSpec
    gamma_ref: float = 1.0
    description: str = ""
    source_text: str | None = field(default=None, compare=False, repr=False)


def _line_of(text: str, token: str) -> int | None:
    pattern = re.compile(rf"(?m)^\s*(\[+[\w.]*)?{re.escape(token)}\b")
    m = pattern.search(text)
    if m is None:
        return None
    return text.count("\n", 0, m.start()) + 1


class _Reader:
    """Typed access into parsed TOML with collected diagnostics."""

    def __init__(self, text: str):
        self.text = text
        self.problems: list[str] = []

    def complain(self, key: str | None, message: str) -> None:
        line = _line_of(self.text, key) if key else None
        prefix = f"line {line}: " if line else ""
        self.problems.append(prefix + message)

    def check_keys(self, data: dict, allowed: set, where: str) -> None:
        for key in data:
            if key not in allowed:
                self.complain(key, f"unknown key {key!r} in {where}")

    def value(self, data: dict, key: str, kind: str, where: str, default=None,
              required: bool = False):
        if key not in data:
            if required:
                self.complain(None, f"missing required key {key!r} in {where}")
            return default
        val = data[key]
        ok = {
            "number": lambda v: isinstance(v, (int, float)) and not isinstance(v, bool),
            "integer": lambda v: isinstance(v, int) and not isinstance(v, bool),
            "string": lambda v: isinstance(v, str),
            "table": lambda v: isinstance(v, dict),
            "array": lambda v: isinstance(v, list),
        }[kind]
        if not ok(val):
            self.complain(key, f"key {key!r} in {where} must be a {kind}")
            return default
        if kind == "number":
            val = float(val)
            if not math.isfinite(val):
                self.complain(key, f"key {key!r} in {where} must be finite")
                return default
        return val

    def tables(self, data: dict, key: str, where: str) -> list:
        items = self.value(data, key, "array", where, default=[])
        good = []
        for item in items:
            if isinstance(item, dict):
                good.append(item)
            else:
                self.complain(key, f"every [[{key}]] entry must be a table")
        return good


_WAVEGUIDE_KEYS = {"gamma_ref", "description"}
_EMITTER_KEYS = {"id", "phase_position", "levels"}
_LEVEL_KEYS = {"id", "energy", "kind"}
_TRANSITION_KEYS = {
    "emitter", "excited", "ground",
    "gamma1d_right", "gamma1d_left", "gamma_prime", "coupling_phase",
}
_COHERENT_KEYS = {"kind", "a", "b", "magnitude", "phase"}
_DIPOLE_KEYS = {"kind", "emitter_a", "level_a", "emitter_b", "level_b", "magnitude", "phase"}
_RUN_KEYS = {
    "mode", "input_direction", "sweep", "grid", "x_column",
    "detuning", "sweep_emitter", "pulse", "detection", "curve",
}
_GRID_KEYS = {"start", "stop", "points"}
_PULSE_KEYS = {"intensity", "duration", "shape"}
_DETECTION_KEYS = {"efficiency", "filter", "phase_offset"}
_CURVE_KEYS = {"label", "detuning", "phase_positions", "transitions", "couplings", "pulse"}
_TOP_KEYS = {"waveguide", "emitter", "transition", "coupling", "run"}


def _read_transition(r: _Reader, data: dict, where: str) -> tuple[str, Transition]:
    r.check_keys(data, _TRANSITION_KEYS, where)
    emitter_id = r.value(data, "emitter", "string", where, required=True) or ""
    return emitter_id, Transition(
        excited=r.value(data, "excited", "string", where, required=True) or "",
        ground=r.value(data, "ground", "string", where, required=True) or "",
        gamma1d_right=r.value(data, "gamma1d_right", "number", where, required=True) or 0.0,
        gamma1d_left=r.value(data, "gamma1d_left", "number", where, required=True) or 0.0,
        gamma_prime=r.value(data, "gamma_prime", "number", where, default=0.0),
        coupling_phase=r.value(data, "coupling_phase", "number", where, default=0.0),
    )


def _read_pulse(r: _Reader, data: dict, where: str) -> PulseSpec | None:
    r.check_keys(data, _PULSE_KEYS, where)
    intensity = r.value(data, "intensity", "number", where, required=True)
    duration = r.value(data, "duration", "number", where, required=True)
    shape = r.value(data, "shape", "string", where, default="square")
    if intensity is None or duration is None:
        return None
    try:
        return PulseSpec(intensity=intensity, duration=duration, shape=shape)
    except ValidationError as exc:
        r.problems.extend(f"{where}: {d}" for d in exc.diagnostics)
        return None


def _read_curve(r: _Reader, data: dict, where: str) -> CurveSpec | None:
    r.check_keys(data, _CURVE_KEYS, where)
    label = r.value(data, "label", "string", where, required=True)
    if label is None:
        return None
    detuning = r.value(data, "detuning", "number", where) if "detuning" in data else None
    phase_positions = []
    for em_id, pos in (r.value(data, "phase_positions", "table", where, default={}) or {}).items():
        if isinstance(pos, (int, float)) and not isinstance(pos, bool):
            phase_positions.append((em_id, float(pos)))
        else:
            r.complain("phase_positions", f"{where}: position of {em_id!r} must be a number")
    transitions = tuple(
        _read_transition(r, tdata, f"{where}.transitions")
        for tdata in r.tables(data, "transitions", where)
    )
    couplings = []
    for cdata in r.tables(data, "couplings", where):
        cwhere = f"{where}.couplings"
        r.check_keys(cdata, {"a", "b", "magnitude", "phase"}, cwhere)
        couplings.append(
            CoherentCoupling(
                a=r.value(cdata, "a", "string", cwhere, required=True) or "",
                b=r.value(cdata, "b", "string", cwhere, required=True) or "",
                magnitude=r.value(cdata, "magnitude", "number", cwhere, required=True) or 0.0,
                phase=r.value(cdata, "phase", "number", cwhere, default=0.0),
            )
        )
    pulse_data = r.value(data, "pulse", "table", where)
    pulse = _read_pulse(r, pulse_data, f"{where}.pulse") if pulse_data is not None else None
    return CurveSpec(
        label=label,
        detuning=detuning,
        phase_positions=tuple(phase_positions),
        transitions=transitions,
        couplings=tuple(couplings),
        pulse=pulse,
    )


def parse_scenario(text: str) -> Scenario:
    """Parse and fully validate scenario text.

    Raises ParseError for malformed TOML, SchemaError for unknown keys or
    wrong types (all collected), and ValidationError when the parsed
    scenario violates the physical model or the run mode's requirements.
    """
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"scenario is not valid TOML: {exc}", (str(exc),)) from exc

    r = _Reader(text)
    r.check_keys(data, _TOP_KEYS, "the scenario")

    wg = r.value(data, "waveguide", "table", "the scenario", default={})
    r.check_keys(wg, _WAVEGUIDE_KEYS, "[waveguide]")
    gamma_ref = r.value(wg, "gamma_ref", "number", "[waveguide]", default=1.0)
    description = r.value(wg, "description", "string", "[waveguide]", default="")

    transitions_by_emitter: dict[str, list[Transition]] = {}
    for tdata in r.tables(data, "transition", "the scenario"):
        emitter_id, tr = _read_transition(r, tdata, "[[transition]]")
        transitions_by_emitter.setdefault(emitter_id, []).append(tr)

    emitters = []
    for edata in r.tables(data, "emitter", "the scenario"):
        r.check_keys(edata, _EMITTER_KEYS, "[[emitter]]")
        em_id = r.value(edata, "id", "string", "[[emitter]]", required=True) or ""
        levels = []
        for ldata in r.tables(edata, "levels", f"emitter {em_id!r}"):
            r.check_keys(ldata, _LEVEL_KEYS, f"levels of emitter {em_id!r}")
            levels.append(
                Level(
                    id=r.value(ldata, "id", "string", "level", required=True) or "",
                    energy=r.value(ldata, "energy", "number", "level", required=True) or 0.0,
                    kind=r.value(ldata, "kind", "string", "level", required=True) or "",
                )
            )
        emitters.append(
            Emitter(
                id=em_id,
                levels=tuple(levels),
                transitions=tuple(transitions_by_emitter.pop(em_id, ())),
                phase_position=r.value(edata, "phase_position", "number", "[[emitter]]", default=0.0),
            )
        )
    for em_id in transitions_by_emitter:
        r.complain("emitter", f"[[transition]] references unknown emitter {em_id!r}")

    coherent = []
    dipole = []
    for cdata in r.tables(data, "coupling", "the scenario"):
        kind = r.value(cdata, "kind", "string", "[[coupling]]", default="coherent")
        if kind == "coherent":
            r.check_keys(cdata, _COHERENT_KEYS, "[[coupling]] (coherent)")
            coherent.append(
                CoherentCoupling(
                    a=r.value(cdata, "a", "string", "[[coupling]]", required=True) or "",
                    b=r.value(cdata, "b", "string", "[[coupling]]", required=True) or "",
                    magnitude=r.value(cdata, "magnitude", "number", "[[coupling]]", required=True) or 0.0,
                    phase=r.value(cdata, "phase", "number", "[[coupling]]", default=0.0),
                )
            )
        elif kind == "dipole":
            r.check_keys(cdata, _DIPOLE_KEYS, "[[coupling]] (dipole)")
            dipole.append(
                DipoleDipoleCoupling(
                    transition_a=(
                        r.value(cdata, "emitter_a", "string", "[[coupling]]", required=True) or "",
                        r.value(cdata, "level_a", "string", "[[coupling]]", required=True) or "",
                    ),
                    transition_b=(
                        r.value(cdata, "emitter_b", "string", "[[coupling]]", required=True) or "",
                        r.value(cdata, "level_b", "string", "[[coupling]]", required=True) or "",
                    ),
                    magnitude=r.value(cdata, "magnitude", "number", "[[coupling]]", required=True) or 0.0,
                    phase=r.value(cdata, "phase", "number", "[[coupling]]", default=0.0),
                )
            )
        else:
            r.complain("kind", f"unknown coupling kind {kind!r}")

    run_data = r.value(data, "run", "table", "the scenario", required=True, default={})
    r.check_keys(run_data, _RUN_KEYS, "[run]")
    mode = r.value(run_data, "mode", "string", "[run]", required=True) or ""
    grid_data = r.value(run_data, "grid", "table", "[run]")
    grid = None
    if grid_data is not None:
        r.check_keys(grid_data, _GRID_KEYS, "[run] grid")
        start = r.value(grid_data, "start", "number", "[run] grid", required=True)
        stop = r.value(grid_data, "stop", "number", "[run] grid", required=True)
        points = r.value(grid_data, "points", "integer", "[run] grid", required=True)
        if None not in (start, stop, points):
            grid = GridSpec(start=start, stop=stop, points=points)
    pulse_data = r.value(run_data, "pulse", "table", "[run]")
    pulse = _read_pulse(r, pulse_data, "[run] pulse") if pulse_data is not None else None
    detection_data = r.value(run_data, "detection", "table", "[run]")
    detection = None
    if detection_data is not None:
        r.check_keys(detection_data, _DETECTION_KEYS, "[run] detection")
        try:
            detection = DetectionConfig(
                efficiency=r.value(detection_data, "efficiency", "number", "[run] detection", default=1.0),
                filter=r.value(detection_data, "filter", "string", "[run] detection", default="red_only"),
                phase_offset=r.value(detection_data, "phase_offset", "number", "[run] detection", default=0.0),
            )
        except ValidationError as exc:
            r.problems.extend(f"[run] detection: {d}" for d in exc.diagnostics)
    curves = []
    for cdata in r.tables(run_data, "curve", "[run]"):
        curve = _read_curve(r, cdata, "[[run.curve]]")
        if curve is not None:
            curves.append(curve)

    run = RunSpec(
        mode=mode,
        input_direction=r.value(run_data, "input_direction", "string", "[run]", default="right"),
        sweep=r.value(run_data, "sweep", "string", "[run]", default="detuning"),
        grid=grid,
        x_column=r.value(run_data, "x_column", "string", "[run]"),
        detuning=r.value(run_data, "detuning", "number", "[run]", default=0.0),
        sweep_emitter=r.value(run_data, "sweep_emitter", "string", "[run]"),
        pulse=pulse,
        detection=detection,
        curves=tuple(curves),
    )

    if r.problems:
        raise SchemaError(
            f"scenario has {len(r.problems)} schema problem(s)", tuple(r.problems)
        )

    splittings = []
    for em in emitters:
        grounds = em.ground_levels()
        for i, ga in enumerate(grounds):
            for gb in grounds[i + 1:]:
                splittings.append((ga.id, gb.id, gb.energy - ga.energy))
    system = SystemSpec(
        emitters=tuple(emitters),
        coherent_couplings=tuple(coherent),
        dipole_couplings=tuple(dipole),
        ground_splitting_phases=tuple(splittings),
    )

    problems = list(validate_system(system))
    problems.extend(_validate_run(system, run))
    if not (math.isfinite(gamma_ref) and gamma_ref > 0):
        problems.append(f"gamma_ref must be positive and finite, got {gamma_ref}")
    if problems:
        raise ValidationError(
            f"scenario has {len(problems)} validation problem(s)", tuple(problems)
        )

    return Scenario(
        system=system,
        run=run,
        gamma_ref=gamma_ref,
        description=description,
        source_text=text,
    )


def _is_lambda_shape(system: SystemSpec) -> str | None:
    """Return a complaint when the system is not a single lambda emitter."""
    if len(system.emitters) != 1:
        return "lambda modes need exactly one emitter"
    em = system.emitters[0]
    grounds = em.ground_levels()
    exciteds = em.excited_levels()
    if len(grounds) != 2 or len(exciteds) != 1:
        return (
            "lambda modes need one emitter with two ground levels and one "
            f"excited level, got {len(grounds)} ground(s) and {len(exciteds)} excited"
        )
    exc = exciteds[0].id
    legs = {tr.ground for tr in em.transitions_from(exc)}
    if legs != {grounds[0].id, grounds[1].id} or len(em.transitions_from(exc)) != 2:
        return "lambda modes need exactly one transition from the excited level to each ground"
    if system.coherent_couplings or system.dipole_couplings:
        return "lambda modes do not support excited-state couplings"
    return None


def lambda_params_from_system(system: SystemSpec, drive_detuning: float) -> LambdaParams:
    """Extract LambdaParams from a single lambda-shaped emitter.

    The first declared ground is |0> (the driven leg) and the second is
    |1>; the drive detuning argument is the drive frequency offset, so the
    bare detuning is E_excited - E_ground0 - drive_detuning.
    """
    complaint = _is_lambda_shape(system)
    if complaint:
        raise ValidationError(complaint, (complaint,))
    em = system.emitters[0]
    g0, g1 = em.ground_levels()
    exc = em.excited_levels()[0]
    tr0 = next(tr for tr in em.transitions if tr.ground == g0.id)
    tr1 = next(tr for tr in em.transitions if tr.ground == g1.id)
    return LambdaParams(
        gamma0_1d_right=tr0.gamma1d_right,
        gamma0_1d_left=tr0.gamma1d_left,
        gamma0_prime=tr0.gamma_prime,
        gamma1_1d_right=tr1.gamma1d_right,
        gamma1_1d_left=tr1.gamma1d_left,
        gamma1_prime=tr1.gamma_prime,
        delta=exc.energy - g0.energy - drive_detuning,
        omega01=g1.energy - g0.energy,
    )


def _validate_run(system: SystemSpec, run: RunSpec) -> list[str]:
    problems: list[str] = []
    if validate_system(system):
        return problems  # system problems already reported; run checks would cascade

    if run.mode not in MODES:
        problems.append(f"unknown mode {run.mode!r} (expected one of {MODES})")
        return problems
    if run.input_direction not in ("right", "left"):
        problems.append(f"unknown input_direction {run.input_direction!r}")

    labels = [c.label for c in run.curves]
    for label in labels:
        if not _LABEL_RE.match(label):
            problems.append(f"curve label {label!r} must match {_LABEL_RE.pattern}")
    if len(set(labels)) != len(labels):
        problems.append("curve labels must be unique")

    def forbid(cond: bool, message: str) -> None:
        if cond:
            problems.append(message)

    def require_grid() -> None:
        if run.grid is None:
            problems.append(f"mode {run.mode!r} requires a grid")
        else:
            g = run.grid
            if not (math.isfinite(g.start) and math.isfinite(g.stop)):
                problems.append("grid bounds must be finite")
            elif g.start >= g.stop:
                problems.append("grid start must be below grid stop")
            if g.points < 2:
                problems.append("grid needs at least 2 points")

    if run.mode == "spectrum":
        require_grid()
        forbid(run.pulse is not None, "mode 'spectrum' does not use a pulse")
        forbid(run.detection is not None, "mode 'spectrum' does not use detection")
        if any(len(em.ground_levels()) > 1 for em in system.emitters):
            problems.append(
                "multi-ground elastic scattering is not supported; lambda modes "
                "own systems with several ground levels"
            )
        if run.sweep not in SWEEPS:
            problems.append(f"unknown sweep {run.sweep!r} (expected one of {SWEEPS})")
        elif run.sweep == "phase":
            if run.sweep_emitter is None:
                problems.append("phase sweeps require sweep_emitter")
            elif all(em.id != run.sweep_emitter for em in system.emitters):
                problems.append(f"sweep_emitter {run.sweep_emitter!r} does not exist")
        for curve in run.curves:
            where = f"curve {curve.label!r}"
            forbid(curve.pulse is not None, f"{where}: pulse overrides need a lambda mode")
            forbid(
                run.sweep == "detuning" and curve.detuning is not None,
                f"{where}: fixed detuning overrides apply to phase sweeps only",
            )
            for em_id, _ in curve.phase_positions:
                if all(em.id != em_id for em in system.emitters):
                    problems.append(f"{where}: phase position for unknown emitter {em_id!r}")
            for em_id, tr in curve.transitions:
                if not _transition_exists(system, em_id, tr):
                    problems.append(
                        f"{where}: no base transition {tr.excited!r}->{tr.ground!r} "
                        f"on emitter {em_id!r} to override"
                    )
            for cc in curve.couplings:
                if not any(
                    {base.a, base.b} == {cc.a, cc.b}
                    for base in system.coherent_couplings
                ):
                    problems.append(
                        f"{where}: no base coherent coupling {cc.a!r}<->{cc.b!r} to override"
                    )
    else:
        complaint = _is_lambda_shape(system)
        if complaint:
            problems.append(complaint)
        forbid(run.sweep_emitter is not None, f"mode {run.mode!r} does not sweep phases")
        needs_pulse = run.mode in ("lambda_intensity", "fidelity", "average_fidelity")
        needs_detection = run.mode in ("fidelity", "average_fidelity")
        forbid(needs_pulse and run.pulse is None, f"mode {run.mode!r} requires a pulse")
        forbid(
            not needs_pulse and run.pulse is not None,
            f"mode {run.mode!r} does not use a pulse",
        )
        forbid(
            needs_detection and run.detection is None,
            f"mode {run.mode!r} requires detection",
        )
        forbid(
            not needs_detection and run.detection is not None,
            f"mode {run.mode!r} does not use detection",
        )
        if run.mode in ("lambda_intensity", "fidelity"):
            require_grid()
            forbid(bool(run.curves), f"mode {run.mode!r} does not take curves")
            if run.grid is not None and run.pulse is not None:
                if run.grid.start < 0 or run.grid.stop > run.pulse.duration:
                    problems.append(
                        "time grid must stay inside the pulse window "
                        f"[0, {run.pulse.duration}]"
                    )
        else:
            forbid(run.grid is not None, f"mode {run.mode!r} does not take a grid")
            for curve in run.curves:
                where = f"curve {curve.label!r}"
                forbid(bool(curve.phase_positions), f"{where}: phase positions need a spectrum mode")
                forbid(bool(curve.couplings), f"{where}: coupling overrides need a spectrum mode")
                forbid(
                    run.mode == "lambda_rates" and curve.pulse is not None,
                    f"{where}: mode 'lambda_rates' does not use a pulse",
                )
                for em_id, tr in curve.transitions:
                    if not _transition_exists(system, em_id, tr):
                        problems.append(
                            f"{where}: no base transition {tr.excited!r}->{tr.ground!r} "
                            f"on emitter {em_id!r} to override"
                        )
    return problems


def _transition_exists(system: SystemSpec, em_id: str, tr: Transition) -> bool:
    for em in system.emitters:
        if em.id != em_id:
            continue
        return any(
            base.excited == tr.excited and base.ground == tr.ground
            for base in em.transitions
        )
    return False


def apply_curve(system: SystemSpec, curve: CurveSpec) -> SystemSpec:
    """Apply one curve's overrides, returning a new system."""
    emitters = []
    overrides = {(em_id, tr.excited, tr.ground): tr for em_id, tr in curve.transitions}
    positions = dict(curve.phase_positions)
    for em in system.emitters:
        transitions = tuple(
            overrides.pop((em.id, tr.excited, tr.ground), tr) for tr in em.transitions
        )
        em = replace(
            em,
            transitions=transitions,
            phase_position=positions.pop(em.id, em.phase_position),
        )
        emitters.append(em)
    couplings = list(system.coherent_couplings)
    for cc in curve.couplings:
        for i, base in enumerate(couplings):
            if {base.a, base.b} == {cc.a, cc.b}:
                couplings[i] = cc
                break
    return replace(
        system, emitters=tuple(emitters), coherent_couplings=tuple(couplings)
    )


def _fmt_value(value) -> str:
    if isinstance(value, str):
        escaped = value.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def _fmt_inline(pairs) -> str:
    body = ", ".join(f"{k} = {_fmt_value(v)}" for k, v in pairs)
    return "{ " + body + " }"


def serialize_scenario(s: Scenario) -> str:
    """Write a scenario back to canonical TOML.

    parse_scenario(serialize_scenario(s)) reconstructs an equal Scenario,
    which is what run provenance hashes when no original text is attached.
    """
    lines: list[str] = []
    lines.append("[waveguide]")
    lines.append(f"gamma_ref = {_fmt_value(s.gamma_ref)}")
    if s.description:
        lines.append(f"description = {_fmt_value(s.description)}")

    for em in s.system.emitters:
        lines.append("")
        lines.append("[[emitter]]")
        lines.append(f"id = {_fmt_value(em.id)}")
        lines.append(f"phase_position = {_fmt_value(em.phase_position)}")
        lines.append("levels = [")
        for lv in em.levels:
            lines.append(
                "  "
                + _fmt_inline((("id", lv.id), ("energy", lv.energy), ("kind", lv.kind)))
                + ","
            )
        lines.append("]")

    for em in s.system.emitters:
        for tr in em.transitions:
            lines.append("")
            lines.append("[[transition]]")
            lines.append(f"emitter = {_fmt_value(em.id)}")
            for key in ("excited", "ground"):
                lines.append(f"{key} = {_fmt_value(getattr(tr, key))}")
            for key in ("gamma1d_right", "gamma1d_left", "gamma_prime", "coupling_phase"):
                lines.append(f"{key} = {_fmt_value(getattr(tr, key))}")

    for cc in s.system.coherent_couplings:
        lines.append("")
        lines.append("[[coupling]]")
        lines.append('kind = "coherent"')
        lines.append(f"a = {_fmt_value(cc.a)}")
        lines.append(f"b = {_fmt_value(cc.b)}")
        lines.append(f"magnitude = {_fmt_value(cc.magnitude)}")
        lines.append(f"phase = {_fmt_value(cc.phase)}")
    for dc in s.system.dipole_couplings:
        lines.append("")
        lines.append("[[coupling]]")
        lines.append('kind = "dipole"')
        lines.append(f"emitter_a = {_fmt_value(dc.transition_a[0])}")
        lines.append(f"level_a = {_fmt_value(dc.transition_a[1])}")
        lines.append(f"emitter_b = {_fmt_value(dc.transition_b[0])}")
        lines.append(f"level_b = {_fmt_value(dc.transition_b[1])}")
        lines.append(f"magnitude = {_fmt_value(dc.magnitude)}")
        lines.append(f"phase = {_fmt_value(dc.phase)}")

    run = s.run
    lines.append("")
    lines.append("[run]")
    lines.append(f"mode = {_fmt_value(run.mode)}")
    lines.append(f"input_direction = {_fmt_value(run.input_direction)}")
    if run.mode == "spectrum":
        lines.append(f"sweep = {_fmt_value(run.sweep)}")
    if run.grid is not None:
        g = run.grid
        lines.append(
            "grid = "
            + _fmt_inline((("start", g.start), ("stop", g.stop), ("points", g.points)))
        )
    if run.x_column is not None:
        lines.append(f"x_column = {_fmt_value(run.x_column)}")
    lines.append(f"detuning = {_fmt_value(run.detuning)}")
    if run.sweep_emitter is not None:
        lines.append(f"sweep_emitter = {_fmt_value(run.sweep_emitter)}")
    if run.pulse is not None:
        lines.append(
            "pulse = "
            + _fmt_inline(
                (("intensity", run.pulse.intensity), ("duration", run.pulse.duration))
            )
        )
    if run.detection is not None:
        d = run.detection
        lines.append(
            "detection = "
            + _fmt_inline(
                (
                    ("efficiency", d.efficiency),
                    ("filter", d.filter),
                    ("phase_offset", d.phase_offset),
                )
            )
        )
    for curve in run.curves:
        lines.append("")
        lines.append("[[run.curve]]")
        lines.append(f"label = {_fmt_value(curve.label)}")
        if curve.detuning is not None:
            lines.append(f"detuning = {_fmt_value(curve.detuning)}")
        if curve.phase_positions:
            lines.append("phase_positions = " + _fmt_inline(curve.phase_positions))
        if curve.transitions:
            lines.append("transitions = [")
            for em_id, tr in curve.transitions:
                lines.append(
                    "  "
                    + _fmt_inline(
                        (
                            ("emitter", em_id),
                            ("excited", tr.excited),
                            ("ground", tr.ground),
                            ("gamma1d_right", tr.gamma1d_right),
                            ("gamma1d_left", tr.gamma1d_left),
                            ("gamma_prime", tr.gamma_prime),
                            ("coupling_phase", tr.coupling_phase),
                        )
                    )
                    + ","
                )
            lines.append("]")
        if curve.couplings:
            lines.append("couplings = [")
            for cc in curve.couplings:
                lines.append(
                    "  "
                    + _fmt_inline(
                        (
                            ("a", cc.a),
                            ("b", cc.b),
                            ("magnitude", cc.magnitude),
                            ("phase", cc.phase),
                        )
                    )
                    + ","
                )
            lines.append("]")
        if curve.pulse is not None:
            lines.append(
                "pulse = "
                + _fmt_inline(
                    (
                        ("intensity", curve.pulse.intensity),
                        ("duration", curve.pulse.duration),
                    )
                )
            )
    return "\n".join(lines) + "\n"


def preset_names() -> tuple[str, ...]:
    """The bundled scenario presets, sorted by name."""
    root = resources.files("wqed").joinpath("presets")
    names = [
        entry.name[: -len(".toml")]
        for entry in root.iterdir()
        if entry.name.endswith(".toml")
    ]
    return tuple(sorted(names))


def preset_text(name: str) -> str:
    path = resources.files("wqed").joinpath("presets", f"{name}.toml")
    if not path.is_file():
        known = ", ".join(preset_names())
        raise ValidationError(f"unknown preset {name!r} (available: {known})")
    return path.read_text(encoding="utf-8")


def load_preset(name: str) -> Scenario:
    return parse_scenario(preset_text(name))
