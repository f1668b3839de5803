"""Declarative model of multi-level emitters coupled to a 1D waveguide.

A system is a list of emitters, each with internal levels (grounds and
exciteds), waveguide-coupled transitions with independent right/left decay
rates, plus optional coherent (classical drive) and dipole-dipole couplings
between excited levels.  All energies and rates are in units of a reference
rate; positions enter only through the accumulated propagation phase k*z, so
``phase_position`` is the dimensionless k*z of the emitter.

The single-excitation basis combines one excited emitter with every other
emitter in one of its ground levels.  Joint ground states are the cartesian
product of the per-emitter ground manifolds.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .errors import EmptyManifold, UnknownLevel, ValidationError

GROUND = "ground"
EXCITED = "excited"


@dataclass(frozen=True)
class Level:
    """One internal level: ``kind`` is "ground" or "excited"."""

    id: str
    energy: float
    kind: str


@dataclass(frozen=True)
class Transition:
    """A waveguide-coupled decay channel of one emitter.

    ``gamma1d_right``/``gamma1d_left`` are the directional emission rates into
    the guided modes, ``gamma_prime`` the loss rate into everything else, and
    ``coupling_phase`` the phase of the dipole matrix element.
    """

    excited: str
    ground: str
    gamma1d_right: float
    gamma1d_left: float
    gamma_prime: float = 0.0
    coupling_phase: float = 0.0

    @property
    def gamma1d(self) -> float:
        return self.gamma1d_right + self.gamma1d_left

    @property
    def total(self) -> float:
        return self.gamma1d_right + self.gamma1d_left + self.gamma_prime


@dataclass(frozen=True)
class CoherentCoupling:
    """Classical coupling between two excited levels.

    ``magnitude`` is the full off-diagonal matrix element between the two
    excited states (the Rabi-type entry appears once in each of the two
    mirrored slots, with phases exp(+i*phase) from ``a`` to ``b`` and
    exp(-i*phase) back).
    """

    a: str
    b: str
    magnitude: float
    phase: float = 0.0


@dataclass(frozen=True)
class DipoleDipoleCoupling:
    """Static dipole-dipole coupling between excited levels of two emitters.

    Levels are addressed as (emitter_id, level_id) pairs since level ids are
    only unique within one emitter.
    """

    transition_a: tuple[str, str]
    transition_b: tuple[str, str]
    magnitude: float
    phase: float = 0.0


@dataclass(frozen=True)
class Emitter:
    id: str
    levels: tuple[Level, ...]
    transitions: tuple[Transition, ...]
    phase_position: float = 0.0

    def level(self, level_id: str) -> Level:
        for lv in self.levels:
            if lv.id == level_id:
                return lv
        raise UnknownLevel(f"emitter {self.id!r} has no level {level_id!r}")

    def ground_levels(self) -> tuple[Level, ...]:
        return tuple(lv for lv in self.levels if lv.kind == GROUND)

    def excited_levels(self) -> tuple[Level, ...]:
        return tuple(lv for lv in self.levels if lv.kind == EXCITED)

    def transitions_from(self, excited_id: str) -> tuple[Transition, ...]:
        return tuple(tr for tr in self.transitions if tr.excited == excited_id)


@dataclass(frozen=True)
class SystemSpec:
    emitters: tuple[Emitter, ...]
    coherent_couplings: tuple[CoherentCoupling, ...] = ()
    dipole_couplings: tuple[DipoleDipoleCoupling, ...] = ()
    ground_splitting_phases: tuple[tuple[str, str, float], ...] = ()

    def emitter(self, emitter_id: str) -> Emitter:
        for em in self.emitters:
            if em.id == emitter_id:
                return em
        raise UnknownLevel(f"no emitter with id {emitter_id!r}")

    def find_excited(self, level_id: str) -> tuple[int, Emitter, Level]:
        """Resolve an excited-level id that is unique across the system."""
        hits = []
        for idx, em in enumerate(self.emitters):
            for lv in em.excited_levels():
                if lv.id == level_id:
                    hits.append((idx, em, lv))
        if not hits:
            raise UnknownLevel(f"no excited level with id {level_id!r}")
        if len(hits) > 1:
            owners = ", ".join(repr(h[1].id) for h in hits)
            raise UnknownLevel(
                f"excited level id {level_id!r} is ambiguous (emitters {owners})"
            )
        return hits[0]


@dataclass(frozen=True)
class JointGround:
    """A joint ground state: one ground level id per emitter, in order."""

    levels: tuple[str, ...]
    label: str


@dataclass(frozen=True)
class JointExcited:
    """A single-excitation state: one emitter excited, the rest grounded."""

    levels: tuple[str, ...]
    emitter_index: int
    emitter_id: str
    level_id: str
    label: str


@dataclass(frozen=True)
class CombinedBasis:
    """Joint ground and single-excitation manifolds of a system.

    Ordering is deterministic: emitters and levels in declaration order, and
    joint grounds as the cartesian product with the leftmost emitter varying
    slowest.
    """

    system: SystemSpec
    ground_states: tuple[JointGround, ...]
    excited_states: tuple[JointExcited, ...]
    ground_index: dict = field(repr=False)
    excited_index: dict = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.excited_states)

    def decay_channels(self, excited_idx: int):
        """Decay channels of one single-excitation state.

        Returns tuples (ground_state_index, transition, emitter) for every
        waveguide transition out of the excited level, keyed by the joint
        ground reached when that emitter drops to the transition's ground
        level while all other emitters keep their (ground) levels.
        """
        exc = self.excited_states[excited_idx]
        em = self.system.emitters[exc.emitter_index]
        channels = []
        for tr in em.transitions_from(exc.level_id):
            target = list(exc.levels)
            target[exc.emitter_index] = tr.ground
            gidx = self.ground_index[tuple(target)]
            channels.append((gidx, tr, em))
        return tuple(channels)


def total_decay_rate(emitter: Emitter, excited_id: str) -> float:
    """Total width of one excited level: sum of right, left and loss rates
    over all transitions out of it."""
    lv = emitter.level(excited_id)
    if lv.kind != EXCITED:
        raise UnknownLevel(f"level {excited_id!r} of emitter {emitter.id!r} is not excited")
    return sum(tr.total for tr in emitter.transitions_from(excited_id))


def validate_system(system: SystemSpec) -> tuple[str, ...]:
    """Check the declarative model and return one message per violation.

    An empty result means the system is well formed.  Construction of the
    dataclasses never raises, so malformed input can always be diagnosed in
    full here.
    """
    problems: list[str] = []
    seen_emitters: set[str] = set()

    if not system.emitters:
        problems.append("system declares no emitters")

    for em in system.emitters:
        tag = f"emitter {em.id!r}"
        if not em.id:
            problems.append("emitter with empty id")
        if em.id in seen_emitters:
            problems.append(f"duplicate emitter id {em.id!r}")
        seen_emitters.add(em.id)
        if not math.isfinite(em.phase_position):
            problems.append(f"{tag}: phase_position is not finite")

        level_ids: set[str] = set()
        for lv in em.levels:
            if lv.kind not in (GROUND, EXCITED):
                problems.append(f"{tag}: level {lv.id!r} has unknown kind {lv.kind!r}")
            if not math.isfinite(lv.energy):
                problems.append(f"{tag}: level {lv.id!r} has non-finite energy")
            if lv.id in level_ids:
                problems.append(f"{tag}: duplicate level id {lv.id!r}")
            level_ids.add(lv.id)

        if not em.ground_levels():
            problems.append(f"{tag}: no ground level")
        if len(em.levels) < 1:
            problems.append(f"{tag}: no levels")

        for tr in em.transitions:
            ttag = f"{tag}, transition {tr.excited!r}->{tr.ground!r}"
            if tr.excited not in level_ids:
                problems.append(f"{ttag}: unknown excited level")
            elif em.level(tr.excited).kind != EXCITED:
                problems.append(f"{ttag}: {tr.excited!r} is not an excited level")
            if tr.ground not in level_ids:
                problems.append(f"{ttag}: unknown ground level")
            elif em.level(tr.ground).kind != GROUND:
                problems.append(f"{ttag}: {tr.ground!r} is not a ground level")
            for name, rate in (
                ("gamma1d_right", tr.gamma1d_right),
                ("gamma1d_left", tr.gamma1d_left),
                ("gamma_prime", tr.gamma_prime),
            ):
                if not math.isfinite(rate) or rate < 0:
                    problems.append(f"{ttag}: {name} must be finite and >= 0, got {rate}")
            if not math.isfinite(tr.coupling_phase):
                problems.append(f"{ttag}: coupling_phase is not finite")

        seen_pairs: set[tuple[str, str]] = set()
        for tr in em.transitions:
            pair = (tr.excited, tr.ground)
            if pair in seen_pairs:
                problems.append(f"{tag}: duplicate transition {tr.excited!r}->{tr.ground!r}")
            seen_pairs.add(pair)

    def check_excited_ref(label: str, level_id: str) -> None:
        try:
            system.find_excited(level_id)
        except UnknownLevel as exc:
            problems.append(f"{label}: {exc}")

    for cc in system.coherent_couplings:
        ctag = f"coherent coupling {cc.a!r}<->{cc.b!r}"
        check_excited_ref(ctag, cc.a)
        check_excited_ref(ctag, cc.b)
        if cc.a == cc.b:
            problems.append(f"{ctag}: couples a level to itself")
        if not math.isfinite(cc.magnitude) or cc.magnitude < 0:
            problems.append(f"{ctag}: magnitude must be finite and >= 0")
        if not math.isfinite(cc.phase):
            problems.append(f"{ctag}: phase is not finite")

    for dc in system.dipole_couplings:
        dtag = f"dipole coupling {dc.transition_a}<->{dc.transition_b}"
        for em_id, lv_id in (dc.transition_a, dc.transition_b):
            try:
                em = system.emitter(em_id)
                lv = em.level(lv_id)
                if lv.kind != EXCITED:
                    problems.append(f"{dtag}: level {lv_id!r} of {em_id!r} is not excited")
            except UnknownLevel as exc:
                problems.append(f"{dtag}: {exc}")
        if dc.transition_a == dc.transition_b:
            problems.append(f"{dtag}: couples a level to itself")
        if not math.isfinite(dc.magnitude) or dc.magnitude < 0:
            problems.append(f"{dtag}: magnitude must be finite and >= 0")
        if not math.isfinite(dc.phase):
            problems.append(f"{dtag}: phase is not finite")

    for ga, gb, omega in system.ground_splitting_phases:
        if not math.isfinite(omega):
            problems.append(f"ground splitting {ga!r}/{gb!r} is not finite")

    return tuple(problems)


def build_single_excitation_basis(system: SystemSpec) -> CombinedBasis:
    """Construct the joint ground and single-excitation manifolds.

    Raises EmptyManifold when an emitter has no ground level or no emitter
    has an excited level, and ValidationError when the declarative model is
    malformed.  Systems combining several emitters with a multi-ground
    emitter are rejected: elastic scattering is then ill-defined and no
    supported protocol uses that shape.
    """
    for em in system.emitters:
        if not em.ground_levels():
            raise EmptyManifold(f"emitter {em.id!r} has no ground level")
    if not system.emitters:
        raise EmptyManifold("system declares no emitters")
    if not any(em.excited_levels() for em in system.emitters):
        raise EmptyManifold("no emitter has an excited level")

    problems = validate_system(system)
    if problems:
        raise ValidationError(
            f"system is not well formed ({len(problems)} problem(s))", problems
        )

    if len(system.emitters) > 1 and any(
        len(em.ground_levels()) > 1 for em in system.emitters
    ):
        raise ValidationError(
            "multi-ground emitters cannot be combined with other emitters"
        )

    ground_choices = [
        tuple(lv.id for lv in em.ground_levels()) for em in system.emitters
    ]
    ground_states = tuple(
        JointGround(levels=combo, label=",".join(combo))
        for combo in itertools.product(*ground_choices)
    )
    default_grounds = tuple(choices[0] for choices in ground_choices)

    excited_states = []
    for idx, em in enumerate(system.emitters):
        for lv in em.excited_levels():
            levels = list(default_grounds)
            levels[idx] = lv.id
            excited_states.append(
                JointExcited(
                    levels=tuple(levels),
                    emitter_index=idx,
                    emitter_id=em.id,
                    level_id=lv.id,
                    label=",".join(levels),
                )
            )

    ground_index = {g.levels: i for i, g in enumerate(ground_states)}
    excited_index = {
        (e.emitter_id, e.level_id): i for i, e in enumerate(excited_states)
    }
    return CombinedBasis(
        system=system,
        ground_states=ground_states,
        excited_states=tuple(excited_states),
        ground_index=ground_index,
        excited_index=excited_index,
    )
