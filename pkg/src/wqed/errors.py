"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` used for structured
diagnostics on stderr, and an ``exit_code`` so the command-line front end can
translate failures uniformly: validation problems exit with 1, numerical
problems with 2.
"""

from __future__ import annotations


class WqedError(Exception):
    """Base class for all package errors."""

    code = "ERROR"
    exit_code = 1


class EmptyManifold(WqedError):
    """An emitter lacks a ground level, or no emitter has an excited level."""

    code = "EMPTY_MANIFOLD"


class UnknownLevel(WqedError):
    """A level id does not resolve to a level of the expected kind."""

    code = "UNKNOWN_LEVEL"


class BasisMismatch(WqedError):
    """A basis was built from a different system than the one supplied."""

    code = "BASIS_MISMATCH"


class ValidationError(WqedError):
    """A system or scenario violates the declarative model.

    ``diagnostics`` holds one human-readable string per violation so callers
    can report every problem at once instead of failing on the first.
    """

    code = "VALIDATION"

    def __init__(self, message: str, diagnostics: tuple[str, ...] | list[str] = ()):
        super().__init__(message)
        self.diagnostics = tuple(diagnostics)


class ParseError(ValidationError):
    """Scenario text is not well-formed TOML."""

    code = "PARSE"


class SchemaError(ValidationError):
    """Scenario text is well-formed but uses unknown keys or wrong types."""

    code = "SCHEMA"


class MultiGroundElastic(WqedError):
    """Elastic amplitudes were requested for a system with several ground states.

    The ground-state populations are then dynamical and a bare scattering
    amplitude is ambiguous; the lambda-system protocol operations own that
    case.
    """

    code = "MULTI_GROUND_ELASTIC"


class AsymmetricCoupling(WqedError):
    """A closed form assuming equal left/right coupling got chiral rates."""

    code = "ASYMMETRIC_COUPLING"


class OutOfRange(WqedError):
    """A scalar argument lies outside its documented domain."""

    code = "OUT_OF_RANGE"


class IoError(WqedError):
    """Reading input or writing output failed."""

    code = "IO"


class NumericalError(WqedError):
    """Base class for failures of the numerics rather than the inputs."""

    code = "NUMERICAL"
    exit_code = 2


class NonfiniteEntry(NumericalError):
    """A matrix entry evaluated to inf or nan."""

    code = "NONFINITE_ENTRY"


class SingularMatrix(NumericalError):
    """The non-Hermitian Hamiltonian is numerically singular.

    Physically this signals a dark state with zero total width sitting
    exactly at the drive frequency, for which the scattering amplitudes
    genuinely diverge.
    """

    code = "SINGULAR_MATRIX"


class DivisionByZero(NumericalError):
    """A closed-form expression divides by a vanishing quantity."""

    code = "DIVISION_BY_ZERO"

    def __init__(self, symbol: str, message: str | None = None):
        self.symbol = symbol
        super().__init__(message or f"division by zero: {symbol} vanishes")


class StepTooLarge(NumericalError):
    """The integrator cannot honor its step bound within the step budget."""

    code = "STEP_TOO_LARGE"
