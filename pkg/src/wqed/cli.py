"""Command-line front end.

    wqed run <scenario.toml> [--output PATH] [--threads N]
    wqed run --preset NAME [--output PATH] [--threads N]

The result table goes to --output or stdout; diagnostics go to stderr as
structured lines "WARN <code> <message>" or "ERROR <code> <message>".  Exit
status: 0 on success, 1 for input or validation problems, 2 for numerical
failures.
"""

from __future__ import annotations

import argparse
import os
import sys

from .errors import IoError, ValidationError, WqedError
from .runner import run_scenario
from .scenario import load_preset, parse_scenario, preset_names
from .table import emit_table
from .version import __version__


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wqed",
        description="Scattering and ground-state dynamics of waveguide-coupled emitters.",
    )
    parser.add_argument("--version", action="version", version=f"wqed {__version__}")
    sub = parser.add_subparsers(dest="command")
    run = sub.add_parser("run", help="run a scenario file or preset")
    run.add_argument("scenario", nargs="?", help="path to a scenario TOML file")
    run.add_argument("--preset", help=f"bundled scenario ({', '.join(preset_names())})")
    run.add_argument("--output", "-o", help="write the table here instead of stdout")
    run.add_argument("--threads", type=int, default=1, help="grid evaluation threads")
    return parser


def _error(code: str, message: str) -> None:
    print(f"ERROR {code} {message}", file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed its own message; keep exit 0 for --help
        # and fold usage errors into the validation exit status.
        return 0 if exc.code in (0, None) else 1

    if args.command != "run":
        parser.print_usage(sys.stderr)
        _error("USAGE", "expected the 'run' command")
        return 1

    try:
        if (args.scenario is None) == (args.preset is None):
            raise ValidationError("give exactly one of a scenario file or --preset")
        if args.preset is not None:
            scenario = load_preset(args.preset)
        else:
            try:
                with open(args.scenario, "r", encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise IoError(f"cannot read {args.scenario!r}: {exc}") from exc
            scenario = parse_scenario(text)

        table = run_scenario(scenario, threads=args.threads)
        payload = emit_table(table)
        for line in table.diagnostics:
            print(line, file=sys.stderr)
        if args.output:
            try:
                with open(args.output, "wb") as fh:
                    fh.write(payload)
            except OSError as exc:
                raise IoError(f"cannot write {args.output!r}: {exc}") from exc
        else:
            sys.stdout.buffer.write(payload)
            sys.stdout.buffer.flush()
        return 0
    except BrokenPipeError:
        # The consumer of stdout went away (e.g. piped into head).  Redirect
        # stdout at the descriptor level so the interpreter's exit flush does
        # not raise a second time, and exit quietly.
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return 0
    except WqedError as exc:
        for diagnostic in getattr(exc, "diagnostics", ()):
            _error(exc.code, diagnostic)
        _error(exc.code, str(exc))
        return exc.exit_code
    except Exception as exc:  # pragma: no cover - defensive
        _error("INTERNAL", f"{type(exc).__name__}: {exc}")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
