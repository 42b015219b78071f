"""
Command-line interface

Each subcommand reads one input (a literal argument, a file path, or `-` for
standard input), writes its result to standard output in the text formats of
the library, and reports errors on standard error:

    exit 0  success
    exit 1  invalid input or inapplicable move
    exit 2  internal verification failure
"""

import argparse
import logging
import os
import sys
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, TextIO

from . import __version__, config
from .braid_core import ClosedBraidDiagram, apply_braid_move, b0_normal_form, parse_braid, parse_move
from .errors import InputFormatError, InternalVerificationError, LaundryError
from .forms import VALID_CONVERSIONS, forms_of, restore_m_from_gl
from .fuzz import fuzz
from .invariants import invariants_of
from .laundry_model import (
    CircleWithChords,
    certificate_for,
    circle_with_chords,
    format_chords,
    interior_first_edges,
    overlap_graph,
    remove_chords,
    render_svg,
)
from .linking_matrix import decode, encode, format_matrix, parse_matrix, validate
from .moves import apply_matrix_move, matrix_spec_for

logger = logging.getLogger(__name__)

MOVE_LEVELS = ('braid', 'matrix')


class UsageError(LaundryError):
    """Command line does not match the subcommand grammar"""
    pass


class InvalidInput(LaundryError):
    """A well-formed input that fails a check"""
    pass


class FuzzFailure(InternalVerificationError):
    """A fuzz run with failing cases; carries the full report"""
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class CommandConfig:
    command: str
    source: Optional[str] = None
    out: Optional[str] = None
    to: Optional[str] = None
    move: Optional[str] = None
    level: str = 'braid'
    seed: Optional[int] = None
    cases: int = config.FUZZ_CASES
    workers: int = config.FUZZ_WORKERS
    remove_twisted: bool = False


def read_input(source: str, stdin: TextIO) -> str:
    """
    The text of `-` (stdin), an existing file, or the argument itself.

    Raises:
        InputFormatError: If stdin or the file is not valid UTF-8, located at
            the first undecodable byte
    """
    try:
        if source == '-':
            return stdin.read()
        if os.path.isfile(source):
            with open(source, encoding='utf-8') as handle:
                return handle.read()
    except UnicodeDecodeError as e:
        data = bytes(e.object)
        line = data.count(b"\n", 0, e.start) + 1
        column = e.start - (data.rfind(b"\n", 0, e.start) + 1) + 1
        raise InputFormatError("input is not valid UTF-8 text", line, column) from e
    return source


def _diagram(text: str) -> ClosedBraidDiagram:
    return b0_normal_form(parse_braid(text))


def _chords(command: CommandConfig, text: str) -> CircleWithChords:
    chords = circle_with_chords(_diagram(text))
    if command.remove_twisted:
        chords = remove_chords(chords, chords.twisted)
    return chords


def cmd_encode(command: CommandConfig, text: str) -> str:
    return format_matrix(encode(_diagram(text)))


def cmd_decode(command: CommandConfig, text: str) -> str:
    return str(decode(parse_matrix(text)))


def cmd_validate(command: CommandConfig, text: str) -> str:
    report = validate(parse_matrix(text))
    if not report.valid:
        raise InvalidInput("\n".join(report.violations))
    return "valid"


def cmd_convert(command: CommandConfig, text: str) -> str:
    return format_matrix(forms_of(_diagram(text))[command.to])


def cmd_restore(command: CommandConfig, text: str) -> str:
    return format_matrix(restore_m_from_gl(parse_matrix(text)))


def cmd_move(command: CommandConfig, text: str) -> str:
    move = parse_move(command.move)
    if command.level == 'braid':
        return str(apply_braid_move(_diagram(text), move))
    matrix = parse_matrix(text)
    moved, witness = apply_matrix_move(matrix, matrix_spec_for(matrix, move))
    logger.debug("witness: %s", witness)
    return format_matrix(moved)


def cmd_invariants(command: CommandConfig, text: str) -> str:
    return invariants_of(_diagram(text)).format()


def _edge(edge) -> str:
    return f"{edge[0]}{edge[1]}"


def cmd_gauss(command: CommandConfig, text: str) -> str:
    chords = _chords(command, text)
    overlap = overlap_graph(chords)
    return "\n".join([
        format_chords(chords),
        " ".join(["overlap"] + [f"{i}-{j}" for i, j in overlap.edges]),
        " ".join(["interior"] + [_edge(edge) for edge in interior_first_edges(chords)]),
    ])


def cmd_svg(command: CommandConfig, text: str) -> str:
    document = render_svg(_chords(command, text))
    if command.out is None:
        return document
    with open(command.out, 'w') as handle:
        handle.write(document + "\n")
    return f"wrote {command.out}"


def cmd_roundtrip(command: CommandConfig, text: str) -> str:
    diagram = _diagram(text)
    if decode(encode(diagram)) != diagram:
        raise InternalVerificationError(f"decode(encode('{diagram}')) differs")
    return "ok"


def cmd_fuzz(command: CommandConfig, text: str) -> str:
    report = fuzz(command.seed, command.cases, command.workers)
    if report.failed:
        raise FuzzFailure(report.format())
    return report.format()


def cmd_certificate(command: CommandConfig, text: str) -> str:
    result = certificate_for(_diagram(text))
    turns = " ".join(["turns"] + [f"{_edge(edge)}={value}" for edge, value in result.turns.values])
    return "\n".join([format_chords(result.chords), format_matrix(result.matrix), turns])


COMMANDS: Dict[str, Callable[[CommandConfig, str], str]] = {
    'encode': cmd_encode,
    'decode': cmd_decode,
    'validate': cmd_validate,
    'convert': cmd_convert,
    'restore': cmd_restore,
    'move': cmd_move,
    'invariants': cmd_invariants,
    'gauss': cmd_gauss,
    'svg': cmd_svg,
    'roundtrip': cmd_roundtrip,
    'fuzz': cmd_fuzz,
    'certificate': cmd_certificate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='laundry', description="Braid diagrams as laundry-surface linking matrices")
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)

    for name in ('encode', 'decode', 'validate', 'restore', 'invariants', 'roundtrip', 'certificate'):
        commands.add_parser(name).add_argument('source')

    convert = commands.add_parser('convert')
    convert.add_argument('--to', required=True, choices=VALID_CONVERSIONS)
    convert.add_argument('source')

    move = commands.add_parser('move')
    move.add_argument('--move', required=True)
    move.add_argument('--level', default='braid', choices=MOVE_LEVELS)
    move.add_argument('source')

    for name in ('gauss', 'svg'):
        sub = commands.add_parser(name)
        sub.add_argument('--remove-twisted', action='store_true')
        sub.add_argument('source')
    commands.choices['svg'].add_argument('--out')

    fuzzer = commands.add_parser('fuzz')
    fuzzer.add_argument('--seed', required=True, type=int)
    fuzzer.add_argument('--cases', type=int, default=config.FUZZ_CASES)
    fuzzer.add_argument('--workers', type=int, default=config.FUZZ_WORKERS)
    return parser


def parse_args(argv: Sequence[str]) -> CommandConfig:
    """
    Raises:
        UsageError: If the arguments do not match a subcommand
    """
    arguments = vars(build_parser().parse_args(list(argv)))
    return CommandConfig(**{key: value for key, value in arguments.items() if value is not None})


def run(
    argv: Optional[Sequence[str]] = None,
    stdin: Optional[TextIO] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    """Run one subcommand and return its exit code."""
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    logging.basicConfig(level=config.LOG_LEVEL, stream=stderr)

    try:
        command = parse_args(sys.argv[1:] if argv is None else argv)
        text = read_input(command.source, stdin) if command.source is not None else ""
        output = COMMANDS[command.command](command, text)
    except InputFormatError as e:
        stderr.write(f"error: {e.describe()}\n")
        return 1
    except FuzzFailure as e:
        stdout.write(f"{e}\n")
        return 2
    except InternalVerificationError as e:
        logger.error("internal verification failed: %s", e)
        stderr.write(f"error: {e}\n")
        return 2
    except (LaundryError, OSError) as e:
        stderr.write(f"error: {e}\n")
        return 1

    stdout.write(f"{output}\n")
    return 0


def main() -> None:
    sys.exit(run())
