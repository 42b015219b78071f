"""
Braid Words and Closed Braid Diagrams

Braid words on n strands are read bottom-to-top. Two words that differ by
commuting distant generators (relation B0) draw the same closed braid diagram;
a diagram is stored as the canonical representative of that class. The
braid-level moves B1-B4 act on diagrams and always return canonical results.
"""

import logging
import random
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import networkx as nx

from .errors import BraidParseError, MoveFormatError, PatternNotFoundError, locate

logger = logging.getLogger(__name__)

# Constants
VALID_SIGNS = (1, -1)
R3_DIRECTIONS = ('l', 'r')
# Move names of the CLI grammar and their argument counts
MOVE_KINDS = {
    'r2-insert': 3, 'r2-delete': 1, 'stab': 1, 'destab': 0, 'conj': 0, 'unconj': 1, 'r3': 2,
}

_NATURAL_RE = re.compile(r"\d+")
_SIGNED_RE = re.compile(r"-?\d+")


@dataclass(frozen=True)
class BraidLetter:
    """Generator sigma_column (sign +1) or its inverse (sign -1)"""
    column: int
    sign: int

    def __post_init__(self):
        if self.column < 1:
            raise ValueError(f"Braid letter column must be positive, got {self.column}")
        if self.sign not in VALID_SIGNS:
            raise ValueError(f"Braid letter sign must be one of {VALID_SIGNS}, got {self.sign}")

    @property
    def value(self) -> int:
        return self.column * self.sign


@dataclass(frozen=True)
class BraidWord:
    """
    A braid word on `strands` strands.

    Letters are listed bottom-to-top: the letter at height 1 is letters[0].
    """
    strands: int
    letters: Tuple[BraidLetter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'letters', tuple(self.letters))
        if self.strands < 1:
            raise ValueError(f"Strand count must be at least 1, got {self.strands}")
        for letter in self.letters:
            if letter.column > self.strands - 1:
                raise ValueError(
                    f"Column {letter.column} is out of range for {self.strands} strands"
                )

    @classmethod
    def from_values(cls, strands: int, values: Iterable[int]) -> 'BraidWord':
        """Build a word from signed integers, e.g. (3, -2, 1)."""
        return cls(strands, tuple(BraidLetter(abs(v), 1 if v > 0 else -1) for v in values))

    @property
    def values(self) -> Tuple[int, ...]:
        return tuple(letter.value for letter in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_braid(self)


@dataclass(frozen=True)
class ClosedBraidDiagram:
    """A closed braid diagram, stored as its B0-canonical word"""
    word: BraidWord

    def __post_init__(self):
        canonical = _canonical_letters(self.word)
        if canonical != self.word.letters:
            raise ValueError(f"Word '{self.word}' is not in B0 normal form")

    @property
    def strands(self) -> int:
        return self.word.strands

    @property
    def letters(self) -> Tuple[BraidLetter, ...]:
        return self.word.letters

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return format_braid(self.word)


# Braid moves. Heights of existing letters are 1-based positions in the
# canonical word; an R2 insertion height counts the letters left below the pair.

@dataclass(frozen=True)
class R2Insert:
    column: int
    height: int
    upper_sign: int


@dataclass(frozen=True)
class R2Delete:
    height: int


@dataclass(frozen=True)
class Stabilize:
    sign: int


@dataclass(frozen=True)
class Destabilize:
    pass


@dataclass(frozen=True)
class ConjugateRotate:
    pass


@dataclass(frozen=True)
class ConjugateUnrotate:
    """Move the top letter of `column` to the bottom; undoes ConjugateRotate."""
    column: int


@dataclass(frozen=True)
class R3:
    """
    Reidemeister III on the pattern whose lowest letter sits at `height`.

    Direction 'r' rewrites sigma_i sigma_{i+1} sigma_i as sigma_{i+1} sigma_i sigma_{i+1};
    direction 'l' rewrites sigma_i sigma_{i-1} sigma_i as sigma_{i-1} sigma_i sigma_{i-1}.
    All three letters carry the same sign.
    """
    height: int
    direction: str


BraidMoveSpec = Union[R2Insert, R2Delete, Stabilize, Destabilize, ConjugateRotate, ConjugateUnrotate, R3]


def parse_braid(text: str) -> BraidWord:
    """
    Parse braid text of the form `<n>: <signed integers>`.

    Args:
        text: e.g. "4: 3 -2 1 -2 1"; the empty word is "<n>:"

    Returns:
        The parsed BraidWord

    Raises:
        BraidParseError: If the text is malformed or a letter is out of range
    """
    head, separator, tail = text.partition(':')
    if not separator:
        raise BraidParseError("missing ':' after strand count", *locate(text, len(text)))

    strand_token = head.strip()
    strand_offset = len(head) - len(head.lstrip())
    if not _NATURAL_RE.fullmatch(strand_token):
        raise BraidParseError(
            f"strand count must be a decimal integer, got {strand_token!r}",
            *locate(text, strand_offset),
        )
    strands = int(strand_token)
    if strands < 1:
        raise BraidParseError("strand count must be at least 1", *locate(text, strand_offset))

    letters: List[BraidLetter] = []
    base = len(head) + 1
    for match in re.finditer(r"\S+", tail):
        token = match.group()
        where = locate(text, base + match.start())
        if not _SIGNED_RE.fullmatch(token):
            raise BraidParseError(f"malformed token {token!r}", *where)
        value = int(token)
        if value == 0:
            raise BraidParseError("zero is not a braid letter", *where)
        if abs(value) >= strands:
            raise BraidParseError(
                f"column {abs(value)} is out of range for {strands} strands", *where
            )
        letters.append(BraidLetter(abs(value), 1 if value > 0 else -1))

    return BraidWord(strands, tuple(letters))


def format_braid(word: BraidWord) -> str:
    """Inverse of parse_braid."""
    return f"{word.strands}:" + ''.join(f" {value}" for value in word.values)


def dependency_graph(columns: Sequence[int]) -> nx.DiGraph:
    """
    Order letters that do not commute under B0.

    Node k is the k-th letter; an edge i -> j (i < j) joins letters whose
    columns differ by at most one.
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(columns)))
    for j, upper in enumerate(columns):
        for i in range(j):
            if abs(columns[i] - upper) <= 1:
                graph.add_edge(i, j)
    return graph


def canonical_extension(graph: nx.DiGraph, columns: Dict) -> List:
    """Linear extension that always emits the available node of smallest column."""
    return list(nx.lexicographical_topological_sort(graph, key=lambda node: columns[node]))


def _canonical_letters(word: BraidWord) -> Tuple[BraidLetter, ...]:
    columns = [letter.column for letter in word.letters]
    graph = dependency_graph(columns)
    order = canonical_extension(graph, dict(enumerate(columns)))
    return tuple(word.letters[k] for k in order)


def b0_normal_form(word: BraidWord) -> ClosedBraidDiagram:
    """Canonical representative of the word under distant commutation."""
    return ClosedBraidDiagram(BraidWord(word.strands, _canonical_letters(word)))


def strand_permutation(word: BraidWord) -> Tuple[int, ...]:
    """Position (0-based) at the top of the strand that starts at each bottom position."""
    at_position = list(range(word.strands))
    for letter in word.letters:
        i = letter.column
        at_position[i - 1], at_position[i] = at_position[i], at_position[i - 1]
    end = [0] * word.strands
    for position, strand in enumerate(at_position):
        end[strand] = position
    return tuple(end)


def component_count(word: BraidWord) -> int:
    """Number of link components of the closure."""
    permutation = strand_permutation(word)
    seen = set()
    cycles = 0
    for start in range(len(permutation)):
        if start in seen:
            continue
        cycles += 1
        k = start
        while k not in seen:
            seen.add(k)
            k = permutation[k]
    return cycles


def _check_height(diagram: ClosedBraidDiagram, height: int) -> None:
    if not 1 <= height <= len(diagram):
        raise PatternNotFoundError(
            f"height {height} is out of range for a word of length {len(diagram)}"
        )


def check_sign(sign: int) -> None:
    if sign not in VALID_SIGNS:
        raise PatternNotFoundError(f"sign must be one of {VALID_SIGNS}, got {sign}")


def find_r2_partner(columns: Sequence[int], signs: Sequence[int], lower: int) -> int:
    """
    Index of the letter cancelling letters[lower], or raise PatternNotFoundError.

    The partner is the first letter above `lower` in the same or an adjacent
    column; it must share the column and carry the opposite sign.
    """
    column = columns[lower]
    for k in range(lower + 1, len(columns)):
        if abs(columns[k] - column) <= 1:
            if columns[k] == column and signs[k] == -signs[lower]:
                return k
            break
    raise PatternNotFoundError(f"no cancelling pair starts at height {lower + 1}")


def find_top_letter(columns: Sequence[int], column: int) -> int:
    """
    Index of the last letter in `column`, which must have no letter above it
    in the same or an adjacent column; otherwise raise PatternNotFoundError.
    """
    found = [k for k, c in enumerate(columns) if c == column]
    if not found:
        raise PatternNotFoundError(f"no letter in column {column}")
    top = found[-1]
    if any(abs(c - column) <= 1 for c in columns[top + 1:]):
        raise PatternNotFoundError(f"the last letter in column {column} has a letter above it")
    return top


def find_r3_pattern(
    columns: Sequence[int], signs: Sequence[int], lowest: int, direction: str, strands: int
) -> Tuple[int, int, int]:
    """
    Indices of the three letters of a Reidemeister III pattern starting at `lowest`.

    Raises:
        PatternNotFoundError: If the pattern is absent or interleaved
    """
    if direction not in R3_DIRECTIONS:
        raise PatternNotFoundError(f"R3 direction must be one of {R3_DIRECTIONS}, got {direction!r}")
    outer = columns[lowest]
    middle = outer + 1 if direction == 'r' else outer - 1
    if not 1 <= middle <= strands - 1:
        raise PatternNotFoundError(f"column {middle} does not exist for {strands} strands")
    low, high = min(outer, middle) - 1, max(outer, middle) + 1
    found = [lowest]
    for k in range(lowest + 1, len(columns)):
        if low <= columns[k] <= high:
            found.append(k)
            if len(found) == 3:
                break
    expected = (outer, middle, outer)
    if len(found) != 3 or any(
        columns[k] != c or signs[k] != signs[lowest] for k, c in zip(found, expected)
    ):
        raise PatternNotFoundError(
            f"no R3 pattern ({direction}) with lowest letter at height {lowest + 1}"
        )
    return found[0], found[1], found[2]


def apply_braid_move(diagram: ClosedBraidDiagram, move: BraidMoveSpec) -> ClosedBraidDiagram:
    """
    Apply one of the braid moves B1-B4 and re-canonicalize.

    Raises:
        PatternNotFoundError: If the move's pattern is not present
    """
    strands = diagram.strands
    letters = list(diagram.letters)
    columns = [letter.column for letter in letters]
    signs = [letter.sign for letter in letters]

    if isinstance(move, R2Insert):
        check_sign(move.upper_sign)
        if not 1 <= move.column <= strands - 1:
            raise PatternNotFoundError(f"column {move.column} does not exist for {strands} strands")
        if not 0 <= move.height <= len(letters):
            raise PatternNotFoundError(f"insertion height {move.height} is out of range")
        pair = [BraidLetter(move.column, -move.upper_sign), BraidLetter(move.column, move.upper_sign)]
        letters[move.height:move.height] = pair
    elif isinstance(move, R2Delete):
        _check_height(diagram, move.height)
        partner = find_r2_partner(columns, signs, move.height - 1)
        del letters[partner]
        del letters[move.height - 1]
    elif isinstance(move, Stabilize):
        check_sign(move.sign)
        letters.insert(0, BraidLetter(strands, move.sign))
        strands += 1
    elif isinstance(move, Destabilize):
        last = [k for k, column in enumerate(columns) if column == strands - 1]
        if strands < 2 or len(last) != 1:
            raise PatternNotFoundError(
                f"destabilization needs exactly one letter in column {strands - 1}"
            )
        del letters[last[0]]
        strands -= 1
    elif isinstance(move, ConjugateRotate):
        letters = letters[1:] + letters[:1]
    elif isinstance(move, ConjugateUnrotate):
        top = find_top_letter(columns, move.column)
        letters.insert(0, letters.pop(top))
    elif isinstance(move, R3):
        _check_height(diagram, move.height)
        indices = find_r3_pattern(columns, signs, move.height - 1, move.direction, strands)
        outer = columns[indices[0]]
        middle = columns[indices[1]]
        for k, column in zip(indices, (middle, outer, middle)):
            letters[k] = BraidLetter(column, signs[k])
    else:
        raise TypeError(f"Unknown braid move: {move!r}")

    result = b0_normal_form(BraidWord(strands, tuple(letters)))
    logger.debug("braid move %s: '%s' -> '%s'", move, diagram, result)
    return result


def is_applicable(diagram: ClosedBraidDiagram, move: BraidMoveSpec) -> bool:
    try:
        apply_braid_move(diagram, move)
    except PatternNotFoundError:
        return False
    return True


def applicable_moves(diagram: ClosedBraidDiagram) -> List[BraidMoveSpec]:
    """Every move that applies to the diagram, in a fixed order."""
    candidates: List[BraidMoveSpec] = []
    for column in range(1, diagram.strands):
        for height in range(len(diagram) + 1):
            for sign in VALID_SIGNS:
                candidates.append(R2Insert(column, height, sign))
    for height in range(1, len(diagram) + 1):
        candidates.append(R2Delete(height))
        for direction in R3_DIRECTIONS:
            candidates.append(R3(height, direction))
    candidates.extend(Stabilize(sign) for sign in VALID_SIGNS)
    candidates.append(Destabilize())
    if len(diagram):
        candidates.append(ConjugateRotate())
    candidates.extend(ConjugateUnrotate(column) for column in range(1, diagram.strands))
    return [move for move in candidates if is_applicable(diagram, move)]


def random_braid(rng: random.Random, max_strands: int, max_crossings: int) -> ClosedBraidDiagram:
    """Seeded random diagram with at most the given strands and crossings."""
    strands = rng.randint(1, max_strands)
    crossings = rng.randint(0, max_crossings) if strands > 1 else 0
    values = [
        rng.randint(1, strands - 1) * rng.choice(VALID_SIGNS) for _ in range(crossings)
    ]
    return b0_normal_form(BraidWord.from_values(strands, values))


def parse_move(text: str) -> BraidMoveSpec:
    """
    Parse a CLI move string.

    Grammar: r2-insert:<col>:<height>:<+|->, r2-delete:<height>, stab:<+|->,
    destab, conj, unconj:<col>, r3:<height>:<l|r>.

    Raises:
        MoveFormatError: If the string does not match any move
    """
    parts = text.strip().split(':')
    kind, arguments = parts[0], parts[1:]

    def number(token: str) -> int:
        if not _NATURAL_RE.fullmatch(token):
            raise MoveFormatError(f"expected a non-negative integer, got {token!r}", 1, text.find(token) + 1)
        return int(token)

    def sign(token: str) -> int:
        if token not in ('+', '-'):
            raise MoveFormatError(f"expected '+' or '-', got {token!r}", 1, text.find(token) + 1)
        return 1 if token == '+' else -1

    if kind not in MOVE_KINDS:
        raise MoveFormatError(f"unknown move {kind!r}", 1, 1)
    if len(arguments) != MOVE_KINDS[kind]:
        raise MoveFormatError(f"move {kind!r} takes {MOVE_KINDS[kind]} argument(s)", 1, len(kind) + 1)

    if kind == 'r2-insert':
        return R2Insert(number(arguments[0]), number(arguments[1]), sign(arguments[2]))
    if kind == 'r2-delete':
        return R2Delete(number(arguments[0]))
    if kind == 'stab':
        return Stabilize(sign(arguments[0]))
    if kind == 'destab':
        return Destabilize()
    if kind == 'conj':
        return ConjugateRotate()
    if kind == 'unconj':
        return ConjugateUnrotate(number(arguments[0]))
    if arguments[1] not in R3_DIRECTIONS:
        raise MoveFormatError(f"expected 'l' or 'r', got {arguments[1]!r}", 1, text.rfind(':') + 2)
    return R3(number(arguments[0]), arguments[1])


def format_move(move: BraidMoveSpec) -> str:
    """Inverse of parse_move."""
    def sign(value: int) -> str:
        return '+' if value > 0 else '-'

    if isinstance(move, R2Insert):
        return f"r2-insert:{move.column}:{move.height}:{sign(move.upper_sign)}"
    if isinstance(move, R2Delete):
        return f"r2-delete:{move.height}"
    if isinstance(move, Stabilize):
        return f"stab:{sign(move.sign)}"
    if isinstance(move, Destabilize):
        return "destab"
    if isinstance(move, ConjugateRotate):
        return "conj"
    if isinstance(move, ConjugateUnrotate):
        return f"unconj:{move.column}"
    return f"r3:{move.height}:{move.direction}"
