"""
Laundry Order and Linking Matrices

The laundry surface of a closed braid diagram has one cycle per Seifert circle
and one per crossing band. Listed in laundry order, the linking numbers of
their double push-offs form the linking matrix M(L). The matrix is determined
by two local rules:

    L1  a band in column i links C_i with -1 and C_{i+1} with +1
    L2  bands in adjacent columns link with 1 when the left band is above the
        right band, and 0 otherwise

encode and decode are mutually inverse on diagrams and valid matrices.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from .braid_core import (
    BraidLetter,
    BraidWord,
    ClosedBraidDiagram,
    b0_normal_form,
    canonical_extension,
)
from .errors import InvalidMatrixError, MatrixFormatError

logger = logging.getLogger(__name__)

# Entries must fit the int64 storage of IntegerMatrix
ENTRY_BOUNDS = (int(np.iinfo(np.int64).min), int(np.iinfo(np.int64).max))


class IntegerMatrix:
    """Immutable square integer matrix backed by a read-only numpy array."""

    __slots__ = ('_array',)

    def __init__(self, rows):
        array = np.array(rows, dtype=np.int64)
        if array.size == 0:
            array = array.reshape(0, 0)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ValueError(f"Matrix must be square, got shape {array.shape}")
        array.setflags(write=False)
        self._array = array

    @property
    def array(self) -> np.ndarray:
        return self._array

    @property
    def size(self) -> int:
        return self._array.shape[0]

    def __getitem__(self, key) -> int:
        return int(self._array[key])

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return np.array_equal(self._array, other._array)

    def __hash__(self) -> int:
        return hash((self.size, self._array.tobytes()))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.tolist()!r})"

    def tolist(self) -> List[List[int]]:
        return self._array.tolist()

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self._array, self._array.T))

    def without_last(self) -> np.ndarray:
        """Copy with the last row and column removed."""
        return self._array[:-1, :-1].copy()


class LinkingMatrix(IntegerMatrix):
    """M(L), rows and columns in laundry order"""
    __slots__ = ()


@dataclass(frozen=True, order=True)
class Circle:
    """Cycle through the band of Seifert circle C_index"""
    index: int


@dataclass(frozen=True)
class Band:
    """Cycle through the twisted band at a crossing"""
    height: Union[int, Fraction]
    column: int
    sign: int = 1


CycleLabel = Union[Circle, Band]


@dataclass(frozen=True)
class LaundryOrder:
    labels: Tuple[CycleLabel, ...]

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[CycleLabel]:
        return iter(self.labels)

    def __getitem__(self, k: int) -> CycleLabel:
        return self.labels[k]

    @property
    def strands(self) -> int:
        return sum(1 for label in self.labels if isinstance(label, Circle))

    def position(self, label: CycleLabel) -> int:
        return self.labels.index(label)

    def band_positions(self) -> List[int]:
        return [k for k, label in enumerate(self.labels) if isinstance(label, Band)]

    def circle_position(self, index: int) -> int:
        return self.labels.index(Circle(index))


@dataclass(frozen=True)
class ValidityReport:
    violations: Tuple[str, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations


def home_circle(column: int) -> int:
    """Even circle carrying the first feet of the bands in a column."""
    return column if column % 2 == 0 else column + 1


def second_circle(column: int) -> int:
    """Odd circle carrying the second feet of the bands in a column."""
    return column if column % 2 == 1 else column + 1


def even_circles(strands: int) -> range:
    return range(2, strands + 1, 2)


def odd_circles(strands: int) -> range:
    """Odd circles in decreasing order, ending with C_1."""
    return range(strands if strands % 2 else strands - 1, 0, -2)


def laundry_key(label: CycleLabel, strands: int) -> Tuple:
    """Sort key realizing laundry order for the labels of a diagram."""
    if isinstance(label, Circle):
        if label.index % 2 == 0:
            return (0, label.index, 0, 0)
        return (1, strands - label.index, 0, 0)
    return (0, home_circle(label.column), 1, label.height)


def sort_laundry(labels: Sequence[CycleLabel], strands: int) -> LaundryOrder:
    return LaundryOrder(tuple(sorted(labels, key=lambda label: laundry_key(label, strands))))


def diagram_labels(diagram: ClosedBraidDiagram) -> List[CycleLabel]:
    labels: List[CycleLabel] = [Circle(i) for i in range(1, diagram.strands + 1)]
    labels.extend(
        Band(height, letter.column, letter.sign)
        for height, letter in enumerate(diagram.letters, 1)
    )
    return labels


def laundry_order(diagram: ClosedBraidDiagram) -> LaundryOrder:
    """
    Even circles ascending, each followed by the bands whose first foot it
    carries (by increasing height), then the odd circles descending.
    """
    return sort_laundry(diagram_labels(diagram), diagram.strands)


def laundry_feet(diagram: ClosedBraidDiagram) -> Tuple[Tuple[CycleLabel, ...], Tuple[CycleLabel, ...]]:
    """
    Band feet in laundry order, split into the even-circle half and the
    odd-circle half: (u_2 f_2 v_2 u_4 f_4 v_4 ...) and (... u_3 s_3 v_3 u_1 s_1 v_1).

    Each cycle label appears once per foot.
    """
    order = laundry_order(diagram)
    bands = [label for label in order if isinstance(label, Band)]
    first: List[CycleLabel] = []
    for even in even_circles(diagram.strands):
        first.append(Circle(even))
        first.extend(band for band in bands if home_circle(band.column) == even)
        first.append(Circle(even))
    second: List[CycleLabel] = []
    for odd in odd_circles(diagram.strands):
        second.append(Circle(odd))
        carried = [band for band in bands if second_circle(band.column) == odd]
        second.extend(sorted(carried, key=lambda band: band.height, reverse=True))
        second.append(Circle(odd))
    return tuple(first), tuple(second)


def l1_entries(column: int) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    """(circle, entry) pairs a band in the given column has under L1."""
    return (column, -1), (column + 1, 1)


def band_entry(first: Band, second: Band) -> int:
    """L2 entry for a pair of bands; same and distant columns give 0."""
    if abs(first.column - second.column) != 1:
        return 0
    left, right = (first, second) if first.column < second.column else (second, first)
    return 1 if left.height > right.height else 0


def matrix_for(order: LaundryOrder) -> np.ndarray:
    """Fill a matrix over the order from the diagonal, L1 and L2 rules."""
    size = len(order)
    array = np.zeros((size, size), dtype=np.int64)
    bands = order.band_positions()
    for k in bands:
        band = order[k]
        array[k, k] = band.sign
        for circle, value in l1_entries(band.column):
            c = order.circle_position(circle)
            array[k, c] = array[c, k] = value
    for i, k in enumerate(bands):
        for j in bands[i + 1:]:
            array[k, j] = array[j, k] = band_entry(order[k], order[j])
    return array


def encode(diagram: ClosedBraidDiagram) -> LinkingMatrix:
    """Linking matrix M(L) of a closed braid diagram."""
    order = laundry_order(diagram)
    logger.debug("laundry order of '%s': %s", diagram, order.labels)
    return LinkingMatrix(matrix_for(order))


@dataclass
class _Analysis:
    strands: int
    circle_of_row: Dict[int, int]
    column_of_row: Dict[int, int]
    heights_graph: nx.DiGraph


def _l1_column(entries: Dict[int, int]) -> Optional[int]:
    if len(entries) != 2:
        return None
    left = min(entries)
    if entries == {left: -1, left + 1: 1}:
        return left
    return None


def _analyze(matrix: IntegerMatrix) -> Tuple[Optional[_Analysis], List[str]]:
    array = matrix.array
    size = matrix.size
    violations: List[str] = []
    if size == 0:
        return None, ["empty matrix has no circle rows"]
    if not matrix.is_symmetric():
        violations.append("matrix is not symmetric")

    diagonal = array.diagonal()
    for k in range(size):
        if diagonal[k] not in (-1, 0, 1):
            violations.append(f"diagonal entry in row {k + 1} is not -1, 0 or 1")
    circle_rows = [k for k in range(size) if diagonal[k] == 0]
    band_rows = [k for k in range(size) if diagonal[k] != 0]
    if not circle_rows:
        violations.append("no circle rows (zero diagonal entries)")
    if violations:
        return None, violations

    strands = len(circle_rows)
    evens = strands // 2
    circle_of_row = {row: 2 * (k + 1) for k, row in enumerate(circle_rows[:evens])}
    odd_rows = circle_rows[evens:]
    circle_of_row.update(zip(odd_rows, odd_circles(strands)))
    if odd_rows != list(range(size - len(odd_rows), size)):
        violations.append("odd circle rows must close the laundry order")
    if evens and circle_rows[0] != 0:
        violations.append("laundry order must open with circle C_2")

    for i, r in enumerate(circle_rows):
        for s in circle_rows[i + 1:]:
            if array[r, s] != 0:
                violations.append(f"circle rows {r + 1} and {s + 1} have a nonzero entry")

    column_of_row: Dict[int, int] = {}
    for row in band_rows:
        entries = {circle_of_row[c]: int(array[row, c]) for c in circle_rows if array[row, c] != 0}
        column = _l1_column(entries)
        if column is None:
            violations.append(f"band in row {row + 1} violates L1 (circle entries {entries})")
            continue
        column_of_row[row] = column
        block = [c for c in circle_rows[:evens] if c < row]
        if not block or circle_of_row[block[-1]] != home_circle(column):
            violations.append(
                f"band in row {row + 1} lies outside the block of circle C_{home_circle(column)}"
            )

    # Edge u -> v: band u sits below band v.
    graph = nx.DiGraph()
    graph.add_nodes_from(column_of_row)
    rows = sorted(column_of_row)
    for i, r in enumerate(rows):
        for s in rows[i + 1:]:
            value = array[r, s]
            cr, cs = column_of_row[r], column_of_row[s]
            if value not in (0, 1):
                violations.append(f"band rows {r + 1} and {s + 1} have entry {value} (L2 allows 0 or 1)")
                continue
            if home_circle(cr) == home_circle(cs):
                graph.add_edge(r, s)
            if abs(cr - cs) != 1:
                if value != 0:
                    violations.append(
                        f"band rows {r + 1} and {s + 1} are not in adjacent columns but have entry 1"
                    )
                continue
            left, right = (r, s) if cr < cs else (s, r)
            if value == 1:
                graph.add_edge(right, left)
            else:
                graph.add_edge(left, right)
    if not nx.is_directed_acyclic_graph(graph):
        violations.append("L2 entries and block order give cyclic height constraints")

    if array[circle_rows].sum(axis=0).any():
        violations.append("circle rows do not sum to zero")

    return _Analysis(strands, circle_of_row, column_of_row, graph), violations


def validate(matrix: IntegerMatrix) -> ValidityReport:
    """Check every linking-matrix rule; violations are reported, not raised."""
    _, violations = _analyze(matrix)
    return ValidityReport(tuple(violations))


def matrix_layout(matrix: IntegerMatrix) -> LaundryOrder:
    """
    Read the cycle labels of a valid matrix: circle indices from the zero
    diagonal, band columns from L1, band heights from the canonical linear
    extension of the L2 and block constraints.

    Raises:
        InvalidMatrixError: If the matrix fails validate
    """
    analysis, violations = _analyze(matrix)
    if violations or analysis is None:
        raise InvalidMatrixError(violations)
    ordered = canonical_extension(analysis.heights_graph, analysis.column_of_row)
    height_of_row = {row: height for height, row in enumerate(ordered, 1)}
    labels: List[CycleLabel] = []
    for row in range(matrix.size):
        if row in analysis.circle_of_row:
            labels.append(Circle(analysis.circle_of_row[row]))
        else:
            labels.append(Band(height_of_row[row], analysis.column_of_row[row], matrix[row, row]))
    return LaundryOrder(tuple(labels))


def decode(matrix: IntegerMatrix) -> ClosedBraidDiagram:
    """
    Recover the closed braid diagram of a linking matrix.

    Raises:
        InvalidMatrixError: If the matrix fails validate
    """
    layout = matrix_layout(matrix)
    bands = sorted((label for label in layout if isinstance(label, Band)), key=lambda b: b.height)
    word = BraidWord(layout.strands, tuple(BraidLetter(b.column, b.sign) for b in bands))
    return b0_normal_form(word)


def format_matrix(matrix: IntegerMatrix) -> str:
    """Matrix text format: the size, then one line per row."""
    lines = [str(matrix.size)]
    lines.extend(' '.join(str(value) for value in row) for row in matrix.tolist())
    return '\n'.join(lines)


def parse_matrix(text: str) -> IntegerMatrix:
    """
    Parse the matrix text format.

    Raises:
        MatrixFormatError: If the size line, a row length or an entry is malformed,
            or an entry is out of the 64-bit range
    """
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise MatrixFormatError("missing size line", 1, 1)
    size_token = lines[0].strip()
    if not re.fullmatch(r"\d+", size_token):
        raise MatrixFormatError(f"size must be a non-negative integer, got {size_token!r}", 1, 1)
    size = int(size_token)
    if len(lines) - 1 != size:
        raise MatrixFormatError(f"expected {size} rows, found {len(lines) - 1}", len(lines), 1)

    rows = []
    for number, line in enumerate(lines[1:], 2):
        tokens = list(re.finditer(r"\S+", line))
        if len(tokens) != size:
            raise MatrixFormatError(f"expected {size} entries, found {len(tokens)}", number, 1)
        row = []
        for match in tokens:
            if not re.fullmatch(r"-?\d+", match.group()):
                raise MatrixFormatError(f"malformed entry {match.group()!r}", number, match.start() + 1)
            value = int(match.group())
            if not ENTRY_BOUNDS[0] <= value <= ENTRY_BOUNDS[1]:
                raise MatrixFormatError(
                    f"entry {match.group()!r} does not fit a 64-bit integer", number, match.start() + 1
                )
            row.append(value)
        rows.append(row)
    return IntegerMatrix(rows)
