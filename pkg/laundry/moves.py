"""
Matrix Moves M1-M4

Each braid move has a matrix counterpart acting directly on the linking
matrix:

    M1  add or delete a cancelling pair of bands (Reidemeister II)
    M2  add or delete a band together with a new last circle (Markov)
    M3  slide the lowest band over C_i and C_{i+1} to the top (conjugation),
        cycle equation X_1 - X_2 = C_i + C_{i+1}; the inverse slides a top
        band back to the bottom
    M4  slide a band over two others (Reidemeister III),
        cycle equation X_1 + X_4 = X_2 + X_3

M1 and M2 change the matrix size and are carried out as surgery on rows and
columns. M3 and M4 keep the size and return a unimodular witness P with
P^T M P equal to the output.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

import numpy as np
import sympy

from .braid_core import (
    BraidMoveSpec,
    ClosedBraidDiagram,
    ConjugateRotate,
    ConjugateUnrotate,
    Destabilize,
    R2Delete,
    R2Insert,
    R3,
    Stabilize,
    apply_braid_move,
    check_sign,
    find_r2_partner,
    find_r3_pattern,
    find_top_letter,
)
from .errors import InternalVerificationError, PatternNotFoundError
from .forms import GLForm, gl_form, restore_m_from_gl
from .linking_matrix import (
    Band,
    Circle,
    CycleLabel,
    IntegerMatrix,
    LaundryOrder,
    LinkingMatrix,
    band_entry,
    encode,
    l1_entries,
    laundry_key,
    matrix_layout,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class M1Insert:
    column: int
    height: int
    upper_sign: int


@dataclass(frozen=True)
class M1Delete:
    """Delete the cancelling bands in the given matrix rows (1-based)."""
    lower_row: int
    upper_row: int


@dataclass(frozen=True)
class M2Stabilize:
    sign: int


@dataclass(frozen=True)
class M2Destabilize:
    pass


@dataclass(frozen=True)
class M3Conjugate:
    pass


@dataclass(frozen=True)
class M3Unconjugate:
    """Slide the top band of `column` to the bottom; undoes M3Conjugate."""
    column: int


@dataclass(frozen=True)
class M4:
    height: int
    direction: str


MatrixMoveSpec = Union[
    M1Insert, M1Delete, M2Stabilize, M2Destabilize, M3Conjugate, M3Unconjugate, M4,
]


@dataclass(frozen=True)
class UnimodularWitness:
    """P with det P = +-1 relating a matrix A to B = P^T A P"""
    matrix: IntegerMatrix

    def transform(self, source: IntegerMatrix) -> np.ndarray:
        p = self.matrix.array
        return p.T @ source.array @ p

    def verify(self, source: IntegerMatrix, target: IntegerMatrix) -> bool:
        return is_unimodular(self.matrix) and np.array_equal(self.transform(source), target.array)


def is_unimodular(matrix) -> bool:
    """
    Exact integer determinant test for det = +-1.

    Raises:
        ValueError: If the matrix is not square
    """
    array = matrix.array if isinstance(matrix, IntegerMatrix) else np.asarray(matrix, dtype=np.int64)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise ValueError(f"Unimodularity needs a square matrix, got shape {array.shape}")
    if array.shape[0] == 0:
        return True
    return abs(sympy.Matrix(array.tolist()).det(method='bareiss')) == 1


def _entry(first: CycleLabel, second: CycleLabel) -> int:
    """Off-diagonal linking entry between two distinct cycles, by L1 and L2."""
    if isinstance(first, Circle) and isinstance(second, Circle):
        return 0
    if isinstance(first, Band) and isinstance(second, Band):
        return band_entry(first, second)
    band, circle = (first, second) if isinstance(first, Band) else (second, first)
    return dict(l1_entries(band.column)).get(circle.index, 0)


def _surgery(
    array: np.ndarray,
    labels: Sequence[CycleLabel],
    removed: Set[int],
    added: Sequence[CycleLabel],
    strands: int,
) -> np.ndarray:
    """
    Delete the rows in `removed`, add rows for `added`, and restore laundry
    order. Surviving entries are copied; new entries follow L1 and L2.
    """
    entries: List[Tuple[CycleLabel, Optional[int]]] = [
        (label, k) for k, label in enumerate(labels) if k not in removed
    ]
    entries.extend((label, None) for label in added)
    entries.sort(key=lambda entry: laundry_key(entry[0], strands))

    size = len(entries)
    result = np.zeros((size, size), dtype=np.int64)
    for i, (label, old_i) in enumerate(entries):
        for j, (other, old_j) in enumerate(entries):
            if old_i is not None and old_j is not None:
                result[i, j] = array[old_i, old_j]
            elif i == j:
                result[i, j] = label.sign if isinstance(label, Band) else 0
            else:
                result[i, j] = _entry(label, other)
    return result


def _congruence(
    labels: Sequence[CycleLabel],
    removed: Set[int],
    replacements: Dict[CycleLabel, Dict[int, int]],
    strands: int,
) -> Tuple[List[CycleLabel], np.ndarray]:
    """
    Build P for a change of basis.

    `replacements` maps each new label to its coordinates in the old basis;
    old labels outside `removed` are kept. Columns of P follow the new
    laundry order.
    """
    kept = {label: {k: 1} for k, label in enumerate(labels) if k not in removed}
    vectors = {**kept, **replacements}
    new_labels = sorted(vectors, key=lambda label: laundry_key(label, strands))
    p = np.zeros((len(labels), len(new_labels)), dtype=np.int64)
    for column, label in enumerate(new_labels):
        for row, value in vectors[label].items():
            p[row, column] += value
    return new_labels, p


def _bands_by_height(layout: LaundryOrder) -> List[Tuple[int, Band]]:
    rows = [(k, label) for k, label in enumerate(layout) if isinstance(label, Band)]
    return sorted(rows, key=lambda item: item[1].height)


def _checked(
    matrix: IntegerMatrix,
    witness_array: np.ndarray,
    surgery: np.ndarray,
) -> Tuple[LinkingMatrix, UnimodularWitness]:
    witness = UnimodularWitness(IntegerMatrix(witness_array))
    output = LinkingMatrix(witness.transform(matrix))
    if not is_unimodular(witness.matrix) or output.array.shape != surgery.shape \
            or not np.array_equal(output.array, surgery):
        logger.error("witness check failed")
        raise InternalVerificationError("congruence witness does not produce the moved matrix")
    return output, witness


def _conjugate(matrix: IntegerMatrix, layout: LaundryOrder) -> Tuple[LinkingMatrix, UnimodularWitness]:
    strands = layout.strands
    bands = _bands_by_height(layout)
    if not bands:
        return LinkingMatrix(matrix.array), UnimodularWitness(IntegerMatrix(np.eye(matrix.size, dtype=np.int64)))
    row, lowest = bands[0]
    top = Band(bands[-1][1].height + 1, lowest.column, lowest.sign)
    # X_2 = X_1 - C_i - C_{i+1}
    vector = {
        row: 1,
        layout.circle_position(lowest.column): -1,
        layout.circle_position(lowest.column + 1): -1,
    }
    _, p = _congruence(list(layout), {row}, {top: vector}, strands)
    surgery = _surgery(matrix.array, list(layout), {row}, [top], strands)
    return _checked(matrix, p, surgery)


def _unconjugate(
    matrix: IntegerMatrix, layout: LaundryOrder, move: M3Unconjugate
) -> Tuple[LinkingMatrix, UnimodularWitness]:
    strands = layout.strands
    bands = _bands_by_height(layout)
    if not 1 <= move.column <= strands - 1:
        raise PatternNotFoundError(f"column {move.column} does not exist for {strands} strands")
    top = find_top_letter([band.column for _, band in bands], move.column)
    row, highest = bands[top]
    bottom = Band(0, highest.column, highest.sign)
    # X_1 = X_2 + C_i + C_{i+1}
    vector = {
        row: 1,
        layout.circle_position(highest.column): 1,
        layout.circle_position(highest.column + 1): 1,
    }
    _, p = _congruence(list(layout), {row}, {bottom: vector}, strands)
    surgery = _surgery(matrix.array, list(layout), {row}, [bottom], strands)
    return _checked(matrix, p, surgery)


def _reidemeister_three(
    matrix: IntegerMatrix, layout: LaundryOrder, move: M4
) -> Tuple[LinkingMatrix, UnimodularWitness]:
    strands = layout.strands
    bands = _bands_by_height(layout)
    if not 1 <= move.height <= len(bands):
        raise PatternNotFoundError(f"height {move.height} is out of range for {len(bands)} bands")
    columns = [band.column for _, band in bands]
    signs = [band.sign for _, band in bands]
    low, mid, high = find_r3_pattern(columns, signs, move.height - 1, move.direction, strands)
    (a_row, a), (b_row, b), (c_row, c) = bands[low], bands[mid], bands[high]
    sign = a.sign
    outer, middle = a.column, b.column

    # The new band X_4 satisfies X_1 + X_4 = X_2 + X_3 for one of the two
    # labelings of the outer bands; the right one keeps its diagonal at the sign.
    array = matrix.array
    keeps_top = {b_row: 1, a_row: 1, c_row: -1}
    keeps_bottom = {b_row: 1, c_row: 1, a_row: -1}

    def twist(vector: Dict[int, int]) -> int:
        v = np.zeros(matrix.size, dtype=np.int64)
        for k, value in vector.items():
            v[k] = value
        return int(v @ array @ v)

    if twist(keeps_top) == sign:
        slots = {
            Band(a.height, middle, sign): {b_row: 1},
            Band(b.height, outer, sign): {c_row: 1},
            Band(c.height, middle, sign): keeps_top,
        }
    elif twist(keeps_bottom) == sign:
        slots = {
            Band(a.height, middle, sign): keeps_bottom,
            Band(b.height, outer, sign): {a_row: 1},
            Band(c.height, middle, sign): {b_row: 1},
        }
    else:
        raise InternalVerificationError("no cycle equation reproduces the band twist")

    _, p = _congruence(list(layout), {a_row, b_row, c_row}, slots, strands)
    surgery = _surgery(array, list(layout), {a_row, b_row, c_row}, list(slots), strands)
    return _checked(matrix, p, surgery)


def apply_matrix_move(
    matrix: IntegerMatrix, move: MatrixMoveSpec
) -> Tuple[LinkingMatrix, Optional[UnimodularWitness]]:
    """
    Apply a matrix move to a valid linking matrix.

    Returns:
        The moved matrix and, for M3 and M4, the congruence witness

    Raises:
        InvalidMatrixError: If the matrix fails validate
        PatternNotFoundError: If the move's pattern is not present
        InternalVerificationError: If a witness fails its own check
    """
    layout = matrix_layout(matrix)
    labels = list(layout)
    strands = layout.strands
    bands = _bands_by_height(layout)
    array = matrix.array

    if isinstance(move, M1Insert):
        check_sign(move.upper_sign)
        if not 1 <= move.column <= strands - 1:
            raise PatternNotFoundError(f"column {move.column} does not exist for {strands} strands")
        if not 0 <= move.height <= len(bands):
            raise PatternNotFoundError(f"insertion height {move.height} is out of range")
        added = [
            Band(Fraction(3 * move.height + 1, 3), move.column, -move.upper_sign),
            Band(Fraction(3 * move.height + 2, 3), move.column, move.upper_sign),
        ]
        result = _surgery(array, labels, set(), added, strands)
        witness = None
    elif isinstance(move, M1Delete):
        rows = (move.lower_row - 1, move.upper_row - 1)
        if not all(0 <= row < len(labels) and isinstance(labels[row], Band) for row in rows):
            raise PatternNotFoundError(f"rows {move.lower_row}, {move.upper_row} are not both bands")
        lower = [k for k, (row, _) in enumerate(bands) if row == rows[0]][0]
        partner = find_r2_partner([b.column for _, b in bands], [b.sign for _, b in bands], lower)
        if bands[partner][0] != rows[1]:
            raise PatternNotFoundError(
                f"rows {move.lower_row} and {move.upper_row} are not a cancelling pair"
            )
        result = _surgery(array, labels, set(rows), [], strands)
        witness = None
    elif isinstance(move, M2Stabilize):
        check_sign(move.sign)
        added = [Circle(strands + 1), Band(0, strands, move.sign)]
        result = _surgery(array, labels, set(), added, strands + 1)
        witness = None
    elif isinstance(move, M2Destabilize):
        last = [row for row, band in bands if band.column == strands - 1]
        if strands < 2 or len(last) != 1:
            raise PatternNotFoundError(f"destabilization needs exactly one band in column {strands - 1}")
        removed = {last[0], layout.circle_position(strands)}
        result = _surgery(array, labels, removed, [], strands - 1)
        witness = None
    elif isinstance(move, M3Conjugate):
        output, witness = _conjugate(matrix, layout)
        result = output.array
    elif isinstance(move, M3Unconjugate):
        output, witness = _unconjugate(matrix, layout, move)
        result = output.array
    elif isinstance(move, M4):
        output, witness = _reidemeister_three(matrix, layout, move)
        result = output.array
    else:
        raise TypeError(f"Unknown matrix move: {move!r}")

    logger.info("matrix move %s: size %d -> %d", move, matrix.size, result.shape[0])
    return LinkingMatrix(result), witness


def matrix_spec_for(matrix: IntegerMatrix, move: BraidMoveSpec) -> MatrixMoveSpec:
    """
    The matrix move matching a braid move on decode(matrix).

    Heights are read from the matrix layout; no decoding is involved.
    """
    if isinstance(move, R2Insert):
        return M1Insert(move.column, move.height, move.upper_sign)
    if isinstance(move, R2Delete):
        bands = _bands_by_height(matrix_layout(matrix))
        if not 1 <= move.height <= len(bands):
            raise PatternNotFoundError(f"height {move.height} is out of range for {len(bands)} bands")
        partner = find_r2_partner(
            [b.column for _, b in bands], [b.sign for _, b in bands], move.height - 1
        )
        return M1Delete(bands[move.height - 1][0] + 1, bands[partner][0] + 1)
    if isinstance(move, Stabilize):
        return M2Stabilize(move.sign)
    if isinstance(move, Destabilize):
        return M2Destabilize()
    if isinstance(move, ConjugateRotate):
        return M3Conjugate()
    if isinstance(move, ConjugateUnrotate):
        return M3Unconjugate(move.column)
    if isinstance(move, R3):
        return M4(move.height, move.direction)
    raise TypeError(f"Unknown braid move: {move!r}")


def verify_commuting(diagram: ClosedBraidDiagram, move: BraidMoveSpec) -> bool:
    """
    Whether the braid move and its matrix move agree through encode.

    Raises:
        PatternNotFoundError: If the braid move does not apply
    """
    braid_side = encode(apply_braid_move(diagram, move))
    matrix = encode(diagram)
    matrix_side, _ = apply_matrix_move(matrix, matrix_spec_for(matrix, move))
    return braid_side == matrix_side


def tube_addition(matrix: IntegerMatrix, sign: int) -> Tuple[LinkingMatrix, List[CycleLabel]]:
    """
    Add a cancelling pair X_1, X_2 (signs s, -s) in the new column n, below
    every band of column n - 1, without a row for the circle C_{n+1}.

    X_2 takes the place C_{n+1} would have in laundry order.
    Returns the matrix and its row labels.
    """
    check_sign(sign)
    layout = matrix_layout(matrix)
    strands = layout.strands
    first = Band(0, strands, sign)
    second = Band(Fraction(-1, 2), strands, -sign)
    placed = sorted(
        list(layout) + [Circle(strands + 1), first],
        key=lambda label: laundry_key(label, strands + 1),
    )
    labels = [second if label == Circle(strands + 1) else label for label in placed]
    old_row = {label: k for k, label in enumerate(layout)}
    size = len(labels)
    result = np.zeros((size, size), dtype=np.int64)
    for i, label in enumerate(labels):
        for j, other in enumerate(labels):
            if label in old_row and other in old_row:
                result[i, j] = matrix.array[old_row[label], old_row[other]]
            elif i == j:
                result[i, j] = label.sign if isinstance(label, Band) else 0
            else:
                result[i, j] = _entry(label, other)
    return LinkingMatrix(result), labels


def stabilize_via_tube(matrix: IntegerMatrix, sign: int) -> Tuple[LinkingMatrix, UnimodularWitness]:
    """
    M2 as tube addition followed by a foot slide: C_{n+1} = s (X_1 - X_2),
    with C_{n+1} taking the laundry slot of X_2.
    """
    tube, labels = tube_addition(matrix, sign)
    strands = sum(1 for label in labels if isinstance(label, Circle))
    first = labels.index(Band(0, strands, sign))
    second = labels.index(Band(Fraction(-1, 2), strands, -sign))
    p = np.eye(len(labels), dtype=np.int64)
    p[second, second] = -sign
    p[first, second] = sign
    witness = UnimodularWitness(IntegerMatrix(p))
    if not is_unimodular(witness.matrix):
        raise InternalVerificationError("foot-slide witness is not unimodular")
    return LinkingMatrix(witness.transform(tube)), witness


def apply_reduced_move(form: IntegerMatrix, move: MatrixMoveSpec) -> GLForm:
    """Move on a Gordon-Litherland form, through its linking matrix."""
    moved, _ = apply_matrix_move(restore_m_from_gl(form), move)
    return gl_form(moved)
