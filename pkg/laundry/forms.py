"""
Surface Forms of the Laundry Surface

From the linking matrix M of a diagram:

    N   1 on band x band positions, 0 elsewhere
    M'  Seifert pairing of the orientable laundry surface, M = M' + M'^T + N
    F   Gordon-Litherland form, M without its last (C_1) row and column
    S   Seifert matrix, M' without its last row and column, F = S + S^T + N_reduced

The orientable surface inserts a negative half-twisted band T between the
even-circle half of the disk and the odd-circle half. Every twisted-band cycle
runs through T, so on the boundary of the enlarged disk the first feet keep
their laundry order while the second feet appear reversed. M' is
(M - N + A) / 2, where A is the intersection form read from that boundary.
"""

import logging
from typing import Dict, List, Tuple

import numpy as np

from .braid_core import ClosedBraidDiagram
from .errors import InternalVerificationError, InvalidMatrixError
from .linking_matrix import (
    Band,
    CycleLabel,
    IntegerMatrix,
    LaundryOrder,
    LinkingMatrix,
    encode,
    laundry_feet,
    laundry_order,
    validate,
)

logger = logging.getLogger(__name__)

VALID_CONVERSIONS = ('mprime', 'gl', 'seifert')


class CorrectionN(IntegerMatrix):
    __slots__ = ()


class IntersectionForm(IntegerMatrix):
    __slots__ = ()


class MPrime(IntegerMatrix):
    __slots__ = ()


class GLForm(IntegerMatrix):
    __slots__ = ()


class SeifertMatrix(IntegerMatrix):
    __slots__ = ()


def _band_mask(order: LaundryOrder) -> np.ndarray:
    return np.array([isinstance(label, Band) for label in order], dtype=np.int64)


def correction_N(order: LaundryOrder) -> CorrectionN:
    mask = _band_mask(order)
    return CorrectionN(np.outer(mask, mask))


def reduced_N(order: LaundryOrder) -> np.ndarray:
    """N with the C_1 row and column removed."""
    return correction_N(order).without_last()


def orientable_foot_order(diagram: ClosedBraidDiagram) -> Tuple[CycleLabel, ...]:
    """Band feet around the boundary of the disk of the orientable surface."""
    first, second = laundry_feet(diagram)
    return first + tuple(reversed(second))


def _in_arc(point: int, tail: int, head: int, length: int) -> bool:
    """Whether point lies strictly inside the boundary arc running from tail to head."""
    return 0 < (point - tail) % length < (head - tail) % length


def intersection_form(diagram: ClosedBraidDiagram) -> IntersectionForm:
    """
    Intersection numbers of the cycle basis on the orientable laundry surface.

    Each cycle crosses its band from its first laundry foot to its second,
    then returns across the disk along a chord from the second foot back to
    the first. Two disk chords meet once exactly when their ends interleave
    on the boundary.
    """
    order = laundry_order(diagram)
    first, _ = laundry_feet(diagram)
    boundary = orientable_foot_order(diagram)
    feet: Dict[CycleLabel, List[int]] = {}
    for position, label in enumerate(boundary):
        feet.setdefault(label, []).append(position)

    # (tail, head) of each disk chord: from the second laundry foot to the first.
    # Feet on the odd half are met in reverse laundry order.
    chords: Dict[CycleLabel, Tuple[int, int]] = {}
    for label, (lower, upper) in feet.items():
        chords[label] = (lower, upper) if lower >= len(first) else (upper, lower)

    size = len(order)
    length = len(boundary)
    array = np.zeros((size, size), dtype=np.int64)
    for i, this in enumerate(order):
        tail, head = chords[this]
        for j, other in enumerate(order):
            if i == j:
                continue
            other_tail, other_head = chords[other]
            tail_inside = _in_arc(other_tail, tail, head, length)
            if tail_inside != _in_arc(other_head, tail, head, length):
                array[i, j] = 1 if tail_inside else -1
    return IntersectionForm(array)


def m_prime(diagram: ClosedBraidDiagram) -> MPrime:
    """
    Seifert pairing matrix of the orientable laundry surface.

    Raises:
        InternalVerificationError: If M - N + A has an odd entry
    """
    order = laundry_order(diagram)
    total = encode(diagram).array - correction_N(order).array + intersection_form(diagram).array
    if (total % 2).any():
        logger.error("parity failure for '%s'", diagram)
        raise InternalVerificationError(f"M - N + A is not even for '{diagram}'")
    return MPrime(total // 2)


def gl_form(matrix: IntegerMatrix) -> GLForm:
    """
    Gordon-Litherland form: delete the C_1 row and column.

    Raises:
        InvalidMatrixError: If the matrix is not a valid linking matrix
    """
    report = validate(matrix)
    if not report.valid:
        raise InvalidMatrixError(report.violations)
    return GLForm(matrix.without_last())


def seifert_matrix(diagram: ClosedBraidDiagram) -> SeifertMatrix:
    return SeifertMatrix(m_prime(diagram).without_last())


def restore_m_from_gl(form: IntegerMatrix) -> LinkingMatrix:
    """
    Rebuild M from F: the C_1 row is minus the sum of the other circle rows.

    Raises:
        InvalidMatrixError: If the rebuilt matrix fails validate
    """
    size = form.size
    array = np.zeros((size + 1, size + 1), dtype=np.int64)
    array[:size, :size] = form.array
    circle_rows = [k for k in range(size) if form[k, k] == 0]
    last = -form.array[circle_rows].sum(axis=0) if circle_rows else np.zeros(size, dtype=np.int64)
    array[size, :size] = last
    array[:size, size] = last
    restored = LinkingMatrix(array)
    report = validate(restored)
    if not report.valid:
        raise InvalidMatrixError(report.violations)
    return restored


def f_from_s(seifert: IntegerMatrix, order: LaundryOrder) -> GLForm:
    """
    F = S + S^T + N_reduced.

    Raises:
        InvalidMatrixError: If S does not match the size of the order
    """
    if seifert.size != len(order) - 1:
        raise InvalidMatrixError(
            [f"Seifert matrix of size {seifert.size} does not fit a laundry order of length {len(order)}"]
        )
    return GLForm(seifert.array + seifert.array.T + reduced_N(order))


def forms_of(diagram: ClosedBraidDiagram) -> Dict[str, IntegerMatrix]:
    """All conversions of a diagram, keyed by the CLI names."""
    matrix = encode(diagram)
    return {
        'mprime': m_prime(diagram),
        'gl': gl_form(matrix),
        'seifert': seifert_matrix(diagram),
    }
